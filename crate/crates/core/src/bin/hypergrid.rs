use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use hypergrid::ca::{self, Rule};
use hypergrid::geometry::{self, Cell, RenderOptions, Scene};
use hypergrid::numeration::{Basis, DigitString};
use hypergrid::trigrid::triangles_of_tile;
use hypergrid::Tiling;

#[derive(Parser)]
#[command(
    name = "hypergrid",
    version,
    about = "Coordinates and neighbors in {7,3}, {5,4} and their trigrids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Greedy numeration over the level-size basis
    #[command(subcommand)]
    Num(NumCommand),
    /// Tile queries
    #[command(subcommand)]
    Tile(TileCommand),
    /// Triangle queries
    #[command(subcommand)]
    Tri(TriCommand),
    /// Compare computed neighbors with the disc model
    Verify {
        #[command(flatten)]
        pq: Pq,
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = 0)]
        subdiv: usize,
    },
    /// Draw tiles or triangles as SVG
    Render {
        #[command(flatten)]
        pq: Pq,
        #[arg(long, value_enum)]
        what: What,
        #[arg(long)]
        depth: u32,
        #[arg(long, default_value_t = 1)]
        subdiv: usize,
        #[arg(long)]
        labels: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Cellular automata on a trigrid region
    #[command(subcommand)]
    Ca(CaCommand),
}

#[derive(Args)]
struct Pq {
    #[arg(long, default_value_t = 7)]
    p: u32,
    #[arg(long, default_value_t = 3)]
    q: u32,
}

impl Pq {
    fn tiling(&self) -> hypergrid::Result<Tiling> {
        Tiling::from_pq(self.p, self.q)
    }
}

#[derive(Subcommand)]
enum NumCommand {
    Encode {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        value: BigUint,
    },
    Decode {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        digits: DigitString,
    },
}

#[derive(Subcommand)]
enum TileCommand {
    Neighbors {
        #[command(flatten)]
        pq: Pq,
        #[arg(long)]
        coord: String,
    },
}

#[derive(Subcommand)]
enum TriCommand {
    Neighbors {
        #[command(flatten)]
        pq: Pq,
        #[arg(long)]
        coord: String,
    },
}

#[derive(Subcommand)]
enum CaCommand {
    Run {
        #[command(flatten)]
        pq: Pq,
        #[arg(long)]
        rule: PathBuf,
        #[arg(long)]
        level: u32,
        #[arg(long)]
        subdiv: usize,
        #[arg(long)]
        steps: usize,
        /// `coord=state,...`; other cells start in the boundary state
        #[arg(long, default_value = "")]
        seed: String,
        /// Write one SVG per frame here
        #[arg(long)]
        frames: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Tiling,
    Trigrid,
}

enum Failure {
    Usage(String),
    Mismatch,
    Output(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Output(e)
    }
}

impl From<hypergrid::Error> for Failure {
    fn from(e: hypergrid::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn io_err(path: &std::path::Path, e: std::io::Error) -> Failure {
    Failure::Usage(format!("{}: {e}", path.display()))
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Num(NumCommand::Encode { p, q, value }) => {
            writeln!(out, "{}", Basis::new(p, q, 3)?.encode(&value))?;
        }
        Command::Num(NumCommand::Decode { p, q, digits }) => {
            writeln!(out, "{}", Basis::new(p, q, 3)?.decode(&digits))?;
        }
        Command::Tile(TileCommand::Neighbors { pq, coord }) => {
            let tiling = pq.tiling()?;
            let c = tiling.parse_tile(&coord)?;
            for tau in 1..=tiling.p() {
                let (n, side) = tiling.neighbor_and_side(c, tau)?;
                writeln!(out, "{tau} -> {n} (side {side})")?;
            }
        }
        Command::Tri(TriCommand::Neighbors { pq, coord }) => {
            let tiling = pq.tiling()?;
            let t = tiling.parse_tri(&coord)?;
            for (i, n) in tiling.tri_neighbors(&t)?.iter().enumerate() {
                writeln!(out, "{} -> {n}", i + 1)?;
            }
        }
        Command::Verify { pq, depth, subdiv } => {
            let tiling = pq.tiling()?;
            let report = geometry::adjacency_report(&tiling, depth, subdiv)?;
            for m in &report.mismatches {
                writeln!(
                    out,
                    "mismatch {} side {}: computed {}, geometric {}",
                    m.cell, m.side, m.computed, m.geometric
                )?;
            }
            writeln!(
                out,
                "tiles={} triangles={} mismatches={}",
                report.tiles,
                report.triangles,
                report.mismatches.len()
            )?;
            if !report.is_clean() {
                out.flush()?;
                return Err(Failure::Mismatch);
            }
        }
        Command::Render {
            pq,
            what,
            depth,
            subdiv,
            labels,
            out,
        } => {
            let tiling = pq.tiling()?;
            let scene = match what {
                What::Tiling => tiling_scene(tiling, depth)?,
                What::Trigrid => trigrid_scene(tiling, depth, subdiv, None)?,
            };
            let options = RenderOptions {
                labels,
                ..RenderOptions::default()
            };
            fs::write(&out, geometry::render_svg(&scene, &options)).map_err(|e| io_err(&out, e))?;
        }
        Command::Ca(CaCommand::Run {
            pq,
            rule,
            level,
            subdiv,
            steps,
            seed,
            frames,
        }) => {
            let tiling = pq.tiling()?;
            let text = fs::read_to_string(&rule).map_err(|e| io_err(&rule, e))?;
            let rule = Rule::parse(&text)?;
            let region = ca::build_region(tiling, level, subdiv)?;
            let start = region.seeded(&seed, rule.boundary())?;
            let trajectory = ca::run(&region, &rule, &start, steps)?;
            if let Some(dir) = &frames {
                fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
            }
            for (k, (frame, hash)) in trajectory.frames.iter().zip(&trajectory.hashes).enumerate() {
                let live = frame.iter().filter(|&&s| s != rule.boundary()).count();
                writeln!(out, "step {k} hash={hash:016x} active={live}")?;
                if let Some(dir) = &frames {
                    let scene = trigrid_scene(tiling, level, subdiv, Some(frame))?;
                    let path = dir.join(format!("frame_{k:04}.svg"));
                    fs::write(
                        &path,
                        geometry::render_svg(&scene, &RenderOptions::default()),
                    )
                    .map_err(|e| io_err(&path, e))?;
                }
            }
        }
    }
    Ok(())
}

fn tiling_scene(tiling: Tiling, depth: u32) -> hypergrid::Result<Scene> {
    let cells = tiling
        .ball(depth)
        .into_iter()
        .map(|c| {
            Ok(Cell {
                vertices: geometry::place(tiling, c)?.vertices,
                label: Some(c.to_string()),
                state: None,
            })
        })
        .collect::<hypergrid::Result<_>>()?;
    Ok(Scene { cells })
}

/// Triangles in region order, so `states` lines up with a CA region.
fn trigrid_scene(
    tiling: Tiling,
    depth: u32,
    subdiv: usize,
    states: Option<&[u32]>,
) -> hypergrid::Result<Scene> {
    let mut cells = Vec::new();
    for c in tiling.ball(depth) {
        for t in triangles_of_tile(tiling, c, subdiv.max(1)) {
            let placed = geometry::place_tri(tiling, &t)?;
            cells.push(Cell {
                vertices: placed.vertices.to_vec(),
                label: Some(t.to_string()),
                state: states.map(|s| s[cells.len()]),
            });
        }
    }
    Ok(Scene { cells })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = BufWriter::new(io::stdout().lock());
    match run(cli, &mut out).and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(Failure::Output(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
