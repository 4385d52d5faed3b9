//! Acceptance criteria, one line each. Exits non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::hint::black_box;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use hypergrid::ca::{self, Rule};
use hypergrid::fib_tree::{self, Status};
use hypergrid::geometry::{self, DiscPoint};
use hypergrid::numeration::Basis;
use hypergrid::{TileCoord, Tiling, TriCoord};

const H: Tiling = Tiling::Heptagrid;
const P: Tiling = Tiling::Pentagrid;

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, budget_s: u64) -> bool {
    elapsed < Duration::from_secs(budget_s)
}

/// Level sizes from the son rules alone: W -> B W W, B -> B W.
fn rule_level_sizes(levels: usize) -> Vec<u64> {
    let mut level = vec![Status::White];
    let mut sizes = Vec::new();
    for _ in 0..levels {
        sizes.push(level.len() as u64);
        level = level
            .iter()
            .flat_map(|s| match s {
                Status::White => vec![Status::Black, Status::White, Status::White],
                Status::Black => vec![Status::Black, Status::White],
            })
            .collect();
    }
    sizes
}

/// Tiles per reflection generation in the disc model, by BFS over shared edges.
fn geometric_generation_sizes(p: u32, q: u32, depth: u32) -> Vec<u64> {
    let g = geometry::generate(p, q, depth).unwrap();
    let mut adj = vec![Vec::new(); g.tiles.len()];
    for &(i, j) in &g.adjacency {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut gen = vec![u32::MAX; g.tiles.len()];
    gen[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for &j in &adj[i] {
            if gen[j] == u32::MAX {
                gen[j] = gen[i] + 1;
                queue.push_back(j);
            }
        }
    }
    let mut sizes = vec![0u64; depth as usize + 1];
    for g in gen {
        sizes[g as usize] += 1;
    }
    sizes
}

fn level_counts() -> Outcome {
    const EXPECTED: [u64; 10] = [1, 3, 8, 21, 55, 144, 377, 987, 2584, 6765];
    let start = Instant::now();
    let rules = rule_level_sizes(10);
    let table: Vec<u64> = (0..10)
        .map(|l| {
            let (first, last) = fib_tree::level_bounds(l);
            last - first + 1
        })
        .collect();
    // walk the materialized tree son by son
    let mut walked = vec![0u64; 10];
    let mut queue = VecDeque::from([(1u64, 0usize)]);
    while let Some((nu, l)) = queue.pop_front() {
        walked[l] += 1;
        if l + 1 < 10 {
            for s in fib_tree::sons(nu).unwrap() {
                queue.push_back((s, l + 1));
            }
        }
    }
    let as_u64 =
        |b: Basis| -> Vec<u64> { b.terms().iter().map(|t| t.try_into().unwrap()).collect() };
    let pentagrid = as_u64(Basis::new(5, 4, 10).unwrap());
    let heptagrid = as_u64(Basis::new(7, 3, 10).unwrap());
    let elapsed = start.elapsed();

    // disc model: generation g > 0 holds `sectors * u_{g-1}` tiles
    let geo_ok = [(7u32, 3u32, 7u64, 5u32), (5, 4, 5, 4)]
        .iter()
        .all(|&(p, q, sectors, depth)| {
            let sizes = geometric_generation_sizes(p, q, depth);
            sizes[0] == 1 && (1..=depth as usize).all(|g| sizes[g] == sectors * EXPECTED[g - 1])
        });
    let pass = [&rules, &table, &walked, &pentagrid, &heptagrid]
        .iter()
        .all(|v| v.as_slice() == EXPECTED)
        && geo_ok
        && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!("levels 0..9 = {rules:?}, disc model agrees: {geo_ok}, {elapsed:.2?}"),
    )
}

fn round_trip() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (p, q, limit) in [(5u32, 4u32, 1_000_000u64), (5, 5, 100_000)] {
        let basis = Basis::new(p, q, 40).unwrap();
        for n in 0..limit {
            if basis.decode(&basis.encode_u64(n)) != BigUint::from(n) {
                bad.push((p, q, n));
                break;
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && within(elapsed, 10),
        format!("failures {bad:?}, {elapsed:.2?}"),
    )
}

fn odd_seed_identity() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for p in 5..=12i64 {
        for q in [5i64, 7, 9] {
            let h = (q - 1) / 2;
            let x = (p - 3) * (h - 1);
            let closed = x * x + (4 * p - 11) * (h - 1);
            // recurrence one step back from u_2, with u_{-1} = 0
            let (a, b, c) = (x + 1, (p - 2) * (h - 1) - 2, h - 3);
            let (before, u0, u1) = (0, 1, x + 2);
            let recurred = a * u1 + b * u0 + c * before;
            let basis = Basis::new(p as u32, q as u32, 3).unwrap();
            let built = i64::try_from(&basis.terms()[2]).unwrap();
            if closed != recurred || closed != built {
                bad.push((p, q, closed, recurred, built));
            }
            checked += 1;
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} (p,q) pairs, failures {bad:?}"),
    )
}

fn heptagrid_oracle() -> Outcome {
    let start = Instant::now();
    let report = geometry::adjacency_report(&H, 6, 0).unwrap();
    let elapsed = start.elapsed();
    outcome(
        report.is_clean() && report.tiles == 1625 && within(elapsed, 30),
        format!(
            "{} tiles, {} mismatches, {elapsed:.2?}",
            report.tiles,
            report.mismatches.len()
        ),
    )
}

fn involution() -> Outcome {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for tiling in [H, P] {
        for c in tiling.ball(7) {
            for tau in 1..=tiling.p() {
                let (n, side) = tiling.neighbor_and_side(c, tau).unwrap();
                match tiling.neighbor_and_side(n, side) {
                    Ok((back, back_side)) if back == c && back_side == tau => {}
                    other => bad.push(format!("{tiling} {c} side {tau}: {other:?}")),
                }
                checked += 1;
            }
        }
    }
    bad.truncate(5);
    outcome(
        bad.is_empty(),
        format!("{checked} (tile, side) pairs, failures {bad:?}"),
    )
}

fn trigrid_oracle() -> Outcome {
    let start = Instant::now();
    let mut parts = Vec::new();
    let mut pass = true;
    for n in 1..=3 {
        let report = geometry::adjacency_report(&H, 3, n).unwrap();
        pass &= report.is_clean() && report.tiles == 85;
        parts.push(format!(
            "n={n}: {} triangles, {} mismatches",
            report.triangles,
            report.mismatches.len()
        ));
    }
    let elapsed = start.elapsed();
    pass &= within(elapsed, 60);
    outcome(pass, format!("{}, {elapsed:.2?}", parts.join("; ")))
}

fn random_tri(rng: &mut StdRng, tiles: &[TileCoord], p: u32, n: usize) -> TriCoord {
    let mut digits = vec![rng.gen_range(1..=p as u8)];
    digits.extend((1..n).map(|_| rng.gen_range(0..4u8)));
    TriCoord::new(tiles[rng.gen_range(0..tiles.len())], &digits)
}

fn linearity() -> Outcome {
    const SAMPLES: usize = 2000;
    const REPEATS: usize = 9;
    let tiles = H.ball(6);
    let mut rng = StdRng::seed_from_u64(0x7a3);
    let mut steps_ok = true;
    let mut per_digit = Vec::new();
    for n in 1..=12 {
        let coords: Vec<TriCoord> = (0..SAMPLES)
            .map(|_| random_tri(&mut rng, &tiles, 7, n))
            .collect();
        steps_ok &= coords
            .iter()
            .all(|c| H.tri_neighbors_counted(c).unwrap().steps == n);
        let mut best = f64::MAX;
        for _ in 0..REPEATS {
            let start = Instant::now();
            for c in &coords {
                black_box(H.tri_neighbors(black_box(c)).unwrap());
            }
            best = best.min(start.elapsed().as_secs_f64() / SAMPLES as f64);
        }
        per_digit.push(best * 1e9 / n as f64);
    }
    let mut sorted = per_digit.clone();
    sorted.sort_by(f64::total_cmp);
    let median = (sorted[5] + sorted[6]) / 2.0;
    let spread_ok = per_digit
        .iter()
        .all(|&r| r <= 2.0 * median && r >= median / 2.0);
    let shown: Vec<String> = per_digit.iter().map(|r| format!("{r:.0}")).collect();
    outcome(
        steps_ok && spread_ok,
        format!(
            "steps == n: {steps_ok}; ns/digit for n=1..12 [{}], median {median:.0}, max/median {:.2}, min/median {:.2}",
            shown.join(" "),
            sorted[11] / median,
            sorted[0] / median
        ),
    )
}

fn degree_census() -> Outcome {
    let census = geometry::degree_census(H, 2, 2).unwrap();
    let degrees: BTreeSet<usize> = census.keys().copied().collect();
    outcome(
        degrees == BTreeSet::from([6, 7]),
        format!("interior vertex degrees {census:?}"),
    )
}

fn sector_anchoring() -> Outcome {
    let g = geometry::generate(7, 3, 1).unwrap();
    let ring: Vec<DiscPoint> = g
        .adjacency
        .iter()
        .filter(|&&(i, _)| i == 0)
        .map(|&(_, j)| g.tiles[j].center)
        .collect();
    let placed: Vec<DiscPoint> = (1..=7)
        .map(|tau| geometry::place(H, TileCoord::new(tau, 1)).unwrap().center)
        .collect();
    let matched = placed
        .iter()
        .filter(|c| {
            ring.iter()
                .filter(|r| r.euclid_dist(**c) < geometry::oracle::CENTER_TOL)
                .count()
                == 1
        })
        .count();
    outcome(
        ring.len() == 7 && matched == 7,
        format!(
            "{} geometric neighbors, {matched} matched by place(tau:1)",
            ring.len()
        ),
    )
}

const EXCITABLE: &str = "\
alphabet 3
boundary 0
totalistic
0 1 -> 1
0 2 -> 1
0 3 -> 1
0 4 -> 1
0 5 -> 1
0 6 -> 1
1 0 -> 2
1 1 -> 2
1 2 -> 2
1 3 -> 2
1 4 -> 2
1 5 -> 2
1 6 -> 2
2 0 -> 0
2 1 -> 0
2 2 -> 0
2 3 -> 0
2 4 -> 0
2 5 -> 0
2 6 -> 0
";

const SEED: &str = "0/1.3=1,2:1/4.0=1";

fn library_hashes(rule: &Rule) -> Vec<u64> {
    let region = ca::build_region(H, 3, 2).unwrap();
    let start = region.seeded(SEED, rule.boundary()).unwrap();
    ca::run(&region, rule, &start, 10).unwrap().hashes
}

fn cli_hashes(rule_path: &std::path::Path) -> Result<Vec<String>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hypergrid"))
        .args([
            "ca", "run", "--level", "3", "--subdiv", "2", "--steps", "10", "--seed", SEED, "--rule",
        ])
        .arg(rule_path)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    Ok(String::from_utf8_lossy(&out.stdout)
        .lines()
        .filter_map(|l| {
            l.split_whitespace()
                .nth(2)?
                .strip_prefix("hash=")
                .map(str::to_owned)
        })
        .collect())
}

fn ca_determinism() -> Outcome {
    let rule = Rule::parse(EXCITABLE).unwrap();
    let (a, b) = (library_hashes(&rule), library_hashes(&rule));
    let distinct: BTreeSet<u64> = a.iter().copied().collect();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("excitable.rule");
    std::fs::write(&path, EXCITABLE).unwrap();
    let (c, d) = (cli_hashes(&path), cli_hashes(&path));
    let expected: Vec<String> = a.iter().map(|h| format!("{h:016x}")).collect();
    let cli_ok = matches!((&c, &d), (Ok(c), Ok(d)) if *c == expected && *d == expected);

    let region = ca::build_region(H, 3, 2).unwrap();
    let quiet = vec![rule.boundary(); region.len()];
    let fixed = ca::run(&region, &rule, &quiet, 10)
        .unwrap()
        .frames
        .iter()
        .all(|f| *f == quiet);
    outcome(
        a == b && a.len() == 11 && distinct.len() > 1 && cli_ok && fixed,
        format!(
            "{} frames, {} distinct hashes, repeat equal: {}, CLI runs equal: {cli_ok}, quiescent fixed: {fixed}",
            a.len(),
            distinct.len(),
            a == b
        ),
    )
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("level counts", level_counts),
        ("numeration round-trip", round_trip),
        ("odd-q seed identity", odd_seed_identity),
        ("heptagrid oracle equivalence", heptagrid_oracle),
        ("neighbor involution", involution),
        ("trigrid oracle equivalence", trigrid_oracle),
        ("linearity", linearity),
        ("vertex-degree census", degree_census),
        ("sector anchoring", sector_anchoring),
        ("CA determinism", ca_determinism),
    ];
    let mut failed = BTreeMap::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = check();
        let verdict = if result.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {} ({name}): {verdict} - {}",
            i + 1,
            result.detail
        );
        if !result.pass {
            failed.insert(i + 1, *name);
        }
    }
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
