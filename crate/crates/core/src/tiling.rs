//! Tile coordinates for the heptagrid `{7,3}` and the pentagrid `{5,4}`.
//!
//! A tile is either the central tile or a pair `(sector, nu)` where `nu` is
//! the index of the tile in the tree spanning its sector. Sides are numbered
//! counter-clockwise; side 1 of a sector tile faces its father, and side `s`
//! of the central tile leads to the root of sector `s`.
//!
//! Neighbors are read from per-tiling tables keyed by the branch class of
//! the tile (root, leftmost, rightmost, or the status of an interior node).
//! Every entry is an offset from the father, the tile itself, or its
//! neighbor-4 son, plus a possible move to an adjacent sector.

use std::fmt;

use crate::error::{parse_err, Error, Result};
use crate::fib_tree::{self, BranchClass, NodeInfo, Status};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tiling {
    /// `{7,3}`
    Heptagrid,
    /// `{5,4}`
    Pentagrid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileCoord {
    Central,
    Sector { sector: u32, nu: u64 },
}

impl TileCoord {
    pub fn new(sector: u32, nu: u64) -> Self {
        TileCoord::Sector { sector, nu }
    }

    pub fn sector(&self) -> Option<u32> {
        match *self {
            TileCoord::Central => None,
            TileCoord::Sector { sector, .. } => Some(sector),
        }
    }

    pub fn nu(&self) -> Option<u64> {
        match *self {
            TileCoord::Central => None,
            TileCoord::Sector { nu, .. } => Some(nu),
        }
    }

    /// Distance, in tiles, from the central tile: 0 for the central tile,
    /// tree level + 1 otherwise.
    pub fn generation(&self) -> Result<u32> {
        match *self {
            TileCoord::Central => Ok(0),
            TileCoord::Sector { nu, .. } => Ok(fib_tree::level_of(nu)? + 1),
        }
    }
}

impl fmt::Display for TileCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TileCoord::Central => f.write_str("0"),
            TileCoord::Sector { sector, nu } => write!(f, "{sector}:{nu}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    /// `sigma (+) 1`
    Plus,
    /// `sigma (-) 1`
    Minus,
}

/// `sigma (+) 1` / `sigma (-) 1` on `1..=max`.
pub fn sector_wrap(sigma: u32, turn: Turn, max: u32) -> u32 {
    match turn {
        Turn::Plus => sigma % max + 1,
        Turn::Minus => (sigma + max - 2) % max + 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    Central,
    Father(i8),
    Own(i8),
    Star(i8),
    Index(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Entry {
    turn: Option<Turn>,
    target: Target,
}

const fn e(target: Target) -> Entry {
    Entry { turn: None, target }
}

const fn plus(target: Target) -> Entry {
    Entry {
        turn: Some(Turn::Plus),
        target,
    }
}

const fn minus(target: Target) -> Entry {
    Entry {
        turn: Some(Turn::Minus),
        target,
    }
}

use Target::{Central as C, Father as F, Index as I, Own as N, Star as S};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Row {
    Black,
    Left,
    White,
    Right,
    Root,
}

/// Neighbor `tau` as a function of the row, for sides 1..=7.
const HEPTA_ROWS: [[Entry; 7]; 5] = [
    // black
    [
        e(F(0)),
        e(F(-1)),
        e(N(-1)),
        e(S(0)),
        e(S(1)),
        e(S(2)),
        e(N(1)),
    ],
    // leftmost
    [
        e(F(0)),
        minus(N(-1)),
        minus(S(-1)),
        e(S(0)),
        e(S(1)),
        e(S(2)),
        e(N(1)),
    ],
    // white
    [
        e(F(0)),
        e(N(-1)),
        e(S(-1)),
        e(S(0)),
        e(S(1)),
        e(S(2)),
        e(N(1)),
    ],
    // rightmost
    [
        e(F(0)),
        e(N(-1)),
        e(S(-1)),
        e(S(0)),
        e(S(1)),
        plus(N(1)),
        plus(F(1)),
    ],
    // root
    [
        e(C),
        minus(I(1)),
        e(S(-1)),
        e(S(0)),
        e(S(1)),
        plus(N(1)),
        plus(I(1)),
    ],
];

/// Same layout for the pentagrid; extracted from the disc model and frozen.
const PENTA_ROWS: [[Entry; 5]; 5] = [
    // black
    [e(F(0)), e(F(-1)), e(S(0)), e(S(1)), e(S(2))],
    // leftmost
    [e(F(0)), minus(N(-1)), e(S(0)), e(S(1)), e(S(2))],
    // white
    [e(F(0)), e(S(-1)), e(S(0)), e(S(1)), e(S(2))],
    // rightmost
    [e(F(0)), e(S(-1)), e(S(0)), e(S(1)), plus(N(1))],
    // root
    [e(C), e(S(-1)), e(S(0)), e(S(1)), plus(N(1))],
];

/// How the side shared with neighbor `tau` is numbered inside that neighbor.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SideRule {
    Fixed(u32),
    /// depends on the status of the neighbor
    ByNeighbor {
        white: u32,
        black: u32,
    },
    /// side of the father that leads to this tile, fixed by the son rank
    SonSlot,
}

use SideRule::{ByNeighbor, Fixed, SonSlot};

const HEPTA_SIDES: [[SideRule; 7]; 2] = [
    // black tile
    [
        ByNeighbor { white: 3, black: 4 },
        Fixed(6),
        Fixed(7),
        Fixed(1),
        Fixed(1),
        Fixed(2),
        Fixed(2),
    ],
    // white tile
    [
        SonSlot,
        Fixed(7),
        Fixed(1),
        Fixed(1),
        Fixed(1),
        Fixed(2),
        ByNeighbor { white: 2, black: 3 },
    ],
];

const PENTA_SIDES: [[SideRule; 5]; 2] = [
    [
        ByNeighbor { white: 2, black: 3 },
        Fixed(5),
        Fixed(1),
        Fixed(1),
        Fixed(2),
    ],
    [SonSlot, Fixed(1), Fixed(1), Fixed(1), Fixed(2)],
];

impl Tiling {
    pub fn from_pq(p: u32, q: u32) -> Result<Self> {
        match (p, q) {
            (7, 3) => Ok(Tiling::Heptagrid),
            (5, 4) => Ok(Tiling::Pentagrid),
            _ => {
                crate::numeration::check_hyperbolic(p, q)?;
                Err(Error::UnsupportedTiling { p, q })
            }
        }
    }

    pub fn p(self) -> u32 {
        match self {
            Tiling::Heptagrid => 7,
            Tiling::Pentagrid => 5,
        }
    }

    pub fn q(self) -> u32 {
        match self {
            Tiling::Heptagrid => 3,
            Tiling::Pentagrid => 4,
        }
    }

    /// Number of sectors around the central tile; one per side.
    pub fn sectors(self) -> u32 {
        self.p()
    }

    /// Sides of a father, left to right, through which its sons are seen.
    pub fn son_sides(self, status: Status) -> &'static [u32] {
        match (self, status) {
            (Tiling::Heptagrid, Status::White) => &[3, 4, 5],
            (Tiling::Heptagrid, Status::Black) => &[4, 5],
            (Tiling::Pentagrid, Status::White) => &[2, 3, 4],
            (Tiling::Pentagrid, Status::Black) => &[3, 4],
        }
    }

    fn entry(self, row: Row, tau: u32) -> Entry {
        let r = row as usize;
        let t = (tau - 1) as usize;
        match self {
            Tiling::Heptagrid => HEPTA_ROWS[r][t],
            Tiling::Pentagrid => PENTA_ROWS[r][t],
        }
    }

    fn side_rule(self, status: Status, tau: u32) -> SideRule {
        let s = match status {
            Status::Black => 0,
            Status::White => 1,
        };
        let t = (tau - 1) as usize;
        match self {
            Tiling::Heptagrid => HEPTA_SIDES[s][t],
            Tiling::Pentagrid => PENTA_SIDES[s][t],
        }
    }

    pub fn check_side(self, tau: u32) -> Result<()> {
        if (1..=self.p()).contains(&tau) {
            Ok(())
        } else {
            Err(Error::SideOutOfRange {
                side: tau,
                p: self.p(),
            })
        }
    }

    pub fn check_tile(self, c: TileCoord) -> Result<()> {
        match c {
            TileCoord::Central => Ok(()),
            TileCoord::Sector { sector, nu } => {
                if !(1..=self.sectors()).contains(&sector) {
                    return Err(Error::SectorOutOfRange {
                        sector,
                        max: self.sectors(),
                    });
                }
                if nu == 0 {
                    return Err(Error::NodeZero);
                }
                Ok(())
            }
        }
    }

    /// Neighbor `tau` of `c` together with the number of the shared side
    /// inside that neighbor.
    pub fn neighbor_and_side(self, c: TileCoord, tau: u32) -> Result<(TileCoord, u32)> {
        self.check_tile(c)?;
        self.check_side(tau)?;
        self.neighbor_and_side_unchecked(c, tau)
    }

    pub(crate) fn neighbor_and_side_unchecked(
        self,
        c: TileCoord,
        tau: u32,
    ) -> Result<(TileCoord, u32)> {
        let (sector, nu) = match c {
            TileCoord::Central => return Ok((TileCoord::new(tau, 1), 1)),
            TileCoord::Sector { sector, nu } => (sector, nu),
        };
        let info = fib_tree::node_info(nu)?;
        let n = self.neighbor_of(sector, &info, tau)?;
        let side = self.side_of(sector, &info, tau, n)?;
        Ok((n, side))
    }

    fn row(info: &NodeInfo) -> Row {
        if info.index == 1 {
            return Row::Root;
        }
        let (first, last) = fib_tree::level_bounds(info.level);
        if info.index == first {
            Row::Left
        } else if info.index == last {
            Row::Right
        } else {
            match info.status {
                Status::Black => Row::Black,
                Status::White => Row::White,
            }
        }
    }

    fn neighbor_of(self, sector: u32, info: &NodeInfo, tau: u32) -> Result<TileCoord> {
        let entry = self.entry(Self::row(info), tau);
        let offset = |base: u64, k: i8| base.wrapping_add_signed(k as i64);
        let nu = match entry.target {
            Target::Central => return Ok(TileCoord::Central),
            Target::Father(k) => offset(info.father, k),
            Target::Own(k) => offset(info.index, k),
            Target::Star(k) => offset(info.sigma4, k),
            Target::Index(v) => v,
        };
        let sector = match entry.turn {
            None => sector,
            Some(turn) => sector_wrap(sector, turn, self.sectors()),
        };
        Ok(TileCoord::new(sector, nu))
    }

    fn side_of(self, sector: u32, info: &NodeInfo, tau: u32, n: TileCoord) -> Result<u32> {
        if tau == 1 && info.index == 1 {
            return Ok(sector);
        }
        Ok(match self.side_rule(info.status, tau) {
            Fixed(s) => s,
            ByNeighbor { white, black } => {
                let nu = n.nu().expect("only the root borders the central tile");
                match fib_tree::status(nu)? {
                    Status::White => white,
                    Status::Black => black,
                }
            }
            SonSlot => {
                let father = fib_tree::node_info(info.father)?;
                self.son_sides(father.status)[info.son_rank as usize]
            }
        })
    }

    pub fn neighbor(self, c: TileCoord, tau: u32) -> Result<TileCoord> {
        Ok(self.neighbor_and_side(c, tau)?.0)
    }

    pub fn side_in_neighbor(self, c: TileCoord, tau: u32) -> Result<u32> {
        Ok(self.neighbor_and_side(c, tau)?.1)
    }

    /// Neighbors through sides `1..=p`, in order.
    pub fn all_neighbors(self, c: TileCoord) -> Result<Vec<TileCoord>> {
        (1..=self.p()).map(|tau| self.neighbor(c, tau)).collect()
    }

    /// Every tile within `generation` steps of the central tile: the central
    /// tile, then each sector in order with its tree nodes of level
    /// `< generation`.
    pub fn ball(self, generation: u32) -> Vec<TileCoord> {
        let mut out = vec![TileCoord::Central];
        if generation == 0 {
            return out;
        }
        let (_, last) = fib_tree::level_bounds(generation - 1);
        for sector in 1..=self.sectors() {
            out.extend((1..=last).map(|nu| TileCoord::new(sector, nu)));
        }
        out
    }

    /// Sides crossed from the central tile to reach `c`, following the
    /// father chain.
    pub fn path_from_center(self, c: TileCoord) -> Result<Vec<u32>> {
        self.check_tile(c)?;
        let (sector, mut nu) = match c {
            TileCoord::Central => return Ok(Vec::new()),
            TileCoord::Sector { sector, nu } => (sector, nu),
        };
        let mut sides = Vec::new();
        while nu > 1 {
            let info = fib_tree::node_info(nu)?;
            let father = fib_tree::node_info(info.father)?;
            sides.push(self.son_sides(father.status)[info.son_rank as usize]);
            nu = info.father;
        }
        sides.push(sector);
        sides.reverse();
        Ok(sides)
    }

    pub fn parse_tile(self, s: &str) -> Result<TileCoord> {
        let trimmed = s.trim();
        if trimmed == "0" {
            return Ok(TileCoord::Central);
        }
        let (sec, nu) = trimmed
            .split_once(':')
            .ok_or_else(|| parse_err(s, "expected `0` or `<sector>:<nu>`"))?;
        let sector: u32 = sec
            .parse()
            .map_err(|_| parse_err(s, format!("bad sector {sec:?}")))?;
        let nu: u64 = nu
            .parse()
            .map_err(|_| parse_err(s, format!("bad node {nu:?}")))?;
        let c = TileCoord::new(sector, nu);
        self.check_tile(c)
            .map_err(|err| parse_err(s, err.to_string()))?;
        Ok(c)
    }
}

impl fmt::Display for Tiling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p(), self.q())
    }
}

/// Branch class re-exported for callers that only hold a tile coordinate.
pub fn branch_class(c: TileCoord) -> Result<Option<BranchClass>> {
    c.nu().map(fib_tree::branch_class).transpose()
}
