//! Coordinates of n-triangles and their neighbors.
//!
//! Each polygon is split into `p` 1-triangles, one per side: 1-triangle `s`
//! has side `s` as base and the polygon centre as vertex 2, with vertices
//! 0, 1, 2 counter-clockwise. An n-triangle is then split into four: child
//! `k < 3` keeps vertex `k` and the midpoints of the two edges meeting there,
//! child 3 is spanned by the three midpoints. Labels carry over: the
//! midpoint of edge `i` (opposite vertex `i`) is vertex `i` of every child
//! containing it.
//!
//! The coordinate of an n-triangle is its tile followed by the digits
//! `a1 a2 ... an`, `a1` in `1..=p`, later digits in `0..=3`.
//!
//! Neighbor `i` (for `i` in 1..=3) shares edge `i - 1`. The neighbors of a
//! child follow from those of its container by a four-row table, so a
//! single top-down pass over the digits computes all three neighbors. Which
//! child of a neighboring container is meant depends on how that container
//! labels the shared corner: across a polygon side labels 0 and 1 trade
//! places, between siblings they agree. Each frame entry carries those labels
//! along.

use std::fmt;

use smallvec::SmallVec;

use crate::error::{parse_err, Error, Result};
use crate::tiling::{sector_wrap, TileCoord, Tiling, Turn};

const INLINE: usize = 16;

pub type Digits = SmallVec<[u8; INLINE]>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriCoord {
    pub tile: TileCoord,
    pub digits: Digits,
}

impl TriCoord {
    pub fn new(tile: TileCoord, digits: &[u8]) -> Self {
        TriCoord {
            tile,
            digits: Digits::from_slice(digits),
        }
    }

    /// Subdivision depth `n`.
    pub fn depth(&self) -> usize {
        self.digits.len()
    }

    pub fn children(&self) -> [TriCoord; 4] {
        std::array::from_fn(|k| {
            let mut child = self.clone();
            child.digits.push(k as u8);
            child
        })
    }

    pub fn parent(&self) -> Parent {
        match self.digits.len() {
            0 | 1 => Parent::Tile(self.tile),
            n => Parent::Triangle(TriCoord::new(self.tile, &self.digits[..n - 1])),
        }
    }

    /// `+1` when vertices 0, 1, 2 run counter-clockwise, `-1` otherwise.
    pub fn orientation(&self) -> i8 {
        self.digits
            .iter()
            .skip(1)
            .fold(1, |sign, &d| if d == 3 { sign } else { -sign })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parent {
    Tile(TileCoord),
    Triangle(TriCoord),
}

impl fmt::Display for TriCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/", self.tile)?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

/// The `p` 1-triangles of a tile, by side.
pub fn tile_children(tiling: Tiling, tile: TileCoord) -> Vec<TriCoord> {
    (1..=tiling.p() as u8)
        .map(|s| TriCoord::new(tile, &[s]))
        .collect()
}

/// All triangles of depth `depth` inside `tile`, in lexicographic order.
pub fn triangles_of_tile(tiling: Tiling, tile: TileCoord, depth: usize) -> Vec<TriCoord> {
    if depth == 0 {
        return Vec::new();
    }
    let mut layer = tile_children(tiling, tile);
    for _ in 1..depth {
        layer = layer.iter().flat_map(|t| t.children()).collect();
    }
    layer
}

impl Tiling {
    pub fn check_tri(self, t: &TriCoord) -> Result<()> {
        self.check_tile(t.tile)?;
        let (first, rest) = t.digits.split_first().ok_or(Error::EmptyTriangle)?;
        if !(1..=self.p()).contains(&(*first as u32)) {
            return Err(Error::SideOutOfRange {
                side: *first as u32,
                p: self.p(),
            });
        }
        if let Some(bad) = rest.iter().find(|&&d| d > 3) {
            return Err(parse_err(
                &t.to_string(),
                format!("digit {bad} is not in 0..=3"),
            ));
        }
        Ok(())
    }

    /// Grammar: `<tile>/<a1>.<a2>...<an>`.
    pub fn parse_tri(self, s: &str) -> Result<TriCoord> {
        let trimmed = s.trim();
        let (tile, digits) = trimmed
            .split_once('/')
            .ok_or_else(|| parse_err(s, "expected `<tile>/<a1>.<a2>...`"))?;
        let tile = self.parse_tile(tile)?;
        let digits = digits
            .split('.')
            .map(|d| {
                d.parse::<u8>()
                    .map_err(|_| parse_err(s, format!("bad digit {d:?}")))
            })
            .collect::<Result<Digits>>()?;
        let t = TriCoord { tile, digits };
        match self.check_tri(&t) {
            Ok(()) => Ok(t),
            Err(err) => Err(parse_err(s, err.to_string())),
        }
    }
}

/// How vertex labels match across a polygon side.
///
/// The two polygons traverse their shared side in opposite senses, so
/// vertex 0 of a 1-triangle is vertex 1 of the 1-triangle across, and that
/// is the [`SeamConvention::Identity`] reading, the one the disc model
/// confirms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SeamConvention {
    #[default]
    Identity,
    /// Keep labels 0 and 1 across the side, which swaps the corner digits
    /// chosen below the seam.
    SwapCorners,
}

/// Where a frame entry starts; its own digits follow.
#[derive(Debug, Clone, Copy)]
enum Base {
    /// the first `k` digits of the query
    Prefix(usize),
    /// a 1-triangle of the query's tile
    Fan(u8),
    /// the 1-triangle across the query's base
    Across,
}

/// A frame entry. Each table row moves at most two old entries into the new
/// frame, each once, so tails are owned and only ever appended to.
#[derive(Debug)]
struct Entry {
    base: Base,
    tail: Digits,
}

impl Entry {
    fn root(base: Base) -> Self {
        Entry {
            base,
            tail: Digits::new(),
        }
    }

    /// Child `digit` of the container at depth `k`.
    fn container(k: usize, digit: u8) -> Self {
        let mut tail = Digits::new();
        tail.push(digit);
        Entry {
            base: Base::Prefix(k),
            tail,
        }
    }

    fn push(mut self, digit: u8) -> Self {
        self.tail.push(digit);
        self
    }

    fn finish(self, t: &TriCoord, across: (TileCoord, u32)) -> TriCoord {
        let (tile, head): (TileCoord, &[u8]) = match self.base {
            Base::Prefix(k) => (t.tile, &t.digits[..k]),
            Base::Fan(ref side) => (t.tile, std::slice::from_ref(side)),
            Base::Across => (across.0, &[across.1 as u8]),
        };
        let len = head.len() + self.tail.len();
        let digits = if len <= INLINE {
            let mut buf = [0u8; INLINE];
            buf[..head.len()].copy_from_slice(head);
            buf[head.len()..len].copy_from_slice(&self.tail);
            Digits::from_buf_and_len(buf, len)
        } else {
            let mut d = Digits::from_slice(head);
            d.extend_from_slice(&self.tail);
            d
        };
        TriCoord { tile, digits }
    }
}

/// The neighbor across one edge of the current triangle, with the label
/// that neighbor gives to each endpoint of the shared edge.
#[derive(Debug)]
struct Slot {
    entry: Entry,
    /// indexed by our vertex label; the entry opposite the edge is unused
    labels: [u8; 3],
}

impl Slot {
    /// Sibling `digit` inside the container at depth `k`; siblings agree on
    /// the labels of the midpoints they share.
    fn inner(k: usize, digit: u8) -> Self {
        Slot {
            entry: Entry::container(k, digit),
            labels: [0, 1, 2],
        }
    }

    /// The neighbor of child `corner` across its edge `edge`, given this
    /// slot holds the neighbor across the container edge that contains it.
    fn descend(self, corner: u8, edge: u8) -> Self {
        let digit = self.labels[corner as usize];
        let mid = 3 - corner - edge;
        let mut labels = [0; 3];
        labels[corner as usize] = digit;
        labels[mid as usize] = 3 - digit - self.labels[edge as usize];
        Slot {
            entry: self.entry.push(digit),
            labels,
        }
    }
}

/// Result of a neighbor query with the number of seed and table steps used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriNeighbors {
    pub neighbors: [TriCoord; 3],
    pub steps: usize,
}

impl Tiling {
    /// Neighbors 1, 2, 3 of `t`, sharing its edges 0, 1, 2.
    pub fn tri_neighbors(self, t: &TriCoord) -> Result<[TriCoord; 3]> {
        Ok(self
            .tri_neighbors_with(t, SeamConvention::Identity)?
            .neighbors)
    }

    pub fn tri_neighbors_counted(self, t: &TriCoord) -> Result<TriNeighbors> {
        self.tri_neighbors_with(t, SeamConvention::Identity)
    }

    pub fn tri_neighbors_with(self, t: &TriCoord, seam: SeamConvention) -> Result<TriNeighbors> {
        self.check_tri(t)?;
        let p = self.p();
        let side = t.digits[0] as u32;
        let across = self.neighbor_and_side_unchecked(t.tile, side)?;

        let seam_labels = match seam {
            SeamConvention::Identity => [1, 0, 2],
            SeamConvention::SwapCorners => [0, 1, 2],
        };
        let mut slots = [
            Slot {
                entry: Entry::root(Base::Fan(sector_wrap(side, Turn::Plus, p) as u8)),
                labels: [0, 0, 2],
            },
            Slot {
                entry: Entry::root(Base::Fan(sector_wrap(side, Turn::Minus, p) as u8)),
                labels: [1, 0, 2],
            },
            Slot {
                entry: Entry::root(Base::Across),
                labels: seam_labels,
            },
        ];
        let mut steps = 1;

        for (k, &digit) in t.digits.iter().enumerate().skip(1) {
            let [u, v, w] = slots;
            slots = match digit {
                0 => [Slot::inner(k, 3), w.descend(0, 1), v.descend(0, 2)],
                1 => [w.descend(1, 0), Slot::inner(k, 3), u.descend(1, 2)],
                2 => [v.descend(2, 0), u.descend(2, 1), Slot::inner(k, 3)],
                _ => [Slot::inner(k, 0), Slot::inner(k, 1), Slot::inner(k, 2)],
            };
            steps += 1;
        }

        Ok(TriNeighbors {
            neighbors: slots.map(|s| s.entry.finish(t, across)),
            steps,
        })
    }
}
