//! The black/white tree spanning one angular sector of the pentagrid and the
//! heptagrid.
//!
//! Nodes are numbered from 1 at the root, level by level, left to right.
//! Black nodes have two sons and white nodes three, following `B -> B* W` and
//! `W -> B W* W`, where `*` marks the son seen through side 4 of the father
//! in the heptagrid.
//!
//! Father and son indices come from a table that is grown level by level on
//! demand and shared process-wide.

use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};

/// Highest level whose bounds fit in a `u64`.
pub const MAX_LEVEL: u32 = 44;

/// Upper bound on materialized nodes (levels 0..=15 fit).
pub const TABLE_CAPACITY: u64 = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Black,
    White,
}

impl Status {
    pub fn son_count(self) -> u64 {
        match self {
            Status::Black => 2,
            Status::White => 3,
        }
    }

    /// Offset of the starred son within the son list.
    fn star(self) -> u64 {
        match self {
            Status::Black => 0,
            Status::White => 1,
        }
    }

    fn sons(self) -> &'static [Status] {
        match self {
            Status::Black => &[Status::Black, Status::White],
            Status::White => &[Status::Black, Status::White, Status::White],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeInfo {
    pub index: u64,
    pub status: Status,
    /// 0 for the root, standing for the central tile.
    pub father: u64,
    pub sigma4: u64,
    pub level: u32,
    /// Position within the level, left to right.
    pub rank: u64,
    /// Position among the father's sons, 0-based; 0 for the root.
    pub son_rank: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BranchClass {
    Root,
    Leftmost,
    Rightmost,
    Interior,
}

/// First index of each level; entry `MAX_LEVEL + 1` is one past the end.
const LEVEL_FIRST: [u64; MAX_LEVEL as usize + 2] = {
    let mut first = [0u64; MAX_LEVEL as usize + 2];
    let (mut prev, mut size) = (1u64, 1u64); // u_{-1} stands in as 1, u_0 = 1
    first[0] = 1;
    let mut l = 0;
    while l <= MAX_LEVEL as usize {
        first[l + 1] = first[l] + size;
        let next = if l == 0 { 3 } else { 3 * size - prev };
        prev = size;
        size = next;
        l += 1;
    }
    first
};

/// Levels kept in a table built once and read without locking.
pub const PREBUILT_LEVEL: u32 = 10;

/// `(first, last)` node indices of level `l`.
///
/// Panics if `l > MAX_LEVEL`.
pub fn level_bounds(l: u32) -> (u64, u64) {
    assert!(l <= MAX_LEVEL, "level {l} exceeds {MAX_LEVEL}");
    (LEVEL_FIRST[l as usize], LEVEL_FIRST[l as usize + 1] - 1)
}

/// Level of node `nu`, computed from the level sizes alone.
pub fn level_of(nu: u64) -> Result<u32> {
    if nu == 0 {
        return Err(Error::NodeZero);
    }
    if nu >= LEVEL_FIRST[MAX_LEVEL as usize + 1] {
        return Err(Error::NodeTooLarge(nu));
    }
    Ok(LEVEL_FIRST.partition_point(|&f| f <= nu) as u32 - 1)
}

pub fn branch_class(nu: u64) -> Result<BranchClass> {
    let level = level_of(nu)?;
    if nu == 1 {
        return Ok(BranchClass::Root);
    }
    let (first, last) = level_bounds(level);
    Ok(if nu == first {
        BranchClass::Leftmost
    } else if nu == last {
        BranchClass::Rightmost
    } else {
        BranchClass::Interior
    })
}

#[derive(Debug, Clone, Copy)]
struct Record {
    status: Status,
    father: u32,
    first_son: u32,
    son_rank: u8,
    level: u8,
}

/// Records of whole levels; every record already knows its first son.
#[derive(Debug, Clone)]
struct Table {
    /// `records[nu - 1]`
    records: Vec<Record>,
}

impl Table {
    fn new() -> Self {
        Table {
            records: vec![Record {
                status: Status::White,
                father: 0,
                first_son: 2,
                son_rank: 0,
                level: 0,
            }],
        }
    }

    fn len(&self) -> u64 {
        self.records.len() as u64
    }

    fn top_level(&self) -> u32 {
        self.records.last().expect("root exists").level as u32
    }

    /// Appends the next level.
    fn grow_level(&mut self) {
        let level = self.top_level();
        let (start, end) = level_bounds(level);
        let mut next_son = level_bounds(level + 1).1 + 1;
        for nu in start..=end {
            let status = self.records[(nu - 1) as usize].status;
            for (rank, &son) in status.sons().iter().enumerate() {
                self.records.push(Record {
                    status: son,
                    father: nu as u32,
                    first_son: next_son as u32,
                    son_rank: rank as u8,
                    level: level as u8 + 1,
                });
                next_son += son.son_count();
            }
        }
    }

    /// Grows until `nu` has a record.
    fn ensure(&mut self, nu: u64) -> Result<()> {
        while self.len() < nu {
            let next = self.top_level() + 1;
            if next >= MAX_LEVEL || level_bounds(next).1 > TABLE_CAPACITY {
                return Err(Error::NodeTooLarge(nu));
            }
            self.grow_level();
        }
        Ok(())
    }

    fn info(&self, nu: u64) -> NodeInfo {
        let rec = self.records[(nu - 1) as usize];
        NodeInfo {
            index: nu,
            status: rec.status,
            father: rec.father as u64,
            sigma4: rec.first_son as u64 + rec.status.star(),
            level: rec.level as u32,
            rank: nu - LEVEL_FIRST[rec.level as usize],
            son_rank: rec.son_rank,
        }
    }
}

fn prebuilt() -> &'static Table {
    static TABLE: OnceLock<Table> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Table::new();
        t.ensure(level_bounds(PREBUILT_LEVEL).1)
            .expect("prebuilt levels fit the capacity");
        t
    })
}

/// Father/son table grown on demand.
#[derive(Debug)]
pub struct FibTree {
    table: RwLock<Table>,
}

impl Default for FibTree {
    fn default() -> Self {
        Self::new()
    }
}

impl FibTree {
    pub fn new() -> Self {
        FibTree {
            table: RwLock::new(Table::new()),
        }
    }

    /// The process-wide instance used past the prebuilt levels.
    pub fn global() -> &'static FibTree {
        static TREE: OnceLock<FibTree> = OnceLock::new();
        TREE.get_or_init(|| FibTree {
            table: RwLock::new(prebuilt().clone()),
        })
    }

    pub fn node_info(&self, nu: u64) -> Result<NodeInfo> {
        if nu == 0 {
            return Err(Error::NodeZero);
        }
        {
            let table = self.table.read().expect("tree lock poisoned");
            if nu <= table.len() {
                return Ok(table.info(nu));
            }
        }
        let mut table = self.table.write().expect("tree lock poisoned");
        table.ensure(nu)?;
        Ok(table.info(nu))
    }

    /// Number of nodes currently materialized.
    pub fn materialized(&self) -> u64 {
        self.table.read().expect("tree lock poisoned").len()
    }
}

pub fn node_info(nu: u64) -> Result<NodeInfo> {
    let table = prebuilt();
    if nu >= 1 && nu <= table.len() {
        return Ok(table.info(nu));
    }
    FibTree::global().node_info(nu)
}

pub fn father(nu: u64) -> Result<u64> {
    Ok(node_info(nu)?.father)
}

pub fn sigma4(nu: u64) -> Result<u64> {
    Ok(node_info(nu)?.sigma4)
}

pub fn status(nu: u64) -> Result<Status> {
    Ok(node_info(nu)?.status)
}

/// Indices of the sons of `nu`, left to right.
pub fn sons(nu: u64) -> Result<Vec<u64>> {
    let info = node_info(nu)?;
    let first = info.sigma4 - info.status.star();
    Ok((first..first + info.status.son_count()).collect())
}
