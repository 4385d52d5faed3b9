//! Synchronous cellular automata on a finite patch of a trigrid.
//!
//! Every cell has three neighbors, read in the order of its local sides
//! 1, 2, 3. Neighbors outside the region read the rule's boundary state.

use std::collections::HashMap;
use std::hash::Hasher;

use fnv::FnvHasher;

use crate::error::{Error, Result};
use crate::tiling::Tiling;
use crate::trigrid::{triangles_of_tile, TriCoord};

pub const MAX_LEVEL: u32 = 6;
pub const MAX_SUBDIV: usize = 4;

#[derive(Debug, Clone)]
pub struct Region {
    tiling: Tiling,
    level: u32,
    subdiv: usize,
    cells: Vec<TriCoord>,
    index: HashMap<TriCoord, usize>,
    neighbors: Vec<[Option<usize>; 3]>,
}

/// The `subdiv`-triangles of every tile within `level` steps of the
/// central tile (level 0 is the central tile alone).
pub fn build_region(tiling: Tiling, level: u32, subdiv: usize) -> Result<Region> {
    if level > MAX_LEVEL {
        return Err(Error::RegionBounds(format!(
            "level {level} exceeds {MAX_LEVEL}"
        )));
    }
    if !(1..=MAX_SUBDIV).contains(&subdiv) {
        return Err(Error::RegionBounds(format!(
            "subdivision {subdiv} is outside 1..={MAX_SUBDIV}"
        )));
    }
    let cells: Vec<TriCoord> = tiling
        .ball(level)
        .into_iter()
        .flat_map(|c| triangles_of_tile(tiling, c, subdiv))
        .collect();
    let index: HashMap<TriCoord, usize> = cells
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), i))
        .collect();
    let neighbors = cells
        .iter()
        .map(|c| {
            let n = tiling.tri_neighbors(c)?;
            Ok(n.map(|t| index.get(&t).copied()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Region {
        tiling,
        level,
        subdiv,
        cells,
        index,
        neighbors,
    })
}

impl Region {
    pub fn tiling(&self) -> Tiling {
        self.tiling
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn subdiv(&self) -> usize {
        self.subdiv
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn cells(&self) -> &[TriCoord] {
        &self.cells
    }

    pub fn position(&self, t: &TriCoord) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Region indices of the neighbors of cell `i`, `None` outside.
    pub fn neighbors(&self, i: usize) -> [Option<usize>; 3] {
        self.neighbors[i]
    }

    /// A state vector of `background` with the listed cells overwritten.
    ///
    /// `seed` reads `coord=state,coord=state,...`.
    pub fn seeded(&self, seed: &str, background: u32) -> Result<Vec<u32>> {
        let mut state = vec![background; self.len()];
        for item in seed.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (coord, value) = item.split_once('=').ok_or_else(|| Error::Parse {
                input: item.to_owned(),
                reason: "expected coord=state".into(),
            })?;
            let t = self.tiling.parse_tri(coord)?;
            let i = self.position(&t).ok_or_else(|| Error::Parse {
                input: item.to_owned(),
                reason: "cell is outside the region".into(),
            })?;
            state[i] = value.trim().parse().map_err(|_| Error::Parse {
                input: item.to_owned(),
                reason: format!("bad state {value:?}"),
            })?;
        }
        Ok(state)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Transition {
    /// `(own, sum) -> next`
    Totalistic(HashMap<(u32, u32), u32>),
    /// `(own, [n1, n2, n3]) -> next`
    Table(HashMap<(u32, [u32; 3]), u32>),
}

/// A transition rule; entries left out keep the cell's state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    alphabet: u32,
    boundary: u32,
    transition: Transition,
}

impl Rule {
    pub fn totalistic(
        alphabet: u32,
        boundary: u32,
        entries: impl IntoIterator<Item = ((u32, u32), u32)>,
    ) -> Result<Rule> {
        Rule {
            alphabet,
            boundary,
            transition: Transition::Totalistic(entries.into_iter().collect()),
        }
        .validated()
    }

    pub fn table(
        alphabet: u32,
        boundary: u32,
        entries: impl IntoIterator<Item = ((u32, [u32; 3]), u32)>,
    ) -> Result<Rule> {
        Rule {
            alphabet,
            boundary,
            transition: Transition::Table(entries.into_iter().collect()),
        }
        .validated()
    }

    fn validated(self) -> Result<Rule> {
        let rule_err = |reason: String| Error::Rule { line: 0, reason };
        if self.alphabet == 0 {
            return Err(rule_err("alphabet must be at least 1".into()));
        }
        self.check_state(self.boundary)?;
        match &self.transition {
            Transition::Totalistic(m) => {
                for (&(own, sum), &next) in m {
                    self.check_state(own)?;
                    self.check_state(next)?;
                    if sum > 3 * (self.alphabet - 1) {
                        return Err(rule_err(format!("sum {sum} cannot occur")));
                    }
                }
            }
            Transition::Table(m) => {
                for (&(own, ns), &next) in m {
                    for s in [own, next].into_iter().chain(ns) {
                        self.check_state(s)?;
                    }
                }
            }
        }
        let b = self.boundary;
        if self.next(b, [b; 3]) != b {
            return Err(rule_err(format!("boundary state {b} is not quiescent")));
        }
        Ok(self)
    }

    fn check_state(&self, state: u32) -> Result<()> {
        if state < self.alphabet {
            Ok(())
        } else {
            Err(Error::Alphabet {
                state,
                alphabet: self.alphabet,
            })
        }
    }

    pub fn alphabet(&self) -> u32 {
        self.alphabet
    }

    pub fn boundary(&self) -> u32 {
        self.boundary
    }

    pub fn is_totalistic(&self) -> bool {
        matches!(self.transition, Transition::Totalistic(_))
    }

    pub fn next(&self, own: u32, neighbors: [u32; 3]) -> u32 {
        let hit = match &self.transition {
            Transition::Totalistic(m) => m.get(&(own, neighbors.iter().sum())),
            Transition::Table(m) => m.get(&(own, neighbors)),
        };
        hit.copied().unwrap_or(own)
    }

    /// The same rule with every neighborhood listed explicitly.
    pub fn to_table(&self) -> Rule {
        let k = self.alphabet;
        let mut entries = HashMap::new();
        for own in 0..k {
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        entries.insert((own, [a, b, c]), self.next(own, [a, b, c]));
                    }
                }
            }
        }
        Rule {
            alphabet: k,
            boundary: self.boundary,
            transition: Transition::Table(entries),
        }
    }

    /// Parses the line format:
    ///
    /// ```text
    /// alphabet 2
    /// boundary 0
    /// totalistic
    /// 0 1 -> 1
    /// ```
    ///
    /// or `table` followed by `own n1 n2 n3 -> next` lines. `#` starts a
    /// comment.
    pub fn parse(text: &str) -> Result<Rule> {
        let mut alphabet = None;
        let mut boundary = 0;
        let mut kind: Option<&str> = None;
        let mut totalistic = HashMap::new();
        let mut table = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |reason: &str| Error::Rule {
                line: i + 1,
                reason: reason.to_owned(),
            };
            let number = |s: &str| {
                s.parse::<u32>()
                    .map_err(|_| err(&format!("bad number {s:?}")))
            };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["alphabet", k] => alphabet = Some(number(k)?),
                ["boundary", s] => boundary = number(s)?,
                [mode @ ("totalistic" | "table")] => {
                    if kind.is_some_and(|k| k != *mode) {
                        return Err(err("cannot mix totalistic and table entries"));
                    }
                    kind = Some(mode);
                }
                [lhs @ .., "->", next] => {
                    let next = number(next)?;
                    let lhs = lhs.iter().map(|s| number(s)).collect::<Result<Vec<_>>>()?;
                    match (kind, lhs.as_slice()) {
                        (Some("totalistic"), &[own, sum]) => {
                            totalistic.insert((own, sum), next);
                        }
                        (Some("table"), &[own, a, b, c]) => {
                            table.insert((own, [a, b, c]), next);
                        }
                        (None, _) => return Err(err("entry before `totalistic` or `table`")),
                        _ => return Err(err("wrong number of states before `->`")),
                    }
                }
                _ => return Err(err("unrecognized line")),
            }
        }
        let alphabet = alphabet.ok_or(Error::Rule {
            line: 0,
            reason: "missing `alphabet` line".into(),
        })?;
        match kind {
            Some("table") => Rule::table(alphabet, boundary, table),
            _ => Rule::totalistic(alphabet, boundary, totalistic),
        }
    }
}

fn check_state_vector(region: &Region, rule: &Rule, state: &[u32]) -> Result<()> {
    if state.len() != region.len() {
        return Err(Error::StateLength {
            expected: region.len(),
            got: state.len(),
        });
    }
    state.iter().try_for_each(|&s| rule.check_state(s))
}

/// One synchronous update.
pub fn step(region: &Region, rule: &Rule, state: &[u32]) -> Result<Vec<u32>> {
    check_state_vector(region, rule, state)?;
    Ok(step_unchecked(region, rule, state))
}

fn step_unchecked(region: &Region, rule: &Rule, state: &[u32]) -> Vec<u32> {
    state
        .iter()
        .zip(&region.neighbors)
        .map(|(&own, ns)| {
            let read = ns.map(|n| n.map_or(rule.boundary, |j| state[j]));
            rule.next(own, read)
        })
        .collect()
}

/// FNV-1a over the little-endian states.
pub fn frame_hash(state: &[u32]) -> u64 {
    let mut h = FnvHasher::default();
    for s in state {
        h.write(&s.to_le_bytes());
    }
    h.finish()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trajectory {
    /// The initial state followed by one frame per step.
    pub frames: Vec<Vec<u32>>,
    pub hashes: Vec<u64>,
}

pub fn run(region: &Region, rule: &Rule, state: &[u32], steps: usize) -> Result<Trajectory> {
    check_state_vector(region, rule, state)?;
    let mut frames = vec![state.to_vec()];
    for _ in 0..steps {
        let next = step_unchecked(region, rule, frames.last().expect("initial frame"));
        frames.push(next);
    }
    let hashes = frames.iter().map(|f| frame_hash(f)).collect();
    Ok(Trajectory { frames, hashes })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: Tiling = Tiling::Heptagrid;

    fn growth() -> Rule {
        Rule::totalistic(2, 0, (1..=3).map(|s| ((0, s), 1))).unwrap()
    }

    #[test]
    fn region_sizes() {
        assert_eq!(build_region(H, 0, 1).unwrap().len(), 7);
        assert_eq!(build_region(H, 0, 2).unwrap().len(), 28);
        assert_eq!(build_region(H, 1, 1).unwrap().len(), 56);
        assert!(build_region(H, 7, 1).is_err());
        assert!(build_region(H, 1, 5).is_err());
        assert!(build_region(H, 1, 0).is_err());
    }

    #[test]
    fn interior_cells_see_three_region_neighbors() {
        let region = build_region(H, 0, 2).unwrap();
        for i in 0..region.len() {
            let inside = region.neighbors(i).iter().flatten().count();
            let on_rim = region.cells()[i].digits[1] != 2 && region.cells()[i].digits[1] != 3;
            assert_eq!(inside, if on_rim { 2 } else { 3 }, "{}", region.cells()[i]);
        }
    }

    #[test]
    fn seed_on_central_child_spreads_to_siblings() {
        let region = build_region(H, 0, 2).unwrap();
        let state = region.seeded("0/4.3=1", 0).unwrap();
        let next = step(&region, &growth(), &state).unwrap();
        let live: Vec<String> = region
            .cells()
            .iter()
            .zip(&next)
            .filter(|(_, &s)| s == 1)
            .map(|(c, _)| c.to_string())
            .collect();
        assert_eq!(live, ["0/4.0", "0/4.1", "0/4.2", "0/4.3"]);
    }

    #[test]
    fn growth_saturates_within_six_steps() {
        let region = build_region(H, 0, 2).unwrap();
        let state = region.seeded("0/1.3=1", 0).unwrap();
        let t = run(&region, &growth(), &state, 6).unwrap();
        assert!(t.frames[6].iter().all(|&s| s == 1));
    }

    #[test]
    fn zero_steps_is_identity() {
        let region = build_region(H, 1, 1).unwrap();
        let state = region.seeded("3:1/2=1", 0).unwrap();
        let t = run(&region, &growth(), &state, 0).unwrap();
        assert_eq!(t.frames, std::slice::from_ref(&state));
        assert_eq!(t.hashes, [frame_hash(&state)]);
    }

    #[test]
    fn quiescent_is_fixed() {
        let region = build_region(H, 1, 2).unwrap();
        let zero = vec![0; region.len()];
        assert_eq!(step(&region, &growth(), &zero).unwrap(), zero);
    }

    #[test]
    fn table_expansion_agrees() {
        let region = build_region(H, 1, 2).unwrap();
        let rule = Rule::totalistic(3, 0, [((0, 1), 2), ((2, 2), 1), ((1, 4), 0)]).unwrap();
        let table = rule.to_table();
        assert!(!table.is_totalistic());
        let state = region.seeded("0/1.3=1,0/2.0=2,2:1/5.1=1", 0).unwrap();
        assert_eq!(
            run(&region, &rule, &state, 8),
            run(&region, &table, &state, 8)
        );
    }

    #[test]
    fn parse_rule_files() {
        let text = "# growth\nalphabet 2\nboundary 0\ntotalistic\n0 1 -> 1\n0 2 -> 1\n0 3 -> 1\n";
        assert_eq!(Rule::parse(text).unwrap(), growth());
        let text = "alphabet 2\ntable\n0 1 0 0 -> 1 # only side 1\n";
        let rule = Rule::parse(text).unwrap();
        assert_eq!(rule.next(0, [1, 0, 0]), 1);
        assert_eq!(rule.next(0, [0, 1, 0]), 0);
        assert!(matches!(
            Rule::parse("alphabet 2\n0 1 -> 1"),
            Err(Error::Rule { line: 2, .. })
        ));
        assert!(matches!(
            Rule::parse("totalistic\n0 1 -> 1"),
            Err(Error::Rule { .. })
        ));
        assert!(Rule::parse("alphabet 2\ntotalistic\n0 1 -> 2").is_err());
        assert!(Rule::parse("alphabet 2\ntotalistic\n0 0 -> 1").is_err());
        assert!(Rule::parse("alphabet 2\ntotalistic\ntable").is_err());
    }

    #[test]
    fn bad_states_are_rejected() {
        let region = build_region(H, 0, 1).unwrap();
        assert_eq!(
            step(&region, &growth(), &[0; 6]),
            Err(Error::StateLength {
                expected: 7,
                got: 6
            })
        );
        assert_eq!(
            step(&region, &growth(), &[0, 0, 5, 0, 0, 0, 0]),
            Err(Error::Alphabet {
                state: 5,
                alphabet: 2
            })
        );
        assert!(region.seeded("0/9=1", 0).is_err());
        assert!(region.seeded("1:1/1=1", 0).is_err());
    }
}
