use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{{{p},{q}}} is not a hyperbolic tiling (need 1/p + 1/q < 1/2)")]
    NotHyperbolic { p: u32, q: u32 },

    #[error("p and q must both be at least 3 (got p={p}, q={q})")]
    DegeneratePolygon { p: u32, q: u32 },

    #[error("tile navigation is only available for {{7,3}} and {{5,4}} (got {{{p},{q}}})")]
    UnsupportedTiling { p: u32, q: u32 },

    #[error("{{{p},{q}}} has a stationary level recurrence; no greedy numeration exists")]
    StationaryBasis { p: u32, q: u32 },

    #[error("basis needs at least 3 terms (got {0})")]
    BasisTooShort(usize),

    #[error("tree node 0 does not exist; index 0 denotes the central tile")]
    NodeZero,

    #[error("tree index {0} exceeds the materialized tree capacity")]
    NodeTooLarge(u64),

    #[error("side {side} is out of range 1..={p}")]
    SideOutOfRange { side: u32, p: u32 },

    #[error("sector {sector} is out of range 1..={max}")]
    SectorOutOfRange { sector: u32, max: u32 },

    #[error("invalid coordinate {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("triangle coordinate needs at least one digit")]
    EmptyTriangle,

    #[error("region bounds exceeded: {0}")]
    RegionBounds(String),

    #[error("state {state} is outside the alphabet 0..{alphabet}")]
    Alphabet { state: u32, alphabet: u32 },

    #[error("state vector has {got} entries, region has {expected} cells")]
    StateLength { expected: usize, got: usize },

    #[error("rule file line {line}: {reason}")]
    Rule { line: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        input: input.to_owned(),
        reason: reason.into(),
    }
}
