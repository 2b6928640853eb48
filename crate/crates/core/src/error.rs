use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be positive")]
    ZeroRank,

    #[error("window has {got} entries but the rank is {n}")]
    WindowLength { n: usize, got: usize },

    #[error("window entries {a} and {b} are congruent modulo {n}; residues must be distinct")]
    RepeatedResidue { n: usize, a: i64, b: i64 },

    #[error("window sums to {got}; the sum must be n(n+1)/2 = {expected}")]
    WindowSum { expected: i64, got: i64 },

    #[error("cannot parse {what} from {input:?}: {reason}")]
    Parse {
        what: &'static str,
        input: String,
        reason: String,
    },

    #[error("entries {0:?} must be strictly increasing")]
    NotIncreasing(Vec<i64>),

    #[error("entries {a} and {b} of {entries:?} are congruent modulo {n}")]
    ClassResidue {
        n: usize,
        a: i64,
        b: i64,
        entries: Vec<i64>,
    },

    #[error("word {0} is not reduced")]
    NotReduced(String),

    #[error("unsupported case: {0}")]
    Unsupported(String),

    #[error("relation is cyclic: {}", .0.join(" < "))]
    Cycle(Vec<String>),

    #[error("graph is disconnected: no undirected path from {0} to {1}")]
    Disconnected(String, String),

    #[error("graph is empty")]
    EmptyGraph,

    #[error("unknown label {0}")]
    UnknownLabel(String),

    #[error("{0}")]
    NotAPermutation(String),

    #[error("not a subset of the inversion set: {0}")]
    NotASubset(String),

    #[error("packet of {0} does not occupy consecutive positions")]
    NotSaturated(String),

    #[error(
        "packet intersection for w={w}, X={x} has shape {intersection:?} (indices of packet members that are inversions)"
    )]
    ShapeViolation {
        w: String,
        x: String,
        intersection: Vec<usize>,
    },

    #[error("index {index} out of range 0..{bound}")]
    OutOfRange { index: usize, bound: usize },

    #[error("hint-free isomorphism refused for {0} nodes (limit {1})")]
    TooLarge(usize, usize),

    #[error("hint is not a bijection: {0}")]
    BadHint(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}
