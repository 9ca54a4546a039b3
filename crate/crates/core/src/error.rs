use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime below 2^31")]
    NotPrime(u64),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("line {line}: duplicate {kind} `{name}`")]
    Duplicate { line: usize, kind: &'static str, name: String },

    #[error("line {line}: unknown {kind} `{name}`")]
    Unknown { line: usize, kind: &'static str, name: String },

    #[error("line {line}: non-composable relation ({later}, {earlier}): target of `{earlier}` is not the source of `{later}`")]
    NonComposableRelation { line: usize, later: String, earlier: String },

    #[error("quiver is not gentle: {0}")]
    NotGentle(String),

    #[error("algebra is infinite-dimensional: path through `{0}` never hits a relation")]
    InfiniteDimensional(String),

    #[error("invalid string at position {position}: {reason}")]
    InvalidString { position: usize, reason: String },

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),

    #[error("representation violates relation ({later}, {earlier})")]
    RelationViolated { later: String, earlier: String },

    #[error("representations live over different quivers or fields")]
    QuiverMismatch,

    #[error("dimension vector mismatch: {0}")]
    DimensionMismatch(String),

    #[error("subspace tuple is not a subrepresentation: arrow `{0}` leaves it")]
    NotStable(String),

    #[error("need at least {needed} interpolation points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },

    #[error("count {got} at q={q} disagrees with interpolated value {predicted}")]
    InconsistentCount { q: u64, got: u64, predicted: String },

    #[error("interpolation: {0}")]
    Interpolation(String),

    #[error("homological computation exceeded cap {0}")]
    CapExceeded(usize),

    #[error("{0}")]
    Precondition(String),

    #[error("fiber mismatch over base point {point}: actual {actual}, predicted {predicted}")]
    FiberMismatch { point: String, actual: u64, predicted: u64 },
}
