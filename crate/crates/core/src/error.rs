use thiserror::Error;

/// Errors raised by the redvar kernels.
///
/// Domain errors (an input that is well formed but violates a mathematical
/// precondition) and capacity errors (a configured cap was exceeded) are kept
/// apart so that front ends can map them to different exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("Cartan matrix is not of finite type: {0}")]
    NotFiniteType(String),
    #[error("rank mismatch: {0}")]
    RankMismatch(String),
    #[error("unsupported root system type `{0}`")]
    UnknownType(String),
    #[error("Weyl group exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("dimension {dim} exceeds the configured bound {bound}")]
    DimensionTooLarge { dim: u64, bound: u64 },
    #[error("cone is not W-admissible: {0}")]
    NotAdmissible(String),
    #[error("(C, K) is not a valid pair: {0}")]
    BadPair(String),
    #[error("invalid (K, Lambda', J) triple: {0}")]
    InvalidTriple(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("weight {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("product contexts do not match")]
    ContextMismatch,
    #[error("restriction map on character groups is not well defined: {0}")]
    IllDefinedRestriction(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("lifted cone is not W-admissible: {0}")]
    NotAdmissibleLift(String),
    #[error("weight monoid is not saturated: {0}")]
    NotSaturated(String),
    #[error("explicit SL2 model disagrees with the level-K rule at (n, m) = ({n}, {m}): {detail}")]
    OracleMismatch { n: u32, m: u32, detail: String },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
