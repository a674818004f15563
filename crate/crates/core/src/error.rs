use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants marked "bug signal" indicate a broken internal invariant rather
/// than bad input; they should never fire on valid groups.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group too large: order exceeds cap {cap}")]
    GroupTooLarge { cap: usize },

    #[error("element not in group")]
    ElementNotInGroup,

    #[error("not a p-group (order {order})")]
    NotAPGroup { order: usize },

    #[error("characters on different groups")]
    DifferentGroups,

    #[error("inner product not integral")]
    NotIntegral,

    #[error("not a subgroup")]
    NotASubgroup,

    #[error("not normal")]
    NotNormal,

    #[error("not a constituent")]
    NotAConstituent,

    #[error("internal Clifford failure: {0}")]
    CliffordFailure(String),

    #[error("internal lifting failure: {0}")]
    LiftingFailure(String),

    #[error("unstable chain step {index} is neither an extension nor an induction step")]
    UnstableCaseViolation { index: usize },

    #[error("ledger identity violated at chain index {index}: m={m}, s={s}, r={r}")]
    LedgerViolation {
        index: usize,
        m: u32,
        s: u32,
        r: u32,
    },

    #[error("witness construction failure: {0}")]
    WitnessFailure(String),

    #[error("exponent-p extraspecial requires odd p")]
    EvenExtraspecial,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
