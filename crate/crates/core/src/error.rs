//! Error type shared by all analysis stages.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("no root of unity of order {0} in this field")]
    NoSuchRoot(u32),

    #[error("cannot parse scalar `{text}`: {reason}")]
    ScalarParse { text: String, reason: String },

    #[error("line {line}: {reason}")]
    FileFormat { line: usize, reason: String },

    #[error("line {line}: duplicate line (same projective line already listed)")]
    DuplicateLine { line: usize },

    #[error("duplicate line in arrangement: {0}")]
    DuplicateForm(String),

    #[error("a linear form needs a nonzero coefficient")]
    ZeroLinearForm,

    #[error("an arrangement needs at least 3 distinct lines, got {0}")]
    TooFewLines(usize),

    #[error("arrangement is a pencil (all lines through one point); the syzygy invariants are trivial")]
    Pencil,

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("no syzygy found up to degree cap {cap}; raise the cap (default d-1)")]
    CapExceeded { cap: usize },

    #[error("{0} is not a nearly modular point of this arrangement")]
    NotNearlyModular(String),

    #[error("family parameter out of range: {0}")]
    ParameterRange(String),

    #[error("family `{family}`: promised intersection pattern failed at {detail}")]
    GenericityFailure { family: String, detail: String },

    #[error("all points are collinear")]
    CollinearInput,

    #[error("need at least 3 distinct points, got {0}")]
    TooFewPoints(usize),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
