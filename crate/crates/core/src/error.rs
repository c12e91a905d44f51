use thiserror::Error;

use crate::partitions::Cell;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed token {token:?} in {input:?}")]
    Parse { input: String, token: String },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("partition has {len} parts, more than the cap of {cap}")]
    TooLong { len: usize, cap: usize },
    #[error("{mu} is not contained in {lambda}")]
    NotContained { lambda: String, mu: String },
    #[error("box {0} lies outside the shape")]
    BoxOutsideShape(Cell),
    #[error("row {k} of {mu} cannot be extended")]
    NotExtensible { mu: String, k: usize },
    #[error("cutoff {n} too small: need lambda_n = mu_n = 0")]
    CutoffTooSmall { n: usize },
    #[error("tableau is not standard")]
    NotStandard,
    #[error("tableau is not semistandard")]
    NotSemistandard,
    #[error("excited move at {0} is blocked")]
    MoveBlocked(Cell),
    #[error("diagram is not an excitation of the given shape: {0}")]
    NotAnExcitation(String),
    #[error("box {0} has a nonpositive coordinate")]
    NonpositiveBox(Cell),
    #[error("no value assigned to variable {0}")]
    UnassignedVariable(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("twisted array has no failure")]
    UnfailingArray,
    #[error("not a twisted array: {0}")]
    InvalidArray(String),
    #[error("a denominator vanishes at the sample point")]
    ZeroDenominator,
    #[error("could not find a sample point with nonzero denominators after {attempts} attempts")]
    SamplingExhausted { attempts: usize },
    #[error("{identity} violated at {instance}: {witness}")]
    IdentityViolated {
        identity: String,
        instance: String,
        witness: String,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn violated(
        identity: impl Into<String>,
        instance: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        Error::IdentityViolated {
            identity: identity.into(),
            instance: instance.into(),
            witness: witness.into(),
        }
    }
}
