use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parameter out of range: {0}")]
    Range(String),

    #[error("codimension condition fails: rho(g,r,d) = {rho}, but (n-t)(r+1-t)-1 = {target}")]
    Codimension { rho: i64, target: i64 },

    #[error("g - d + r = {0} must be at least 1")]
    NonPositiveS(i64),

    #[error("no integral degree d satisfies the codimension condition")]
    NoIntegralDegree,

    #[error("vanishing sequence has {found} entries, expected r + 1 = {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vanishing sequence must be strictly increasing and non-negative")]
    NotIncreasing,

    #[error("pointed Brill-Noether number is {0}, the count requires -1")]
    PointedRho(i64),

    #[error("factorial of negative integer {0}")]
    NegativeFactorial(i64),

    #[error("delta = {delta} outside 0..={n}")]
    DeltaOutOfRange { delta: i64, n: i64 },

    #[error("residuation requires t = r (got t = {t}, r = {r})")]
    NotResidual { t: i64, r: i64 },

    #[error("none of the nonemptiness conditions (i)-(iv) holds")]
    NoNonemptyCondition,

    #[error("genus {0} is not supported here")]
    GenusUnsupported(i64),

    #[error("n = 2d - g = {0} must be at least 2")]
    SecantOrderTooSmall(i64),

    #[error("element has a nonzero constant term; e^(-x) is not a finite sum")]
    NotNilpotent,

    #[error("the product gamma13 * gamma23 has no normal form")]
    UnreducibleMonomial,

    #[error("twist m = {m} is below 2g - 1 - d = {min}")]
    TwistTooSmall { m: i64, min: i64 },

    #[error("ring elements of genus {0} and {1} cannot be combined")]
    GenusMismatch(usize, usize),

    #[error("coefficient of delta_{{{i}:{j}}} is not computed")]
    UnknownCoefficient { i: i64, j: i64 },

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    /// True for failures where two independent evaluations disagreed.
    pub fn is_consistency_failure(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}
