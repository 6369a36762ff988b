use std::fmt;

use thiserror::Error;

/// Which clause of the rotational-set definition a candidate failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetCondition {
    /// The point set is not mapped onto itself.
    Invariance,
    /// Some window of `k` cyclically consecutive points repeats an orbit.
    DistinctOrbits,
    /// A point does not advance by exactly `p*k` spatial slots.
    Advance,
}

impl fmt::Display for SetCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetCondition::Invariance => f.write_str("sigma(P) = P"),
            SetCondition::DistinctOrbits => f.write_str("k consecutive points in distinct orbits"),
            SetCondition::Advance => f.write_str("x_i moves to x_(i+pk)"),
        }
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid angle: {0}")]
    InvalidAngle(String),

    #[error("invalid degree {0}: the degree must be at least 2")]
    InvalidDegree(u64),

    #[error("digit {digit} is not valid in base {degree}")]
    InvalidDigit { digit: u64, degree: u32 },

    #[error("malformed itinerary {text:?}: {reason}")]
    InvalidItinerary { text: String, reason: String },

    #[error("itinerary ends in a repeating run of {max_digit}s, which is not the expansion of any point")]
    DegenerateExpansion { max_digit: u32 },

    #[error("invalid rotation number {0}")]
    InvalidRotation(String),

    #[error("point set is not a single periodic orbit")]
    NotPeriodic,

    #[error("fixed points have no principal preimage")]
    NoPrincipal,

    #[error("a rotational set needs at least one orbit")]
    EmptySet,

    #[error("orbits use different degrees ({0} and {1})")]
    DegreeMismatch(u32, u32),

    #[error("orbits use different rotation numbers ({0} and {1})")]
    RotationMismatch(String, String),

    #[error("not a rotational set: condition '{condition}' fails at x_{position}")]
    NotRotationalSet {
        condition: SetCondition,
        /// 1-based spatial position of the first violating point.
        position: usize,
    },

    #[error("invalid gap placement: {0}")]
    InvalidPlacement(String),

    #[error("placement {labels:?} did not reconstruct consistently: {reason}")]
    ReconstructionInconsistent { labels: Vec<usize>, reason: String },

    #[error("enumeration needs {needed} points but the budget is {limit}")]
    BudgetExceeded { needed: u128, limit: u64 },

    #[error("no admissible pullback for polygon [{polygon}]: {reason}")]
    PullbackObstruction { polygon: String, reason: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    ParseError {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error: {0}")]
    SchemaError(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
