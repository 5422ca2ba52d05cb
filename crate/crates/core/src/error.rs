use thiserror::Error;

use crate::exact::poly::{Coefficient, NotDivisible, VariableMismatch};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    VariableMismatch(#[from] VariableMismatch),
    #[error("not divisible by the linear form; remainder {remainder}")]
    NotDivisible { remainder: String },
    #[error("denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("rational function with zero denominator")]
    ZeroDenominator,

    #[error("group order exceeds the cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("unsupported group type: {0}")]
    UnsupportedType(String),
    #[error("cannot parse group label {0:?}")]
    BadGroupLabel(String),
    #[error("Poincare polynomial of {label} does not factor into q-integers")]
    FactorizationFailed { label: String },
    #[error("no degree table for {0}")]
    MissingDegrees(String),

    #[error("polynomial is not invariant under the group")]
    NotInvariant,

    #[error("r = {r} is divisible by n = {n}")]
    RDivisibleByN { n: usize, r: usize },
    #[error("quotient did not terminate below degree {cap}")]
    NonTerminating { cap: usize },

    #[error("no maximal parabolic table for {0}")]
    MissingParabolicTable(String),

    #[error("particle separation {sep:e} is below the threshold")]
    SeparationTooSmall { sep: f64 },
    #[error("integrator step size underflow at t = {t}")]
    StepFailure { t: f64 },

    #[error("rewriting exceeded {cap} moves")]
    MoveCapExceeded { cap: usize },
    #[error("path passes within {distance:e} of a reflection hyperplane")]
    HyperplaneTooClose { distance: f64 },
    #[error("integration tolerance not met: {0}")]
    ToleranceNotMet(String),

    #[error("invalid configuration: {0}")]
    Config(String),
}

impl<C: Coefficient> From<NotDivisible<C>> for Error {
    fn from(e: NotDivisible<C>) -> Self {
        Error::NotDivisible {
            remainder: e.remainder.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
