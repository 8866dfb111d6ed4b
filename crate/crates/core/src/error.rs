use thiserror::Error;

use crate::field::Level;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("m = {0} is outside the supported range 1..=21")]
    Range(u32),
    #[error("bad modulus: {0}")]
    Construction(String),
    #[error("division by zero")]
    ZeroDivision,
    #[error("{what} is not an element of the {level} subfield")]
    Membership { what: &'static str, level: Level },
    #[error("{0}")]
    Domain(String),
    #[error("trace condition Tr(1/a) = Tr(1) fails")]
    TraceCondition,
    #[error("rho has a pole at x = 1")]
    Pole,
    #[error("invalid (h, e): {0}")]
    Validation(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("infeasible sweep: {0}")]
    Feasibility(String),
    /// A closed-form result failed its own re-verification.
    #[error("internal verification failure: {0}")]
    Verification(String),
}

impl Error {
    /// Stable machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Range(_) => "range",
            Error::Construction(_) => "construction",
            Error::ZeroDivision => "zero_division",
            Error::Membership { .. } => "membership",
            Error::Domain(_) => "domain",
            Error::TraceCondition => "trace_condition",
            Error::Pole => "pole",
            Error::Validation(_) => "validation",
            Error::Parse(_) => "parse",
            Error::Feasibility(_) => "feasibility",
            Error::Verification(_) => "verification",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
