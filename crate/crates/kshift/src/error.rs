use thiserror::Error;

/// Errors surfaced by the calculator. Domain errors carry a stable
/// name (see [`Error::code`]) that frontends print verbatim.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("EmptyGSet: certificates need a nonempty G-set")]
    EmptyGSet,

    #[error("NotInGroup: {0}")]
    NotInGroup(String),

    #[error("BudgetExceeded: {0}")]
    BudgetExceeded(String),

    #[error("NotInfiniteType: {0} has a finite nonzero exponent; saturate it first")]
    NotInfiniteType(String),

    #[error("FiniteTypeFiniteZ: {0} is of finite type and Z is finite; no closed form applies")]
    FiniteTypeFiniteZ(String),

    #[error("TrivialSupernatural: this operation needs n ≠ 1")]
    TrivialSupernatural,

    #[error("NonIntegralMultiplicity: input is not a virtual character")]
    NonIntegralMultiplicity,

    #[error("NegativeMultiplicity: {0}")]
    NegativeMultiplicity(String),

    #[error("EigenspaceSeparation: no admissible prime below {0} split the class algebra")]
    EigenspaceSeparation(u64),

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Stable identifier for structured output and exit-code mapping.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Parse(_) => "ParseError",
            Error::EmptyGSet => "EmptyGSet",
            Error::NotInGroup(_) => "NotInGroup",
            Error::BudgetExceeded(_) => "BudgetExceeded",
            Error::NotInfiniteType(_) => "NotInfiniteType",
            Error::FiniteTypeFiniteZ(_) => "FiniteTypeFiniteZ",
            Error::TrivialSupernatural => "TrivialSupernatural",
            Error::NonIntegralMultiplicity => "NonIntegralMultiplicity",
            Error::NegativeMultiplicity(_) => "NegativeMultiplicity",
            Error::EigenspaceSeparation(_) => "EigenspaceSeparation",
            Error::Internal(_) => "InternalError",
        }
    }

    /// True for malformed input (exit 2), false for domain errors (exit 1).
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
