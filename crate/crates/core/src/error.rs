use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("quotient lattice has torsion (invariant factors {0:?})")]
    TorsionCokernel(Vec<String>),

    #[error("size guard exceeded: {0}")]
    RankGuard(String),

    #[error("unsupported group: {0}")]
    Unsupported(String),

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("invalid Galois action: {0}")]
    InvalidAction(String),

    #[error("construction failed: {0}")]
    ConstructionFailure(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("shift does not pair to zero with every simple coroot: {0}")]
    InvalidShift(String),

    #[error("weight is not dominant: {0}")]
    NonDominant(String),

    #[error("parameter is neither L-algebraic nor C-algebraic")]
    NotAlgebraic,

    #[error("parameter has a non-rational or non-half-integral component: {0}")]
    NonRational(String),

    #[error("Weil group relation violated: {0}")]
    RelationViolation(String),

    #[error("no Hecke data for prime {0}")]
    UnknownPrime(u64),

    #[error("cannot add scalars with different sqrt(p) parity")]
    MixedParity,

    #[error("mismatched primes {0} and {1}")]
    PrimeMismatch(u64, u64),

    #[error("division by zero")]
    DivisionByZero,

    #[error("not a square: {0}")]
    NotASquare(String),

    #[error("field too small: {0}")]
    FieldTooSmall(String),

    #[error("field or size mismatch: {0}")]
    FieldMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code used in CLI error reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::TorsionCokernel(_) => "torsion_cokernel",
            Error::RankGuard(_) => "rank_guard",
            Error::Unsupported(_) => "unsupported",
            Error::InvalidDatum(_) => "invalid_datum",
            Error::InvalidAction(_) => "invalid_action",
            Error::ConstructionFailure(_) => "construction_failure",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::InvalidShift(_) => "invalid_shift",
            Error::NonDominant(_) => "non_dominant",
            Error::NotAlgebraic => "not_algebraic",
            Error::NonRational(_) => "non_rational",
            Error::RelationViolation(_) => "relation_violation",
            Error::UnknownPrime(_) => "unknown_prime",
            Error::MixedParity => "mixed_parity",
            Error::PrimeMismatch(..) => "prime_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::NotASquare(_) => "not_a_square",
            Error::FieldTooSmall(_) => "field_too_small",
            Error::FieldMismatch(_) => "field_mismatch",
            Error::Parse(_) => "parse_error",
        }
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
