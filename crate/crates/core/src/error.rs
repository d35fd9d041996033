use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid coefficient ring: {0}")]
    InvalidRing(String),
    #[error("constant term is not a unit")]
    NonUnitConstantTerm,
    #[error("element is not a unit")]
    NotAUnit,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid representation: {0}")]
    InvalidRep(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a normal action-stable subgroup: {0}")]
    NotNormal(String),
    #[error("evaluation produced a negative power of T")]
    ConventionOverflow,
    #[error("singular evaluation: {0}")]
    SingularEvaluation(String),
    #[error("cohomology-based classes require the cyclotomic covering (trivial H)")]
    WrongGroup,
    #[error("matrix is not an S-quasi-isomorphism: determinant {0} is not in S")]
    NotSQuasiIso(String),
    #[error("ideal comparison is unstable: precision {low} says {at_low}, precision {high} says {at_high}")]
    PrecisionUnstable {
        low: usize,
        high: usize,
        at_low: bool,
        at_high: bool,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invariant violated ({what}) at {location}")]
    InvariantViolation { what: String, location: String },
}

pub type Result<T> = std::result::Result<T, Error>;
