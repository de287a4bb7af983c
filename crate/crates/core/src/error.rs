use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable mismatch: `{0}` vs `{1}`")]
    VariableMismatch(char, char),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("resultant of two zero polynomials is undefined")]
    BothZero,
    #[error("constant polynomial has no discriminant")]
    ConstantPolynomial,
    #[error("degree {degree} exceeds the factorization guard {guard}")]
    DegreeGuard { degree: usize, guard: usize },
    #[error("invalid radicand {0}")]
    InvalidRadicand(i64),
    #[error("at most {max} square roots may be adjoined")]
    TooManyRadicands { max: usize },
    #[error("function has a pole at {0}")]
    Pole(String),
    #[error("degenerate Weierstrass model: discriminant vanishes identically")]
    DegenerateModel,
    #[error("valuation data {0} matches no Kodaira type")]
    Unclassifiable(String),
    #[error("point does not lie on the curve")]
    NotOnCurve,
    #[error("operation is undefined for the zero section")]
    ZeroSection,
    #[error("fiber at {0} is irreducible")]
    IrreducibleFiber(String),
    #[error("invalid component index {index} for fiber type {fiber}")]
    InvalidComponent { fiber: String, index: usize },
    #[error("unsupported table row: {0}")]
    UnsupportedRow(String),
    #[error("inconsistent data: {0}")]
    Inconsistent(String),
    #[error("quartic is not reduced")]
    NonReduced,
    #[error("invalid plane quartic: {0}")]
    InvalidQuartic(String),
    #[error("singular point worse than a node at {0}")]
    NonNodal(String),
    #[error("{0} nodes are outside the supported range")]
    UnsupportedNodeCount(usize),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("{path}:{line}: {message}")]
    File {
        path: String,
        line: usize,
        message: String,
    },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
