use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero has no canonical unit part")]
    ZeroCanonical,
    #[error("division by zero")]
    DivisionByZero,
    #[error("gcd of two zero polynomials is undefined")]
    GcdOfZeros,
    #[error("cannot evaluate at t = 0: 0 is not a point of the torus")]
    EvaluateAtZero,
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid complex: {0}")]
    InvalidComplex(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("cannot evaluate λ^N for factor {0}: kind is unverified")]
    UnverifiedPower(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("monodromy does not commute with the boundary in degree {0}")]
    NonCommutingMonodromy(usize),
    #[error("eta is not closed: d(eta) != 0")]
    EtaNotClosed,
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("no stabilization up to truncation level {m_max}: {diagnostics}")]
    NoStabilization { m_max: usize, diagnostics: String },
    #[error("cocycles are not cohomologous: no degree-0 element mu with d(mu) = eta1 - eta2")]
    NotCohomologous,
    #[error("the class of phi must be nonzero (phi is an epimorphism)")]
    ZeroEta,
    #[error("invalid Gysin input: {0}")]
    InvalidGysin(String),
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("missing option: {0}")]
    MissingOption(String),
}

pub type Result<T> = std::result::Result<T, Error>;
