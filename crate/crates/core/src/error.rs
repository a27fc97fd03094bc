use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("elements belong to different algebras ({0} vs {1})")]
    MismatchedAlgebra(String, String),
    #[error("unknown algebra '{0}' (expected newstein, newstein-ext:<case>, newstein2, h3, sl2, so3 or file:<path>)")]
    UnknownAlgebra(String),
    #[error("invalid algebra definition: {0}")]
    InvalidDefinition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("determinant of covering matrix is {0}, expected 1")]
    NonUnitDeterminant(f64),
    #[error("point is off the mass shell (residual {0:.3e})")]
    OffShell(f64),
    #[error("point is off the sphere (residual {0:.3e})")]
    OffSphere(f64),
    #[error("section is singular at this point: {0}")]
    SingularSection(String),
    #[error("assembled element is not in the U(1) stabilizer (residual {0:.3e})")]
    NotInStabilizer(f64),
    #[error("label {0} is not an internal-sector generator")]
    NotInternal(String),
    #[error("modular rank failed: {0}")]
    Modular(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
