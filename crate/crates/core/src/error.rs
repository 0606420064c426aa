use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("map parameter must be finite, got {0}")]
    NonFiniteParameter(f64),
    #[error("map parameter U = 0 is degenerate")]
    ZeroParameter,
    #[error("|U| = 2 is the parabolic boundary and is not supported (U = {0})")]
    ParabolicBoundary(f64),
    #[error("operation requires 0 < |U| < 2, got U = {0}")]
    OutOfEllipticRange(f64),
    #[error("operation requires |U| > 2, got U = {0}")]
    NotHyperbolic(f64),
    #[error("projective point (0, 0) or non-finite coordinates")]
    InvalidPoint,
    #[error("matrix is singular or non-finite")]
    SingularMatrix,
    #[error("map is affine (m21 = 0) and cannot be normalized")]
    AffineMap,
    #[error("map reverses orientation (det = {0} <= 0)")]
    OrientationReversing(f64),
    #[error("cycle period must be at least 3, got {0}")]
    InvalidPeriod(u32),
    #[error("phase function is discontinuous at x0 = {0}")]
    AtDiscontinuity(f64),
    #[error("operator has a pole at x = 0")]
    PoleAtZero,
    #[error("closed-form iterate left a residual imaginary part {0:e}")]
    ComplexResidue(f64),
    #[error("function does not decay fast enough to be integrated (tail estimate {0:e})")]
    NonIntegrable(f64),
    #[error("supplied inverse does not invert the forward map at z = {z} (error {error:e})")]
    InverseMismatch { z: f64, error: f64 },
    #[error("data was built for a different map parameter")]
    ParameterMismatch,
    #[error("invalid histogram configuration: {0}")]
    InvalidHistogram(&'static str),
}
