//! Exact spectral theory of the transfer operator
//! `H_U f(x) = f(U - 1/x) / x^2` and dynamics of the map `x -> 1/(U - x)`.
//!
//! * [`mobius`]: projective-line arithmetic, direct and closed-form orbits,
//!   normalization of arbitrary linear-fractional maps, cycle parameters.
//! * [`spectral`]: eigenphase, phase function, Lorentzian invariant density,
//!   eigenfunctions and operator residuals.
//! * [`expansion`]: expansion of real-line functions in the eigenbasis via a
//!   periodic trapezoid rule on the circle.
//! * [`attractor`]: orbit histograms, analytic density and CDF, KS comparison,
//!   the hyperbolic point attractor and the generalized invariance residual.

pub mod attractor;
pub mod error;
pub mod expansion;
pub mod mobius;
pub mod spectral;

pub use error::{Error, Result};
pub use mobius::{MapParams, MobiusMatrix, ProjectivePoint, Regime};
pub use spectral::{EigenIndex, SpectralData};
