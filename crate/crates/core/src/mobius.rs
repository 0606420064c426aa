//! Linear-fractional maps on the real projective line.
//!
//! The canonical forward map is `S x = 1/(U - x)` with matrix `[[0, 1], [-1, U]]`;
//! its inverse is `T x = U - 1/x` with matrix `[[U, -1], [1, 0]]`. Points are
//! carried in homogeneous coordinates so orbits may pass through the pole at
//! `x = U` (and through infinity) without special cases.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Dynamical regime of the map `x -> 1/(U - x)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// `|U| < 2`: conjugate to a rigid rotation.
    Elliptic,
    /// `|U| > 2`: one attracting and one repelling fixed point.
    Hyperbolic,
}

/// The real map parameter `U`. Zero and the parabolic boundary `|U| = 2` are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapParams {
    u: f64,
}

impl MapParams {
    pub fn new(u: f64) -> Result<Self> {
        if !u.is_finite() {
            return Err(Error::NonFiniteParameter(u));
        }
        if u == 0.0 {
            return Err(Error::ZeroParameter);
        }
        if u.abs() == 2.0 {
            return Err(Error::ParabolicBoundary(u));
        }
        Ok(Self { u })
    }

    #[inline]
    pub fn u(&self) -> f64 {
        self.u
    }

    pub fn regime(&self) -> Regime {
        if self.u.abs() < 2.0 {
            Regime::Elliptic
        } else {
            Regime::Hyperbolic
        }
    }

    pub fn is_elliptic(&self) -> bool {
        self.regime() == Regime::Elliptic
    }

    /// Matrix of the forward map `S x = 1/(U - x)`.
    pub fn forward(&self) -> MobiusMatrix {
        MobiusMatrix::forward(self.u)
    }

    /// Matrix of the backward map `T x = U - 1/x`.
    pub fn backward(&self) -> MobiusMatrix {
        MobiusMatrix::backward(self.u)
    }

    /// Applies `S` once to a finite real point. Returns `±inf` at the pole.
    #[inline]
    pub fn step(&self, x: f64) -> f64 {
        1.0 / (self.u - x)
    }

    /// Applies `T` once to a finite real point.
    #[inline]
    pub fn step_back(&self, x: f64) -> f64 {
        self.u - 1.0 / x
    }
}

/// A point `p/q` of the real projective line, stored with `max(|p|, |q|) = 1`.
#[derive(Debug, Clone, Copy)]
pub struct ProjectivePoint {
    p: f64,
    q: f64,
}

impl ProjectivePoint {
    pub const INFINITY: ProjectivePoint = ProjectivePoint { p: 1.0, q: 0.0 };

    pub fn new(p: f64, q: f64) -> Result<Self> {
        if !p.is_finite() || !q.is_finite() || (p == 0.0 && q == 0.0) {
            return Err(Error::InvalidPoint);
        }
        Ok(Self::renormalized(p, q))
    }

    /// Embeds a real number; `±inf` maps to the point at infinity.
    pub fn from_real(x: f64) -> Self {
        if x.is_infinite() {
            Self::INFINITY
        } else {
            Self::renormalized(x, 1.0)
        }
    }

    #[inline]
    fn renormalized(p: f64, q: f64) -> Self {
        let scale = p.abs().max(q.abs());
        Self {
            p: p / scale,
            q: q / scale,
        }
    }

    #[inline]
    pub fn p(&self) -> f64 {
        self.p
    }

    #[inline]
    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn is_infinite(&self) -> bool {
        self.q == 0.0
    }

    /// Affine value `p/q`; `+inf` for the point at infinity.
    pub fn to_real(&self) -> f64 {
        if self.q == 0.0 {
            f64::INFINITY
        } else {
            self.p / self.q
        }
    }

    /// Chordal distance `|p1 q2 - p2 q1| / (|v1| |v2|)`, the sine of the angle
    /// between representatives. Lies in `[0, 1]` and is finite at infinity.
    pub fn distance(&self, other: &ProjectivePoint) -> f64 {
        let cross = self.p * other.q - other.p * self.q;
        cross.abs() / (self.p.hypot(self.q) * other.p.hypot(other.q))
    }
}

impl PartialEq for ProjectivePoint {
    fn eq(&self, other: &Self) -> bool {
        self.p * other.q == other.p * self.q
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "inf")
        } else {
            write!(f, "{}", self.to_real())
        }
    }
}

/// A nonsingular 2x2 real matrix acting on the projective line by
/// `(p, q) -> (m11 p + m12 q, m21 p + m22 q)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MobiusMatrix {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl MobiusMatrix {
    pub const IDENTITY: MobiusMatrix = MobiusMatrix {
        m11: 1.0,
        m12: 0.0,
        m21: 0.0,
        m22: 1.0,
    };

    pub fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Result<Self> {
        let m = Self { m11, m12, m21, m22 };
        let det = m.det();
        if !det.is_finite() || det == 0.0 {
            return Err(Error::SingularMatrix);
        }
        Ok(m)
    }

    /// `S x = 1/(U - x)`.
    pub fn forward(u: f64) -> Self {
        Self {
            m11: 0.0,
            m12: 1.0,
            m21: -1.0,
            m22: u,
        }
    }

    /// `T x = U - 1/x`.
    pub fn backward(u: f64) -> Self {
        Self {
            m11: u,
            m12: -1.0,
            m21: 1.0,
            m22: 0.0,
        }
    }

    pub fn det(&self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(&self) -> f64 {
        self.m11 + self.m22
    }

    pub fn apply(&self, x: ProjectivePoint) -> ProjectivePoint {
        let p = self.m11 * x.p + self.m12 * x.q;
        let q = self.m21 * x.p + self.m22 * x.q;
        ProjectivePoint::renormalized(p, q)
    }

    /// Same projective map, scaled so the largest entry has modulus one.
    pub fn normalized(&self) -> Self {
        let s = self
            .m11
            .abs()
            .max(self.m12.abs())
            .max(self.m21.abs())
            .max(self.m22.abs());
        Self {
            m11: self.m11 / s,
            m12: self.m12 / s,
            m21: self.m21 / s,
            m22: self.m22 / s,
        }
    }

    /// `self^n` by binary powering, renormalizing after every product.
    pub fn pow(&self, mut n: u64) -> Self {
        let mut acc = Self::IDENTITY;
        let mut base = self.normalized();
        while n > 0 {
            if n & 1 == 1 {
                acc = (acc * base).normalized();
            }
            base = (base * base).normalized();
            n >>= 1;
        }
        acc
    }

    /// Largest deviation of the normalized matrix from a multiple of the identity.
    pub fn scalar_deviation(&self) -> f64 {
        let m = self.normalized();
        m.m12.abs().max(m.m21.abs()).max((m.m11 - m.m22).abs())
    }
}

impl Mul for MobiusMatrix {
    type Output = MobiusMatrix;

    fn mul(self, rhs: MobiusMatrix) -> MobiusMatrix {
        MobiusMatrix {
            m11: self.m11 * rhs.m11 + self.m12 * rhs.m21,
            m12: self.m11 * rhs.m12 + self.m12 * rhs.m22,
            m21: self.m21 * rhs.m11 + self.m22 * rhs.m21,
            m22: self.m21 * rhs.m12 + self.m22 * rhs.m22,
        }
    }
}

/// Image of `x` under `m`.
pub fn apply(m: &MobiusMatrix, x: ProjectivePoint) -> ProjectivePoint {
    m.apply(x)
}

/// `n` successive applications of `S`.
pub fn iterate_direct(params: MapParams, x0: ProjectivePoint, n: u64) -> ProjectivePoint {
    let s = params.forward();
    (0..n).fold(x0, |x, _| s.apply(x))
}

/// Parameters conjugating `S` to multiplication `y -> kappa y`.
///
/// `mu_plus` and `mu_minus` are the roots of `mu^2 - U mu + 1 = 0`, i.e. the
/// fixed points of `S`, and `kappa = mu_minus / mu_plus`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConjugationData {
    pub mu_plus: Complex64,
    pub mu_minus: Complex64,
    pub kappa: Complex64,
}

impl ConjugationData {
    /// `y = (1 - mu_plus x) / (mu_minus x - 1)` in homogeneous form `(numerator, denominator)`.
    pub fn to_rotation_coords(&self, x: ProjectivePoint) -> (Complex64, Complex64) {
        let (p, q) = (Complex64::from(x.p), Complex64::from(x.q));
        (q - self.mu_plus * p, self.mu_minus * p - q)
    }

    /// `y(x)` as a complex number; infinite at `x = mu_plus`.
    pub fn y(&self, x: f64) -> Complex64 {
        (1.0 - self.mu_plus * x) / (self.mu_minus * x - 1.0)
    }

    /// Phase of `kappa` when `|U| < 2`.
    pub fn rotation_angle(&self) -> f64 {
        self.kappa.arg()
    }
}

pub fn conjugation_data(params: MapParams) -> ConjugationData {
    let u = params.u();
    let root = Complex64::new(u * u - 4.0, 0.0).sqrt();
    let mu_plus = (u + root) / 2.0;
    let mu_minus = (u - root) / 2.0;
    let kappa = match params.regime() {
        // arg of kappa is -2 arctan(sqrt(4 - U^2) / U); building it from the
        // angle keeps |kappa| = 1 exactly.
        Regime::Elliptic => {
            let angle = 2.0 * ((4.0 - u * u).sqrt() / u).atan();
            Complex64::from_polar(1.0, -angle)
        }
        Regime::Hyperbolic => mu_minus / mu_plus,
    };
    ConjugationData {
        mu_plus,
        mu_minus,
        kappa,
    }
}

/// Largest imaginary residue tolerated when projecting a closed-form iterate
/// back onto the real line.
pub const CLOSED_FORM_IMAG_TOL: f64 = 1e-9;

/// `x_n = (1 + kappa^n y0) / (mu_plus + mu_minus kappa^n y0)`.
///
/// `kappa^n` is evaluated from the polar angle reduced mod 2π in the elliptic
/// regime, and by real powering otherwise. Starting at the fixed point
/// `mu_plus` (where `y0` has a vanishing denominator) returns `x0` unchanged.
pub fn iterate_closed_form(
    params: MapParams,
    x0: ProjectivePoint,
    n: u64,
) -> Result<ProjectivePoint> {
    let conj = conjugation_data(params);
    if params.regime() == Regime::Hyperbolic && x0 == ProjectivePoint::from_real(conj.mu_plus.re) {
        return Ok(x0);
    }
    let (y_num, y_den) = conj.to_rotation_coords(x0);

    // Homogeneous form: x_n = (y_den + k y_num) / (mu_plus y_den + mu_minus k y_num)
    // with k = kappa^n. When |kappa| > 1 numerator and denominator are both
    // divided by k so nothing overflows.
    let (p, q) = match params.regime() {
        Regime::Elliptic => {
            let angle = (conj.rotation_angle() * n as f64).rem_euclid(TAU);
            let k = Complex64::from_polar(1.0, angle);
            (
                y_den + k * y_num,
                conj.mu_plus * y_den + conj.mu_minus * k * y_num,
            )
        }
        Regime::Hyperbolic => {
            let kappa = conj.kappa.re;
            if kappa.abs() <= 1.0 {
                let k = kappa.powf(n as f64);
                (
                    y_den + k * y_num,
                    conj.mu_plus * y_den + conj.mu_minus * k * y_num,
                )
            } else {
                let k_inv = kappa.recip().powf(n as f64);
                (
                    k_inv * y_den + y_num,
                    conj.mu_plus * k_inv * y_den + conj.mu_minus * y_num,
                )
            }
        }
    };

    // Divide by the larger component so the ratio is bounded.
    let (ratio, p_major) = if p.norm() >= q.norm() {
        (q / p, true)
    } else {
        (p / q, false)
    };
    if ratio.im.abs() > CLOSED_FORM_IMAG_TOL {
        return Err(Error::ComplexResidue(ratio.im.abs()));
    }
    let point = if p_major {
        ProjectivePoint::renormalized(1.0, ratio.re)
    } else {
        ProjectivePoint::renormalized(ratio.re, 1.0)
    };
    Ok(point)
}

/// Affine change of variables `y = k1 x + k2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineConjugacy {
    pub k1: f64,
    pub k2: f64,
}

impl AffineConjugacy {
    pub fn apply(&self, x: f64) -> f64 {
        self.k1 * x + self.k2
    }

    pub fn apply_projective(&self, x: ProjectivePoint) -> ProjectivePoint {
        ProjectivePoint::renormalized(self.k1 * x.p() + self.k2 * x.q(), x.q())
    }
}

/// Reduces an orientation-preserving, non-affine linear-fractional map to the
/// canonical form `x -> 1/(U - x)`.
///
/// `U = trace / sqrt(det)`, `k1 = -m21 / sqrt(det)`, `k2 = m11 / sqrt(det)`;
/// then `A m A^-1 = sqrt(det) S` for `A = [[k1, k2], [0, 1]]`.
pub fn normalize(m: &MobiusMatrix) -> Result<(MapParams, AffineConjugacy)> {
    let det = m.det();
    if !det.is_finite() {
        return Err(Error::SingularMatrix);
    }
    if m.m21 == 0.0 {
        return Err(Error::AffineMap);
    }
    if det <= 0.0 {
        return Err(Error::OrientationReversing(det));
    }
    let root = det.sqrt();
    let params = MapParams::new(m.trace() / root)?;
    Ok((
        params,
        AffineConjugacy {
            k1: -m.m21 / root,
            k2: m.m11 / root,
        },
    ))
}

/// Positive `U` for which every orbit has period `n`: `U^2 = 4 / (tan^2(pi/n) + 1)`.
pub fn cycle_parameter(n: u32) -> Result<MapParams> {
    if n < 3 {
        return Err(Error::InvalidPeriod(n));
    }
    let t = (PI / n as f64).tan();
    MapParams::new((4.0 / (t * t + 1.0)).sqrt())
}

/// Smallest period `n <= max_period` for which `|U|` lies within `tol` of a
/// resonant value `2 cos(pi m / n)`, i.e. where the rotation number is `m/(2n)`-rational.
pub fn nearest_resonance(params: MapParams, max_period: u32, tol: f64) -> Option<u32> {
    let a = params.u().abs();
    (2..=max_period).find(|&n| {
        (1..n).any(|m| {
            let resonant = 2.0 * (PI * m as f64 / n as f64).cos();
            (a - resonant.abs()).abs() < tol
        })
    })
}
