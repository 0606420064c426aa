//! Spectral data of `H_U f(x) = f(U - 1/x) / x^2` for `0 < |U| < 2`.
//!
//! The eigenfunctions are `sigma_n(x) = L_U(x) exp(i n theta(x))` with
//! eigenvalues `exp(i n phi)`, where `L_U` is the Lorentzian invariant density
//! and `theta` is a phase satisfying `theta(U - 1/x) - theta(x) = phi (mod 2π)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mobius::MapParams;

/// Harmonic number of an eigenfunction; may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EigenIndex(pub i32);

impl From<i32> for EigenIndex {
    fn from(n: i32) -> Self {
        EigenIndex(n)
    }
}

/// Constants derived once per `U`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    params: MapParams,
    /// Eigenphase in `(0, π)`.
    pub phi: f64,
    pub cos_phi: f64,
    pub sin_phi: f64,
    /// Pole parameter `R_U = (U^2 + i|U| sqrt(4 - U^2)) / (2U)`.
    pub r: Complex64,
    /// Point where the raw arctangent form of `theta` jumps.
    pub x0_disc: f64,
    /// `sqrt(4 - U^2)`.
    width: f64,
}

impl SpectralData {
    pub fn new(params: MapParams) -> Result<Self> {
        let u = params.u();
        if !params.is_elliptic() {
            return Err(Error::OutOfEllipticRange(u));
        }
        let width = (4.0 - u * u).sqrt();
        // arctan(|U| w / (U^2 - 2)) + {0, π}: the case split is exactly the
        // quadrant choice of atan2 since the "y" argument is positive.
        let phi = (u.abs() * width).atan2(u * u - 2.0);
        let cos_phi = (u * u - 2.0) / 2.0;
        let sin_phi = u.abs() * width / 2.0;
        let r = Complex64::new(u * u, u.abs() * width) / (2.0 * u);
        let x0_disc = u / (1.0 + cos_phi);
        Ok(Self {
            params,
            phi,
            cos_phi,
            sin_phi,
            r,
            x0_disc,
            width,
        })
    }

    pub fn params(&self) -> MapParams {
        self.params
    }

    #[inline]
    pub fn u(&self) -> f64 {
        self.params.u()
    }

    /// `sqrt(4 - U^2)`.
    pub fn width(&self) -> f64 {
        self.width
    }

    /// `L_U(x) = sqrt(4 - U^2) / (2π) / (x^2 - U x + 1)`, normalized to unit mass.
    #[inline]
    pub fn lorentzian(&self, x: f64) -> f64 {
        let u = self.u();
        self.width / TAU / (x * x - u * x + 1.0)
    }

    /// Continuous branch of the phase, `theta(0) = 0`.
    ///
    /// Fails exactly at `x0_disc`, where the arctangent argument has a zero
    /// denominator; [`SpectralData::theta_continuous`] returns the limit there.
    pub fn theta(&self, x: f64) -> Result<f64> {
        if x == self.x0_disc {
            return Err(Error::AtDiscontinuity(x));
        }
        Ok(self.theta_continuous(x))
    }

    /// Phase with the removable point `x0_disc` filled in by continuity
    /// (`-sgn(U) π`). Monotone with `dtheta/dx = -sgn(U) 2π L_U(x)`.
    pub fn theta_continuous(&self, x: f64) -> f64 {
        let u = self.u();
        if x == self.x0_disc {
            return -u.signum() * PI;
        }
        if x.is_infinite() {
            // both tails tend to phi or phi -+ 2π
            return if x < 0.0 {
                self.phi
            } else {
                self.phi - TAU * u.signum()
            };
        }
        let raw = 2.0 * (x * self.sin_phi / (x * (1.0 + self.cos_phi) - u)).atan();
        if x > self.x0_disc {
            raw - TAU * u.abs() / u
        } else {
            raw
        }
    }

    /// `exp(i theta(x))` from the rational form `R^2 (x - R*) / (x - R)`.
    pub fn phase_factor(&self, x: f64) -> Complex64 {
        let r = self.r;
        r * r * (x - r.conj()) / (x - r)
    }

    /// `exp(i n phi)`; unimodular by construction.
    pub fn eigenvalue(&self, n: EigenIndex) -> Complex64 {
        Complex64::from_polar(1.0, (n.0 as f64 * self.phi).rem_euclid(TAU))
    }

    /// `sigma_n(x) = L_U(x) exp(i n theta(x))`.
    pub fn eigenfunction(&self, n: EigenIndex, x: f64) -> Complex64 {
        let angle = (n.0 as f64 * self.theta_continuous(x)).rem_euclid(TAU);
        Complex64::from_polar(self.lorentzian(x), angle)
    }

    /// Pole form
    /// `(1/(2πi)) (|U|/U) (1/(x - R) - 1/(x - R*)) ((x - R*)/(x - R))^n`,
    /// which differs from [`SpectralData::eigenfunction`] by the constant
    /// [`SpectralData::pole_form_constant`].
    pub fn eigenfunction_pole_form(&self, n: EigenIndex, x: f64) -> Complex64 {
        let u = self.u();
        let r = self.r;
        let rc = r.conj();
        let i_tau = Complex64::new(0.0, TAU);
        let density = (u.abs() / u) * (1.0 / (x - r) - 1.0 / (x - rc)) / i_tau;
        density * ((x - rc) / (x - r)).powi(n.0)
    }

    /// Unimodular `c_n` with `pole_form = c_n * sigma_n`, fixed at `x_ref = U/2`.
    pub fn pole_form_constant(&self, n: EigenIndex) -> Complex64 {
        let x_ref = self.u() / 2.0;
        self.eigenfunction_pole_form(n, x_ref) / self.eigenfunction(n, x_ref)
    }

    /// `(H_U f)(x) = f(U - 1/x) / x^2`.
    pub fn apply_operator<F, T>(&self, f: F, x: f64) -> Result<Complex64>
    where
        F: Fn(f64) -> T,
        T: Into<Complex64>,
    {
        if x == 0.0 {
            return Err(Error::PoleAtZero);
        }
        Ok(f(self.u() - 1.0 / x).into() / (x * x))
    }

    /// `max |H_U sigma_n - exp(i n phi) sigma_n|` over `sample`.
    pub fn eigen_residual(&self, n: EigenIndex, sample: &[f64]) -> Result<f64> {
        let lambda = self.eigenvalue(n);
        sample.iter().try_fold(0.0f64, |acc, &x| {
            let image = self.apply_operator(|y| self.eigenfunction(n, y), x)?;
            Ok(acc.max((image - lambda * self.eigenfunction(n, x)).norm()))
        })
    }
}

pub fn eval_phi(params: MapParams) -> Result<f64> {
    SpectralData::new(params).map(|s| s.phi)
}

pub fn eval_lorentzian(params: MapParams, x: f64) -> Result<f64> {
    SpectralData::new(params).map(|s| s.lorentzian(x))
}

pub fn eval_theta(params: MapParams, x: f64) -> Result<f64> {
    SpectralData::new(params)?.theta(x)
}

pub fn r_u(params: MapParams) -> Result<Complex64> {
    SpectralData::new(params).map(|s| s.r)
}

pub fn eval_eigenfunction(params: MapParams, n: EigenIndex, x: f64) -> Result<Complex64> {
    SpectralData::new(params).map(|s| s.eigenfunction(n, x))
}

pub fn apply_operator<F, T>(params: MapParams, f: F, x: f64) -> Result<Complex64>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    SpectralData::new(params)?.apply_operator(f, x)
}

pub fn eigen_residual(params: MapParams, n: EigenIndex, sample: &[f64]) -> Result<f64> {
    SpectralData::new(params)?.eigen_residual(n, sample)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn data(u: f64) -> SpectralData {
        SpectralData::new(MapParams::new(u).unwrap()).unwrap()
    }

    fn wrap(a: f64) -> f64 {
        (a + PI).rem_euclid(TAU) - PI
    }

    #[test]
    fn phi_examples() {
        assert_abs_diff_eq!(data(1.0).phi, 2.0 * PI / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(data(1.0).phi, 2.0943951, epsilon = 1e-7);
        assert_abs_diff_eq!(data(2f64.sqrt()).phi, PI / 2.0, epsilon = 1e-7);
        assert_abs_diff_eq!(data(1.2).phi, 1.8545904, epsilon = 1e-7);
        assert_abs_diff_eq!(data(1.2).phi, 2.0 * (4.0f64 / 3.0).atan(), epsilon = 1e-15);
    }

    #[test]
    fn phi_rejects_hyperbolic() {
        let p = MapParams::new(2.5).unwrap();
        assert_eq!(eval_phi(p), Err(Error::OutOfEllipticRange(2.5)));
    }

    #[test]
    fn cached_trig_matches_phi() {
        for u in [-1.9, -1.0, -0.3, 0.3, 1.0, 1.9] {
            let s = data(u);
            assert_abs_diff_eq!(s.cos_phi, s.phi.cos(), epsilon = 1e-14);
            assert_abs_diff_eq!(s.sin_phi, s.phi.sin(), epsilon = 1e-14);
            assert!(s.phi > 0.0 && s.phi < PI);
        }
    }

    #[test]
    fn lorentzian_examples() {
        assert_abs_diff_eq!(
            data(1.0).lorentzian(2.0),
            3f64.sqrt() / (6.0 * PI),
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(data(1.0).lorentzian(2.0), 0.0918881, epsilon = 1e-7);
        assert_abs_diff_eq!(data(1.2).lorentzian(0.6), 2.0 / (1.6 * PI), epsilon = 1e-15);
        assert_abs_diff_eq!(data(1.2).lorentzian(0.6), 0.3978874, epsilon = 1e-7);
    }

    #[test]
    fn theta_examples() {
        let s = data(1.2);
        assert_eq!(s.theta(0.0).unwrap(), 0.0);
        assert_eq!(s.theta(s.x0_disc), Err(Error::AtDiscontinuity(s.x0_disc)));

        let h = 1e-6;
        let fd = (s.theta(1.0 + h).unwrap() - s.theta(1.0 - h).unwrap()) / (2.0 * h);
        assert_relative_eq!(fd, -TAU * s.lorentzian(1.0), max_relative = 1e-5);
    }

    #[test]
    fn theta_continuous_across_x0() {
        for u in [1.2, -1.2, 0.4, -1.8] {
            let s = data(u);
            let below = s.theta(s.x0_disc - 1e-9).unwrap();
            let above = s.theta(s.x0_disc + 1e-9).unwrap();
            assert_abs_diff_eq!(below, above, epsilon = 1e-7);
            assert_abs_diff_eq!(s.theta_continuous(s.x0_disc), below, epsilon = 1e-7);
        }
    }

    #[test]
    fn theta_cocycle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for u in [1.2, -1.2] {
            let s = data(u);
            for _ in 0..100 {
                let x: f64 = rng.gen_range(-10.0..10.0);
                let jump = s.theta_continuous(u - 1.0 / x) - s.theta_continuous(x) - s.phi;
                assert_abs_diff_eq!(wrap(jump), 0.0, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn phase_factor_matches_theta() {
        for u in [1.2, -0.7] {
            let s = data(u);
            for x in [-5.0, -0.3, 0.0, 0.8, 2.5, 40.0] {
                let e = Complex64::from_polar(1.0, s.theta_continuous(x));
                assert_abs_diff_eq!((e - s.phase_factor(x)).norm(), 0.0, epsilon = 1e-14);
            }
        }
    }

    #[test]
    fn r_examples() {
        let r = data(1.0).r;
        assert_abs_diff_eq!(r.re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.im, 3f64.sqrt() / 2.0, epsilon = 1e-15);

        let r = data(-1.0).r;
        assert_abs_diff_eq!(r.re, -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(r.im, -3f64.sqrt() / 2.0, epsilon = 1e-15);

        for u in [-1.9, -0.6, 0.05, 1.3] {
            let r = data(u).r;
            assert_abs_diff_eq!(r.norm(), 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!((r * r.conj()).re, 1.0, epsilon = 1e-15);
            assert_abs_diff_eq!(r.re, u / 2.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn eigenfunction_examples() {
        let s = data(1.2);
        let z = s.eigenfunction(EigenIndex(0), -3.3);
        assert_eq!(z.im, 0.0);
        assert_abs_diff_eq!(z.re, s.lorentzian(-3.3), epsilon = 1e-16);

        assert_abs_diff_eq!(
            s.eigenfunction(EigenIndex(5), 0.3).norm(),
            s.lorentzian(0.3),
            epsilon = 1e-15
        );

        let shifted = s.eigenfunction(EigenIndex(1), 0.3)
            * Complex64::from_polar(1.0, 2.0 * s.theta(0.3).unwrap());
        assert_abs_diff_eq!(
            (shifted - s.eigenfunction(EigenIndex(3), 0.3)).norm(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn pole_form_matches_up_to_constant() {
        for u in [1.2, -1.2, 0.3, -1.9] {
            let s = data(u);
            for n in -6..=6 {
                let n = EigenIndex(n);
                let c = s.pole_form_constant(n);
                assert_abs_diff_eq!(c.norm(), 1.0, epsilon = 1e-13);
                for x in [-7.0, -1.0, 0.0, 0.4, 3.0, 11.0] {
                    let diff = s.eigenfunction_pole_form(n, x) - c * s.eigenfunction(n, x);
                    assert_abs_diff_eq!(diff.norm(), 0.0, epsilon = 1e-13);
                }
            }
            let c0 = s.pole_form_constant(EigenIndex(0));
            assert_abs_diff_eq!((c0 - 1.0).norm(), 0.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn operator_examples() {
        let s = data(1.0);
        let v = s.apply_operator(|_| 1.0, 2.0).unwrap();
        assert_eq!(v, Complex64::new(0.25, 0.0));
        assert_eq!(s.apply_operator(|_| 1.0, 0.0), Err(Error::PoleAtZero));

        for x in [-2.0, 0.5, 3.0] {
            let v = s.apply_operator(|y| s.lorentzian(y), x).unwrap();
            assert_abs_diff_eq!(v.re, s.lorentzian(x), epsilon = 1e-15);
        }
    }

    #[test]
    fn residual_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let sample: Vec<f64> = (0..200).map(|_| rng.gen_range(-10.0..10.0)).collect();
        for u in [0.5, 1.2, 1.9] {
            let s = data(u);
            assert!(s.eigen_residual(EigenIndex(0), &sample).unwrap() < 1e-12);
        }
        let s = data(1.2);
        for n in -20..=20 {
            assert!(s.eigen_residual(EigenIndex(n), &sample).unwrap() < 1e-10);
        }
        assert!(data(1.9).eigen_residual(EigenIndex(7), &sample).unwrap() < 1e-10);
        assert_eq!(
            s.eigen_residual(EigenIndex(1), &[1.0, 0.0]),
            Err(Error::PoleAtZero)
        );
    }
}
