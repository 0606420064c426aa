//! Orbit statistics of `x -> 1/(U - x)` and the analytic invariant density.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::mobius::{self, MapParams, ProjectivePoint, Regime};
use crate::spectral::SpectralData;

/// Longest period checked for by [`sample_orbit`].
pub const MAX_ATOMIC_PERIOD: usize = 64;
/// Return distance below which an orbit counts as periodic.
pub const ATOMIC_TOL: f64 = 1e-12;
/// Distance in `U` from a resonant value that triggers a warning.
pub const RESONANCE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window {
    pub lo: f64,
    pub hi: f64,
    pub bins: usize,
}

impl Window {
    pub fn new(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || lo >= hi {
            return Err(Error::InvalidHistogram("window must satisfy lo < hi"));
        }
        if bins == 0 {
            return Err(Error::InvalidHistogram("bin count must be positive"));
        }
        Ok(Self { lo, hi, bins })
    }

    pub fn bin_width(&self) -> f64 {
        (self.hi - self.lo) / self.bins as f64
    }

    pub fn edge(&self, k: usize) -> f64 {
        if k == self.bins {
            self.hi
        } else {
            self.lo + k as f64 * self.bin_width()
        }
    }

    pub fn center(&self, k: usize) -> f64 {
        self.lo + (k as f64 + 0.5) * self.bin_width()
    }
}

impl Default for Window {
    fn default() -> Self {
        Self {
            lo: -8.0,
            hi: 8.0,
            bins: 200,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConfig {
    pub params: MapParams,
    pub x0: f64,
    pub n_samples: usize,
    pub burn_in: usize,
    pub window: Window,
}

impl OrbitConfig {
    pub fn new(params: MapParams, x0: f64, n_samples: usize) -> Self {
        Self {
            params,
            x0,
            n_samples,
            burn_in: 0,
            window: Window::default(),
        }
    }

    pub fn with_burn_in(mut self, burn_in: usize) -> Self {
        self.burn_in = burn_in;
        self
    }

    pub fn with_window(mut self, window: Window) -> Self {
        self.window = window;
        self
    }
}

/// Binned orbit values. `below` and `above` tally samples outside the window
/// (the point at infinity counts as `above`).
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    pub window: Window,
    pub counts: Vec<u64>,
    pub below: u64,
    pub above: u64,
}

impl Histogram {
    pub fn new(window: Window) -> Self {
        Self {
            window,
            counts: vec![0; window.bins],
            below: 0,
            above: 0,
        }
    }

    pub fn add(&mut self, x: f64) {
        let w = &self.window;
        if x < w.lo {
            self.below += 1;
        } else if x >= w.hi || x.is_nan() {
            self.above += 1;
        } else {
            let k = ((x - w.lo) / w.bin_width()) as usize;
            self.counts[k.min(w.bins - 1)] += 1;
        }
    }

    pub fn outside(&self) -> u64 {
        self.below + self.above
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.outside()
    }

    /// `counts / (N * bin_width)` per bin.
    pub fn densities(&self) -> Vec<f64> {
        let norm = self.total() as f64 * self.window.bin_width();
        self.counts.iter().map(|&c| c as f64 / norm).collect()
    }

    pub fn occupied_bins(&self) -> usize {
        self.counts.iter().filter(|&&c| c > 0).count()
    }
}

/// Result of [`sample_orbit`]: the histogram plus an atomicity flag.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitSample {
    pub histogram: Histogram,
    /// Period of the orbit if it closes within [`MAX_ATOMIC_PERIOD`] steps.
    pub atomic_period: Option<usize>,
    /// Period `n` of a resonant parameter `|U| ≈ 2 cos(π m / n)`, `n <= 64`.
    pub resonance: Option<u32>,
}

impl OrbitSample {
    pub fn is_atomic(&self) -> bool {
        self.atomic_period.is_some()
    }
}

/// Iterates `S` in projective coordinates, discards `burn_in` steps and bins
/// the next `n_samples` values (the first binned value is `S^burn_in x0`).
pub fn sample_orbit(cfg: &OrbitConfig) -> Result<OrbitSample> {
    if !cfg.params.is_elliptic() {
        return Err(Error::OutOfEllipticRange(cfg.params.u()));
    }
    if cfg.n_samples == 0 {
        return Err(Error::InvalidHistogram("n_samples must be at least 1"));
    }
    let s = cfg.params.forward();
    let start = ProjectivePoint::from_real(cfg.x0);
    let mut x = start;
    let mut atomic_period = None;
    for k in 1..=MAX_ATOMIC_PERIOD {
        x = s.apply(x);
        if x.distance(&start) < ATOMIC_TOL {
            atomic_period = Some(k);
            break;
        }
    }

    let mut x = mobius::iterate_direct(cfg.params, start, cfg.burn_in as u64);
    let mut histogram = Histogram::new(cfg.window);
    for _ in 0..cfg.n_samples {
        histogram.add(x.to_real());
        x = s.apply(x);
    }
    Ok(OrbitSample {
        histogram,
        atomic_period,
        resonance: mobius::nearest_resonance(cfg.params, MAX_ATOMIC_PERIOD as u32, RESONANCE_TOL),
    })
}

/// The invariant density; identical to the Lorentzian `L_U`.
pub fn analytic_density(params: MapParams, z: f64) -> Result<f64> {
    SpectralData::new(params).map(|s| s.lorentzian(z))
}

fn cdf(spectral: &SpectralData, z: f64) -> f64 {
    0.5 + ((2.0 * z - spectral.u()) / spectral.width()).atan() / PI
}

/// `1/2 + arctan((2z - U) / sqrt(4 - U^2)) / π`.
pub fn analytic_cdf(params: MapParams, z: f64) -> Result<f64> {
    SpectralData::new(params).map(|s| cdf(&s, z))
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityReport {
    pub histogram: Histogram,
    /// Analytic density at each bin center.
    pub analytic: Vec<f64>,
    /// Largest CDF discrepancy over bin edges, outside mass included.
    pub ks_distance: f64,
    /// Largest density discrepancy over bin centers.
    pub sup_bin_error: f64,
}

/// Compares per-bin probability masses (plus the masses below and above the
/// window) with the analytic distribution. Masses must sum to one.
///
/// Returns `(ks_distance, sup_bin_error, analytic bin-center densities)`.
pub fn compare_binned(
    params: MapParams,
    window: Window,
    below: f64,
    masses: &[f64],
) -> Result<(f64, f64, Vec<f64>)> {
    let spectral = SpectralData::new(params)?;
    if masses.len() != window.bins {
        return Err(Error::InvalidHistogram(
            "mass count does not match bin count",
        ));
    }
    let width = window.bin_width();
    let mut cumulative = below;
    let mut ks = (cumulative - cdf(&spectral, window.lo)).abs();
    let mut sup = 0.0f64;
    let mut analytic = Vec::with_capacity(window.bins);
    for (k, &m) in masses.iter().enumerate() {
        cumulative += m;
        ks = ks.max((cumulative - cdf(&spectral, window.edge(k + 1))).abs());
        let rho = spectral.lorentzian(window.center(k));
        sup = sup.max((m / width - rho).abs());
        analytic.push(rho);
    }
    Ok((ks.min(1.0), sup, analytic))
}

pub fn compare_density(hist: &Histogram, params: MapParams) -> Result<DensityReport> {
    let n = hist.total();
    if n == 0 {
        return Err(Error::InvalidHistogram("empty histogram"));
    }
    let n = n as f64;
    let masses: Vec<f64> = hist.counts.iter().map(|&c| c as f64 / n).collect();
    let (ks_distance, sup_bin_error, analytic) =
        compare_binned(params, hist.window, hist.below as f64 / n, &masses)?;
    Ok(DensityReport {
        histogram: hist.clone(),
        analytic,
        ks_distance,
        sup_bin_error,
    })
}

/// Attracting fixed point of `S` for `|U| > 2`: `1/mu_plus` when `|kappa| < 1`,
/// `1/mu_minus` when `|kappa| > 1`.
pub fn point_attractor(params: MapParams) -> Result<f64> {
    if params.regime() != Regime::Hyperbolic {
        return Err(Error::NotHyperbolic(params.u()));
    }
    let c = mobius::conjugation_data(params);
    let root = if c.kappa.norm() < 1.0 {
        c.mu_plus
    } else {
        c.mu_minus
    };
    Ok(1.0 / root.re)
}

/// Step for the central difference of the inverse map.
pub const DERIVATIVE_STEP: f64 = 1e-6;
/// Largest `|f(F(z)) - z|` accepted as an inverse pair.
pub const INVERSE_TOL: f64 = 1e-8;

/// `max |rho(z) - F'(z) rho(F(z))|` over `sample`, where `F` inverts the
/// forward map `f`. `F'` comes from `derivative` when supplied, otherwise from
/// a central difference with step [`DERIVATIVE_STEP`].
pub fn generalized_residual<Fwd, Inv, Rho>(
    forward: Fwd,
    inverse: Inv,
    density: Rho,
    derivative: Option<&dyn Fn(f64) -> f64>,
    sample: &[f64],
) -> Result<f64>
where
    Fwd: Fn(f64) -> f64,
    Inv: Fn(f64) -> f64,
    Rho: Fn(f64) -> f64,
{
    sample.iter().try_fold(0.0f64, |acc, &z| {
        let pre = inverse(z);
        let mismatch = (forward(pre) - z).abs();
        if mismatch.is_nan() || mismatch > INVERSE_TOL {
            return Err(Error::InverseMismatch { z, error: mismatch });
        }
        let slope = match derivative {
            Some(d) => d(z),
            None => {
                let h = DERIVATIVE_STEP;
                (inverse(z + h) - inverse(z - h)) / (2.0 * h)
            }
        };
        Ok(acc.max((density(z) - slope * density(pre)).abs()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn params(u: f64) -> MapParams {
        MapParams::new(u).unwrap()
    }

    #[test]
    fn period_three_orbit_is_atomic() {
        let cfg = OrbitConfig::new(params(1.0), 2.0, 3000);
        let s = sample_orbit(&cfg).unwrap();
        assert_eq!(s.atomic_period, Some(3));
        assert_eq!(s.resonance, Some(3));
        assert_eq!(s.histogram.occupied_bins(), 3);
        assert_eq!(s.histogram.total(), 3000);
    }

    #[test]
    fn single_sample() {
        let cfg = OrbitConfig::new(params(1.2), 0.3, 1);
        let s = sample_orbit(&cfg).unwrap();
        assert_eq!(s.histogram.total(), 1);
        let w = cfg.window;
        let k = ((0.3 - w.lo) / w.bin_width()) as usize;
        assert_eq!(s.histogram.counts[k], 1);
        assert_eq!(s.atomic_period, None);
    }

    #[test]
    fn generic_orbit_spreads_out() {
        let cfg = OrbitConfig::new(params(1.2), 0.3, 100_000);
        let s = sample_orbit(&cfg).unwrap();
        assert!(!s.is_atomic());
        assert!(s.histogram.occupied_bins() > 190);
        let d = s.histogram.densities();
        let peak = d
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(k, _)| cfg.window.center(k))
            .unwrap();
        assert!((peak - 0.6).abs() < 0.2);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(matches!(
            sample_orbit(&OrbitConfig::new(params(2.5), 0.3, 10)),
            Err(Error::OutOfEllipticRange(_))
        ));
        assert!(sample_orbit(&OrbitConfig::new(params(1.2), 0.3, 0)).is_err());
        assert!(Window::new(1.0, -1.0, 10).is_err());
        assert!(Window::new(-1.0, 1.0, 0).is_err());
    }

    #[test]
    fn density_and_cdf_examples() {
        let p = params(1.2);
        assert_abs_diff_eq!(analytic_density(p, 0.6).unwrap(), 0.3978874, epsilon = 1e-7);
        assert_abs_diff_eq!(analytic_cdf(p, 0.6).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(analytic_cdf(p, 0.0).unwrap(), 0.29517, epsilon = 1e-5);
        assert_abs_diff_eq!(analytic_cdf(p, 1e15).unwrap(), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(analytic_cdf(p, -1e15).unwrap(), 0.0, epsilon = 1e-12);

        let p = params(1.9);
        let z = 1e5;
        let tail = (4.0f64 - 1.9 * 1.9).sqrt() / (2.0 * PI * z * z);
        assert_relative_eq!(analytic_density(p, z).unwrap(), tail, max_relative = 1e-4);
    }

    #[test]
    fn cdf_derivative_is_density() {
        let p = params(-0.7);
        let h = 1e-5;
        for z in [-5.0, -0.35, 0.0, 2.0, 9.0] {
            let fd =
                (analytic_cdf(p, z + h).unwrap() - analytic_cdf(p, z - h).unwrap()) / (2.0 * h);
            assert_relative_eq!(fd, analytic_density(p, z).unwrap(), max_relative = 1e-6);
        }
    }

    #[test]
    fn functional_equation_of_density() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for u in [0.5, -1.2, 1.9] {
            let p = params(u);
            for _ in 0..1000 {
                let z: f64 = rng.gen_range(-20.0..20.0);
                let lhs = analytic_density(p, z).unwrap();
                let rhs = analytic_density(p, u - 1.0 / z).unwrap() / (z * z);
                assert!((lhs - rhs).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn synthetic_exact_masses_have_zero_distance() {
        let p = params(1.2);
        let w = Window::default();
        let s = SpectralData::new(p).unwrap();
        let below = cdf(&s, w.lo);
        let masses: Vec<f64> = (0..w.bins)
            .map(|k| cdf(&s, w.edge(k + 1)) - cdf(&s, w.edge(k)))
            .collect();
        let (ks, _, analytic) = compare_binned(p, w, below, &masses).unwrap();
        assert!(ks < 1e-12);
        assert_eq!(analytic.len(), w.bins);
    }

    #[test]
    fn histogram_bookkeeping() {
        let mut h = Histogram::new(Window::new(0.0, 1.0, 4).unwrap());
        for x in [-1.0, 0.0, 0.3, 0.99, 1.0, f64::INFINITY] {
            h.add(x);
        }
        assert_eq!(h.counts, vec![1, 1, 0, 1]);
        assert_eq!((h.below, h.above), (1, 2));
        assert_eq!(h.total(), 6);
    }

    #[test]
    fn point_attractor_examples() {
        let golden = (3.0 - 5f64.sqrt()) / 2.0;
        assert_abs_diff_eq!(
            point_attractor(params(3.0)).unwrap(),
            golden,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            point_attractor(params(-3.0)).unwrap(),
            -golden,
            epsilon = 1e-15
        );
        assert!((point_attractor(params(2.0001)).unwrap() - 1.0).abs() < 0.02);
        assert_eq!(point_attractor(params(1.5)), Err(Error::NotHyperbolic(1.5)));
    }

    #[test]
    fn generalized_residual_examples() {
        let u = 1.2;
        let p = params(u);
        let s = SpectralData::new(p).unwrap();
        let sample: Vec<f64> = (0..50).map(|k| -5.0 + 0.2 * k as f64 + 0.01).collect();

        let r = generalized_residual(
            |x| p.step(x),
            |z| p.step_back(z),
            |z| s.lorentzian(z),
            None,
            &sample,
        )
        .unwrap();
        assert!(r < 1e-6);

        let r = generalized_residual(|x| x, |z| z, |z: f64| (-z * z).exp(), None, &sample).unwrap();
        assert!(r < 1e-9);

        let r = generalized_residual(
            |x| p.step(x),
            |z| p.step_back(z),
            |z: f64| (-z * z).exp(),
            None,
            &sample,
        )
        .unwrap();
        assert!(r > 0.01);

        let exact = |z: f64| 1.0 / (z * z);
        let r = generalized_residual(
            |x| p.step(x),
            |z| p.step_back(z),
            |z| s.lorentzian(z),
            Some(&exact),
            &sample,
        )
        .unwrap();
        assert!(r < 1e-14);

        let err = generalized_residual(|x| x + 1.0, |z| z, |z| z, None, &[0.5]);
        assert!(matches!(err, Err(Error::InverseMismatch { .. })));
    }
}
