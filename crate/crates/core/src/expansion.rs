//! Expansion of real-line functions in the eigenbasis `{sigma_n}`.
//!
//! `C_n = ∫ f(x) exp(-i n theta(x)) dx`. Since `theta` is monotone with
//! `|dtheta/dx| = 2π L_U(x)`, substituting `t = theta(x)` turns the integral
//! into the circle average `(1/2π) ∮ f(x(t)) / L_U(x(t)) exp(-i n t) dt`,
//! whose integrand is smooth and periodic. A half-step-offset trapezoid rule
//! on that circle is spectrally accurate and never samples `x = ∞`.

use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::mobius::MapParams;
use crate::spectral::{EigenIndex, SpectralData};

pub const DEFAULT_NODE_COUNT: usize = 4096;
pub const DEFAULT_N_MAX: i32 = 64;

/// Reporting window for [`expansion_error`].
pub const ERROR_WINDOW: (f64, f64) = (-8.0, 8.0);
pub const ERROR_GRID_POINTS: usize = 2001;

/// Abscissa used for the decay check, and the largest tail mass tolerated there.
const TAIL_PROBE: f64 = 1e8;
const TAIL_TOL: f64 = 1e-6;

/// Uniform nodes in the phase coordinate together with their real-line preimages.
#[derive(Debug, Clone)]
pub struct QuadratureGrid {
    spectral: SpectralData,
    theta_nodes: Vec<f64>,
    x_nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureGrid {
    /// `node_count` must be a power of two.
    pub fn new(params: MapParams, node_count: usize) -> Result<Self> {
        assert!(
            node_count.is_power_of_two(),
            "node count must be a power of two, got {node_count}"
        );
        let spectral = SpectralData::new(params)?;
        let step = TAU / node_count as f64;
        let r = spectral.r;
        let r2 = r * r;
        // theta sweeps (phi - 2π, phi) for U > 0 and (phi, phi + 2π) for U < 0;
        // theta = phi is x = ∞ and sits half a step from the nearest node.
        let sign = spectral.u().signum();
        let mut theta_nodes = Vec::with_capacity(node_count);
        let mut x_nodes = Vec::with_capacity(node_count);
        let mut weights = Vec::with_capacity(node_count);
        for j in 0..node_count {
            let theta = spectral.phi - sign * (j as f64 + 0.5) * step;
            let w = Complex64::from_polar(1.0, theta) / r2;
            let x = (w * r - r.conj()) / (w - 1.0);
            debug_assert!(x.im.abs() < 1e-10 * x.re.abs().max(1.0));
            theta_nodes.push(theta);
            x_nodes.push(x.re);
            weights.push(1.0 / (node_count as f64 * spectral.lorentzian(x.re)));
        }
        Ok(Self {
            spectral,
            theta_nodes,
            x_nodes,
            weights,
        })
    }

    /// Grid of at least the default size and at least `8 n_max` nodes.
    pub fn for_harmonics(params: MapParams, n_max: i32) -> Result<Self> {
        let wanted = (8 * n_max.unsigned_abs() as usize).next_power_of_two();
        Self::new(params, wanted.max(DEFAULT_NODE_COUNT))
    }

    pub fn node_count(&self) -> usize {
        self.x_nodes.len()
    }

    pub fn theta_nodes(&self) -> &[f64] {
        &self.theta_nodes
    }

    pub fn x_nodes(&self) -> &[f64] {
        &self.x_nodes
    }

    /// `|dx/dtheta| * dtheta` at each node.
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn spectral(&self) -> &SpectralData {
        &self.spectral
    }

    /// `∫ f dx` by the circle rule.
    pub fn integrate<F, T>(&self, f: F) -> Complex64
    where
        F: Fn(f64) -> T,
        T: Into<Complex64>,
    {
        self.x_nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| f(x).into() * w)
            .sum()
    }
}

/// Coefficients `C_n` for `n` in `-n_max..=n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientSet {
    spectral: SpectralData,
    n_max: i32,
    coeffs: Vec<Complex64>,
}

impl CoefficientSet {
    /// Builds a set from explicit `(n, C_n)` pairs; `n_max` is the largest `|n|`.
    pub fn from_terms(params: MapParams, terms: &[(i32, Complex64)]) -> Result<Self> {
        let spectral = SpectralData::new(params)?;
        let n_max = terms.iter().map(|(n, _)| n.abs()).max().unwrap_or(0);
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (2 * n_max + 1) as usize];
        for &(n, c) in terms {
            coeffs[(n + n_max) as usize] += c;
        }
        Ok(Self {
            spectral,
            n_max,
            coeffs,
        })
    }

    pub fn u(&self) -> f64 {
        self.spectral.u()
    }

    pub fn n_max(&self) -> i32 {
        self.n_max
    }

    /// `C_n`, zero outside the stored range.
    pub fn get(&self, n: i32) -> Complex64 {
        if n.abs() > self.n_max {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n + self.n_max) as usize]
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, Complex64)> + '_ {
        (-self.n_max..=self.n_max).zip(self.coeffs.iter().copied())
    }

    /// Same coefficients restricted to `|n| <= n_max`.
    pub fn truncated(&self, n_max: i32) -> Self {
        let n_max = n_max.clamp(0, self.n_max);
        let lo = (self.n_max - n_max) as usize;
        Self {
            spectral: self.spectral,
            n_max,
            coeffs: self.coeffs[lo..lo + (2 * n_max + 1) as usize].to_vec(),
        }
    }

    /// `sum_n C_n sigma_n(x)`.
    pub fn reconstruct(&self, x: f64) -> Complex64 {
        let s = &self.spectral;
        let theta = s.theta_continuous(x);
        let series: Complex64 = self
            .iter()
            .map(|(n, c)| c * Complex64::from_polar(1.0, (n as f64 * theta).rem_euclid(TAU)))
            .sum();
        series * s.lorentzian(x)
    }
}

/// Periodic-trapezoid evaluation of `C_n = ∫ f(x) exp(-i n theta(x)) dx`.
pub fn compute_coefficients<F, T>(
    params: MapParams,
    f: F,
    n_max: i32,
    grid: &QuadratureGrid,
) -> Result<CoefficientSet>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    assert!(n_max >= 0, "n_max must be non-negative");
    if grid.spectral.params() != params {
        return Err(Error::ParameterMismatch);
    }
    check_decay(&f)?;

    let weighted: Vec<Complex64> = grid
        .x_nodes
        .iter()
        .zip(&grid.weights)
        .map(|(&x, &w)| f(x).into() * w)
        .collect();
    if let Some(bad) = weighted
        .iter()
        .find(|v| !v.re.is_finite() || !v.im.is_finite())
    {
        return Err(Error::NonIntegrable(bad.norm()));
    }

    let coeffs = (-n_max..=n_max)
        .map(|n| {
            weighted
                .iter()
                .zip(&grid.theta_nodes)
                .map(|(v, &t)| v * Complex64::from_polar(1.0, (-(n as f64) * t).rem_euclid(TAU)))
                .sum()
        })
        .collect();
    Ok(CoefficientSet {
        spectral: grid.spectral,
        n_max,
        coeffs,
    })
}

/// Rough tail mass `X (|f(X)| + |f(-X)|)` at `X = 1e8`; exceeds the tolerance
/// for anything decaying slower than about `1/x^2`.
fn check_decay<F, T>(f: &F) -> Result<()>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    let tail = TAIL_PROBE * (f(TAIL_PROBE).into().norm() + f(-TAIL_PROBE).into().norm());
    if !tail.is_finite() || tail > TAIL_TOL {
        return Err(Error::NonIntegrable(tail));
    }
    Ok(())
}

/// `sum_n C_n sigma_n(x)` over the stored index range.
pub fn reconstruct(params: MapParams, coeffs: &CoefficientSet, x: f64) -> Result<Complex64> {
    if coeffs.spectral.params() != params {
        return Err(Error::ParameterMismatch);
    }
    if x == coeffs.spectral.x0_disc {
        return Err(Error::AtDiscontinuity(x));
    }
    Ok(coeffs.reconstruct(x))
}

/// Trapezoid L1 distance on `[-8, 8]` (2001 points) between `f` and a reconstruction.
pub fn l1_distance<F, T>(f: F, coeffs: &CoefficientSet) -> f64
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    let (lo, hi) = ERROR_WINDOW;
    let m = ERROR_GRID_POINTS - 1;
    let h = (hi - lo) / m as f64;
    let total: f64 = (0..=m)
        .map(|k| {
            let x = lo + k as f64 * h;
            let weight = if k == 0 || k == m { 0.5 } else { 1.0 };
            weight * (f(x).into() - coeffs.reconstruct(x)).norm()
        })
        .sum();
    total * h
}

/// L1 error of the `n_max`-term expansion of `f` on the reporting window.
pub fn expansion_error<F, T>(params: MapParams, f: F, n_max: i32) -> Result<f64>
where
    F: Fn(f64) -> T,
    T: Into<Complex64>,
{
    let grid = QuadratureGrid::for_harmonics(params, n_max)?;
    let coeffs = compute_coefficients(params, &f, n_max, &grid)?;
    Ok(l1_distance(f, &coeffs))
}

/// Built-in test functions exposed to the command line and the browser demo.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TestFunction {
    /// `exp(-x^2)`.
    Gaussian,
    /// `L_{U'}` with `U' = -U/2`: the invariant density of a different map.
    LorentzShifted,
    /// `exp(-1/(1 - x^2))` on `(-1, 1)`, zero elsewhere.
    Bump,
    /// `1 / (1 + x^4)`.
    QuarticDecay,
    /// The eigenfunction `sigma_n`.
    Sigma(i32),
}

impl TestFunction {
    pub fn eval(&self, spectral: &SpectralData, x: f64) -> Complex64 {
        match *self {
            TestFunction::Gaussian => (-x * x).exp().into(),
            TestFunction::LorentzShifted => {
                let v = -spectral.u() / 2.0;
                ((4.0 - v * v).sqrt() / TAU / (x * x - v * x + 1.0)).into()
            }
            TestFunction::Bump => {
                if x.abs() < 1.0 {
                    (-1.0 / (1.0 - x * x)).exp().into()
                } else {
                    0.0.into()
                }
            }
            TestFunction::QuarticDecay => (1.0 / (1.0 + x.powi(4))).into(),
            TestFunction::Sigma(n) => spectral.eigenfunction(EigenIndex(n), x),
        }
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, TestFunction::Sigma(n) if *n != 0)
    }
}

impl fmt::Display for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TestFunction::Gaussian => f.write_str("gaussian"),
            TestFunction::LorentzShifted => f.write_str("lorentz-shifted"),
            TestFunction::Bump => f.write_str("bump"),
            TestFunction::QuarticDecay => f.write_str("quartic"),
            TestFunction::Sigma(n) => write!(f, "sigma:{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownFunction(pub String);

impl fmt::Display for UnknownFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown test function {:?} (expected gaussian, lorentz-shifted, bump, quartic or sigma:<n>)",
            self.0
        )
    }
}

impl std::error::Error for UnknownFunction {}

impl FromStr for TestFunction {
    type Err = UnknownFunction;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "gaussian" => Ok(TestFunction::Gaussian),
            "lorentz-shifted" => Ok(TestFunction::LorentzShifted),
            "bump" => Ok(TestFunction::Bump),
            "quartic" => Ok(TestFunction::QuarticDecay),
            _ => s
                .strip_prefix("sigma:")
                .and_then(|n| n.parse().ok())
                .map(TestFunction::Sigma)
                .ok_or_else(|| UnknownFunction(s.to_owned())),
        }
    }
}
