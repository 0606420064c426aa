//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Every export returns plain numbers or `Vec<f64>` (a `Float64Array` in
//! JavaScript), so the same functions run and are tested natively.

use fracmap_core::attractor::{self, OrbitConfig, Window};
use fracmap_core::expansion::{self, QuadratureGrid, TestFunction};
use fracmap_core::{EigenIndex, MapParams, SpectralData};
use wasm_bindgen::prelude::*;

fn elliptic(u: f64) -> Result<MapParams, String> {
    let params = MapParams::new(u).map_err(|e| e.to_string())?;
    if !params.is_elliptic() {
        return Err(format!("U = {u} must satisfy 0 < |U| < 2"));
    }
    Ok(params)
}

fn linspace(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let steps = points.max(2) - 1;
    (0..=steps)
        .map(|k| lo + (hi - lo) * k as f64 / steps as f64)
        .collect()
}

/// Orbit histogram next to the analytic density.
#[wasm_bindgen]
pub struct DensityPlot {
    centers: Vec<f64>,
    empirical: Vec<f64>,
    analytic: Vec<f64>,
    ks_distance: f64,
    atomic_period: u32,
}

#[wasm_bindgen]
impl DensityPlot {
    #[wasm_bindgen(getter)]
    pub fn centers(&self) -> Vec<f64> {
        self.centers.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn empirical(&self) -> Vec<f64> {
        self.empirical.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn analytic(&self) -> Vec<f64> {
        self.analytic.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn ks_distance(&self) -> f64 {
        self.ks_distance
    }

    /// Period of the orbit, 0 when it is not periodic.
    #[wasm_bindgen(getter)]
    pub fn atomic_period(&self) -> u32 {
        self.atomic_period
    }
}

#[wasm_bindgen]
pub fn density(
    u: f64,
    x0: f64,
    n: usize,
    bins: usize,
    lo: f64,
    hi: f64,
) -> Result<DensityPlot, String> {
    let params = elliptic(u)?;
    let window = Window::new(lo, hi, bins).map_err(|e| e.to_string())?;
    let cfg = OrbitConfig::new(params, x0, n).with_window(window);
    let sample = attractor::sample_orbit(&cfg).map_err(|e| e.to_string())?;
    let cmp = attractor::compare_density(&sample.histogram, params).map_err(|e| e.to_string())?;
    Ok(DensityPlot {
        centers: (0..bins).map(|k| window.center(k)).collect(),
        empirical: sample.histogram.densities(),
        analytic: cmp.analytic,
        ks_distance: cmp.ks_distance,
        atomic_period: sample.atomic_period.map_or(0, |p| p as u32),
    })
}

/// A function and its truncated eigenfunction expansion.
#[wasm_bindgen]
pub struct ExpansionPlot {
    x: Vec<f64>,
    target: Vec<f64>,
    reconstruction: Vec<f64>,
    coefficient_moduli: Vec<f64>,
    l1_error: f64,
}

#[wasm_bindgen]
impl ExpansionPlot {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    /// Real part of the function.
    #[wasm_bindgen(getter)]
    pub fn target(&self) -> Vec<f64> {
        self.target.clone()
    }

    /// Real part of the reconstruction.
    #[wasm_bindgen(getter)]
    pub fn reconstruction(&self) -> Vec<f64> {
        self.reconstruction.clone()
    }

    /// `|C_n|` for `n = -n_max..=n_max`.
    #[wasm_bindgen(getter)]
    pub fn coefficient_moduli(&self) -> Vec<f64> {
        self.coefficient_moduli.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn l1_error(&self) -> f64 {
        self.l1_error
    }
}

#[wasm_bindgen]
pub fn expand(
    u: f64,
    function: &str,
    n_max: u32,
    lo: f64,
    hi: f64,
    points: usize,
) -> Result<ExpansionPlot, String> {
    let params = elliptic(u)?;
    let function: TestFunction = function
        .parse()
        .map_err(|e: expansion::UnknownFunction| e.to_string())?;
    let spectral = SpectralData::new(params).map_err(|e| e.to_string())?;
    let f = |x: f64| function.eval(&spectral, x);
    let n_max = n_max.min(256) as i32;
    let grid = QuadratureGrid::for_harmonics(params, n_max).map_err(|e| e.to_string())?;
    let coeffs =
        expansion::compute_coefficients(params, f, n_max, &grid).map_err(|e| e.to_string())?;
    let x = linspace(lo, hi, points);
    Ok(ExpansionPlot {
        target: x.iter().map(|&x| f(x).re).collect(),
        reconstruction: x.iter().map(|&x| coeffs.reconstruct(x).re).collect(),
        coefficient_moduli: coeffs.iter().map(|(_, c)| c.norm()).collect(),
        l1_error: expansion::l1_distance(f, &coeffs),
        x,
    })
}

/// One eigenfunction on a grid, with its envelope and eigenvalue.
#[wasm_bindgen]
pub struct EigenPlot {
    x: Vec<f64>,
    re: Vec<f64>,
    im: Vec<f64>,
    envelope: Vec<f64>,
    eigenvalue_arg: f64,
    discontinuity: f64,
    max_residual: f64,
}

#[wasm_bindgen]
impl EigenPlot {
    #[wasm_bindgen(getter)]
    pub fn x(&self) -> Vec<f64> {
        self.x.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn re(&self) -> Vec<f64> {
        self.re.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn im(&self) -> Vec<f64> {
        self.im.clone()
    }

    /// The invariant Lorentzian, which is `|sigma_n|`.
    #[wasm_bindgen(getter)]
    pub fn envelope(&self) -> Vec<f64> {
        self.envelope.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn eigenvalue_arg(&self) -> f64 {
        self.eigenvalue_arg
    }

    /// Where the phase jumps by a multiple of 2 pi.
    #[wasm_bindgen(getter)]
    pub fn discontinuity(&self) -> f64 {
        self.discontinuity
    }

    /// Largest `|P sigma_n - lambda_n sigma_n|` on the grid.
    #[wasm_bindgen(getter)]
    pub fn max_residual(&self) -> f64 {
        self.max_residual
    }
}

#[wasm_bindgen]
pub fn eigen(u: f64, n: i32, lo: f64, hi: f64, points: usize) -> Result<EigenPlot, String> {
    let params = elliptic(u)?;
    let s = SpectralData::new(params).map_err(|e| e.to_string())?;
    let index = EigenIndex(n);
    let lambda = s.eigenvalue(index);
    let x: Vec<f64> = linspace(lo, hi, points);
    let sigma: Vec<_> = x.iter().map(|&x| s.eigenfunction(index, x)).collect();
    let mut max_residual = 0.0f64;
    for (&x, &v) in x.iter().zip(&sigma).filter(|(&x, _)| x != 0.0) {
        let image = s
            .apply_operator(|y| s.eigenfunction(index, y), x)
            .map_err(|e| e.to_string())?;
        max_residual = max_residual.max((image - lambda * v).norm());
    }
    Ok(EigenPlot {
        re: sigma.iter().map(|v| v.re).collect(),
        im: sigma.iter().map(|v| v.im).collect(),
        envelope: x.iter().map(|&x| s.lorentzian(x)).collect(),
        eigenvalue_arg: lambda.arg(),
        discontinuity: s.x0_disc,
        max_residual,
        x,
    })
}
