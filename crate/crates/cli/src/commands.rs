//! Subcommand implementations. Each builds a [`Report`] from the core library.

use std::f64::consts::{PI, TAU};

use fracmap_core::attractor::{self, OrbitConfig, Window};
use fracmap_core::expansion::{self, CoefficientSet, QuadratureGrid, TestFunction};
use fracmap_core::mobius::{self, MobiusMatrix, ProjectivePoint, Regime};
use fracmap_core::{EigenIndex, Error, MapParams, SpectralData};
use num_complex::Complex64;
use serde_json::Value;

use crate::report::{num, Report, Table};
use crate::{
    Command, CyclesArgs, DensityArgs, EigenArgs, ExpandArgs, NormalizeArgs, OrbitArgs,
    ResidualsArgs, Status,
};

pub struct Outcome {
    pub report: Option<Report>,
    pub messages: Vec<String>,
    pub status: Status,
}

impl Outcome {
    fn ok(report: Report) -> Self {
        Self {
            report: Some(report),
            messages: Vec::new(),
            status: Status::Success,
        }
    }

    fn fail(status: Status, message: String) -> Self {
        Self {
            report: None,
            messages: vec![format!("fracmap: {message}")],
            status,
        }
    }
}

impl From<Error> for Outcome {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::ComplexResidue(_) => Status::InvariantFailure,
            _ => Status::InvalidInput,
        };
        Outcome::fail(status, e.to_string())
    }
}

pub fn run(command: &Command) -> Outcome {
    let result = match command {
        Command::Density(a) => run_density(a),
        Command::Orbit(a) => run_orbit(a),
        Command::Expand(a) => run_expand(a),
        Command::Eigen(a) => run_eigen(a),
        Command::Cycles(a) => run_cycles(a),
        Command::Normalize(a) => run_normalize(a),
        Command::Residuals(a) => run_residuals(a),
    };
    result.unwrap_or_else(Outcome::from)
}

fn elliptic(u: f64, command: &str) -> Result<MapParams, Box<Outcome>> {
    let params = MapParams::new(u).map_err(|e| Box::new(Outcome::from(e)))?;
    if params.regime() == Regime::Hyperbolic {
        return Err(Box::new(Outcome::fail(
            Status::InvalidInput,
            format!(
                "{command} needs 0 < |U| < 2 (U = {u} is hyperbolic; its orbits collapse onto a \
                 fixed point, see `fracmap orbit`)"
            ),
        )));
    }
    Ok(params)
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return Ok(*o),
        }
    };
}

/// Points `lo + (k + 1/2) h` strictly inside the window.
fn midpoints(window: (f64, f64), count: usize) -> impl Iterator<Item = f64> {
    let (lo, hi) = window;
    let h = (hi - lo) / count as f64;
    (0..count).map(move |k| lo + (k as f64 + 0.5) * h)
}

/// Deterministic low-discrepancy sample of `[lo, hi)`.
fn golden_points(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    const G: f64 = 0.618_033_988_749_894_8;
    (0..count)
        .map(|k| lo + (hi - lo) * (0.5 + G * (k as f64 + 1.0)).fract())
        .collect()
}

pub fn run_density(a: &DensityArgs) -> Result<Outcome, Error> {
    let params = tri!(elliptic(a.u, "density"));
    if a.n == 0 {
        return Ok(Outcome::fail(
            Status::InvalidInput,
            "--n must be at least 1".into(),
        ));
    }
    let window = Window::new(a.window.0, a.window.1, a.bins)?;
    let cfg = OrbitConfig::new(params, a.x0, a.n)
        .with_burn_in(a.burn_in)
        .with_window(window);
    let sample = attractor::sample_orbit(&cfg)?;
    let cmp = attractor::compare_density(&sample.histogram, params)?;

    let mut table = Table::new(
        "rows",
        &["bin_center", "empirical_density", "analytic_density"],
    );
    for ((k, d), rho) in sample
        .histogram
        .densities()
        .into_iter()
        .enumerate()
        .zip(&cmp.analytic)
    {
        table.push(vec![num(window.center(k)), num(d), num(*rho)]);
    }
    let mut report = Report::new("density", table);
    report.meta("u", num(a.u));
    report.meta("x0", num(a.x0));
    report.meta("bins", a.bins);
    report.meta("window_lo", num(window.lo));
    report.meta("window_hi", num(window.hi));
    report.footer("ks_distance", num(cmp.ks_distance));
    report.footer("sup_bin_error", num(cmp.sup_bin_error));
    report.footer("n", a.n);
    report.footer("burn_in", a.burn_in);
    report.footer("below", sample.histogram.below);
    report.footer("above", sample.histogram.above);
    report.footer(
        "atomic_period",
        sample.atomic_period.map_or(Value::Null, Value::from),
    );
    report.footer(
        "resonance",
        sample.resonance.map_or(Value::Null, Value::from),
    );

    let mut outcome = Outcome::ok(report);
    if let Some(p) = sample.atomic_period {
        outcome.status = Status::Degenerate;
        outcome.messages.push(format!(
            "fracmap: warning: atomic orbit (period {p}); the histogram is a sum of point masses"
        ));
    } else if let Some(n) = sample.resonance {
        outcome.status = Status::Degenerate;
        outcome.messages.push(format!(
            "fracmap: warning: U is within 1e-9 of a period-{n} resonance; the orbit \
             equidistributes too slowly for a meaningful density"
        ));
    }
    Ok(outcome)
}

pub fn run_orbit(a: &OrbitArgs) -> Result<Outcome, Error> {
    let params = MapParams::new(a.u)?;
    let s = params.forward();
    let x0 = ProjectivePoint::from_real(a.x0);
    let mut table = Table::new("rows", &["k", "direct", "closed_form", "deviation"]);
    let mut x = x0;
    let mut max_dev = 0.0f64;
    let mut last = (x0, x0);
    for k in 0..=a.n {
        let closed = mobius::iterate_closed_form(params, x0, k)?;
        let dev = x.distance(&closed);
        max_dev = max_dev.max(dev);
        table.push(vec![
            k.into(),
            num(x.to_real()),
            num(closed.to_real()),
            num(dev),
        ]);
        last = (x, closed);
        x = s.apply(x);
    }
    let mut report = Report::new("orbit", table);
    report.meta("u", num(a.u));
    report.meta("x0", num(a.x0));
    report.meta("n", a.n);
    report.footer("max_deviation", num(max_dev));
    report.footer("final_direct", num(last.0.to_real()));
    report.footer("final_closed_form", num(last.1.to_real()));
    report.footer("regime", regime_name(params));
    report.footer(
        "point_attractor",
        attractor::point_attractor(params).map_or(Value::Null, num),
    );
    Ok(Outcome::ok(report))
}

fn regime_name(p: MapParams) -> &'static str {
    match p.regime() {
        Regime::Elliptic => "elliptic",
        Regime::Hyperbolic => "hyperbolic",
    }
}

pub fn run_expand(a: &ExpandArgs) -> Result<Outcome, Error> {
    let params = tri!(elliptic(a.u, "expand"));
    let function: TestFunction = match a.function.parse() {
        Ok(f) => f,
        Err(e) => return Ok(Outcome::fail(Status::InvalidInput, format!("{e}"))),
    };
    let n_max = a.n_max as i32;
    let spectral = SpectralData::new(params)?;
    let f = |x: f64| function.eval(&spectral, x);
    let grid = QuadratureGrid::for_harmonics(params, n_max)?;
    let coeffs = expansion::compute_coefficients(params, f, n_max, &grid)?;
    let half = coeffs.truncated(n_max / 2);

    let mut table = Table::new(
        "rows",
        &[
            "x",
            "f_re",
            "f_im",
            "recon_re",
            "recon_im",
            "recon_half_re",
            "recon_half_im",
        ],
    );
    let (lo, hi) = a.window;
    let steps = a.points.max(2) - 1;
    for k in 0..=steps {
        let x = lo + (hi - lo) * k as f64 / steps as f64;
        let fx = f(x);
        let full = coeffs.reconstruct(x);
        let part = half.reconstruct(x);
        table.push(vec![
            num(x),
            num(fx.re),
            num(fx.im),
            num(full.re),
            num(full.im),
            num(part.re),
            num(part.im),
        ]);
    }
    let mut coeff_table = Table::new("coefficients", &["n", "re", "im"]);
    for (n, c) in coeffs.iter() {
        coeff_table.push(vec![n.into(), num(c.re), num(c.im)]);
    }

    let mut report = Report::new("expand", table);
    report.meta("u", num(a.u));
    report.meta("fn", function.to_string());
    report.extra.push(coeff_table);
    report.footer("l1_error", num(expansion::l1_distance(f, &coeffs)));
    report.footer("l1_error_half", num(expansion::l1_distance(f, &half)));
    report.footer("n_max", a.n_max);
    report.footer("node_count", grid.node_count());
    Ok(Outcome::ok(report))
}

pub fn run_eigen(a: &EigenArgs) -> Result<Outcome, Error> {
    let params = tri!(elliptic(a.u, "eigen"));
    let s = SpectralData::new(params)?;
    let n = EigenIndex(a.n);
    let lambda = s.eigenvalue(n);
    let mut table = Table::new(
        "rows",
        &[
            "x",
            "lorentzian",
            "sigma_re",
            "sigma_im",
            "pole_form_re",
            "pole_form_im",
            "operator_re",
            "operator_im",
            "residual",
        ],
    );
    let mut worst = 0.0f64;
    for x in midpoints(a.window, a.points).filter(|&x| x != 0.0) {
        let sigma = s.eigenfunction(n, x);
        let pole = s.eigenfunction_pole_form(n, x);
        let image = s.apply_operator(|y| s.eigenfunction(n, y), x)?;
        let residual = (image - lambda * sigma).norm();
        worst = worst.max(residual);
        table.push(vec![
            num(x),
            num(s.lorentzian(x)),
            num(sigma.re),
            num(sigma.im),
            num(pole.re),
            num(pole.im),
            num(image.re),
            num(image.im),
            num(residual),
        ]);
    }
    let c = s.pole_form_constant(n);
    let mut report = Report::new("eigen", table);
    report.meta("u", num(a.u));
    report.meta("n", a.n);
    report.footer("phi", num(s.phi));
    report.footer("eigenvalue_re", num(lambda.re));
    report.footer("eigenvalue_im", num(lambda.im));
    report.footer("r_re", num(s.r.re));
    report.footer("r_im", num(s.r.im));
    report.footer("x0_disc", num(s.x0_disc));
    report.footer("pole_constant_re", num(c.re));
    report.footer("pole_constant_im", num(c.im));
    report.footer("max_residual", num(worst));
    Ok(Outcome::ok(report))
}

/// Smallest `k <= limit` for which `S^k` is a scalar matrix to `tol`.
fn verified_period(params: MapParams, limit: u32, tol: f64) -> Option<u32> {
    let s = params.forward();
    let mut m = MobiusMatrix::IDENTITY;
    (1..=limit).find(|_| {
        m = (m * s).normalized();
        m.scalar_deviation() < tol
    })
}

pub fn run_cycles(a: &CyclesArgs) -> Result<Outcome, Error> {
    let (from, to) = a.n;
    let mut table = Table::new(
        "rows",
        &["n", "u", "u_squared", "scalar_deviation", "verified_period"],
    );
    let mut worst = 0.0f64;
    for n in from..=to {
        let params = mobius::cycle_parameter(n)?;
        let dev = params.forward().pow(n as u64).scalar_deviation();
        worst = worst.max(dev);
        let u = params.u();
        table.push(vec![
            n.into(),
            num(u),
            num(u * u),
            num(dev),
            verified_period(params, n, 1e-12).map_or(Value::Null, Value::from),
        ]);
    }
    let mut report = Report::new("cycles", table);
    report.footer("max_scalar_deviation", num(worst));
    Ok(Outcome::ok(report))
}

pub fn run_normalize(a: &NormalizeArgs) -> Result<Outcome, Error> {
    let [m11, m12, m21, m22] = a.matrix;
    let m = MobiusMatrix::new(m11, m12, m21, m22)?;
    let (params, conj) = mobius::normalize(&m)?;
    let mut table = Table::new("rows", &["k", "x", "mapped", "canonical", "deviation"]);
    let x0 = ProjectivePoint::from_real(a.x0);
    let (mut x, mut y) = (x0, conj.apply_projective(x0));
    let s = params.forward();
    let mut worst = 0.0f64;
    for k in 0..=a.n {
        let mapped = conj.apply_projective(x);
        let dev = mapped.distance(&y);
        worst = worst.max(dev);
        table.push(vec![
            k.into(),
            num(x.to_real()),
            num(mapped.to_real()),
            num(y.to_real()),
            num(dev),
        ]);
        x = m.apply(x);
        y = s.apply(y);
    }
    let mut report = Report::new("normalize", table);
    for (key, v) in [("m11", m11), ("m12", m12), ("m21", m21), ("m22", m22)] {
        report.meta(key, num(v));
    }
    report.footer("u", num(params.u()));
    report.footer("k1", num(conj.k1));
    report.footer("k2", num(conj.k2));
    report.footer("regime", regime_name(params));
    report.footer("max_deviation", num(worst));
    Ok(Outcome::ok(report))
}

struct Check {
    name: &'static str,
    value: f64,
    threshold: f64,
    /// `value > threshold` passes instead of `value < threshold`.
    lower_bound: bool,
}

impl Check {
    fn below(name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold,
            lower_bound: false,
        }
    }

    fn above(name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold,
            lower_bound: true,
        }
    }

    fn passed(&self) -> bool {
        if self.lower_bound {
            self.value > self.threshold
        } else {
            self.value < self.threshold
        }
    }
}

fn wrap_angle(a: f64) -> f64 {
    (a + PI).rem_euclid(TAU) - PI
}

fn mobius_checks(params: MapParams) -> Result<Vec<Check>, Error> {
    let u = params.u();
    let pts = golden_points(100, -5.0, 5.0);
    let (s, t) = (params.forward(), params.backward());

    let inverse = pts.iter().fold(0.0f64, |acc, &x| {
        let p = ProjectivePoint::from_real(x);
        acc.max(t.apply(s.apply(p)).distance(&p))
    });

    let mut closed = 0.0f64;
    for &x in pts.iter().take(20) {
        let x0 = ProjectivePoint::from_real(x);
        for n in [1, 7, 100, 1000] {
            let d = mobius::iterate_direct(params, x0, n);
            let c = mobius::iterate_closed_form(params, x0, n)?;
            closed = closed.max(d.distance(&c));
        }
    }

    let conj = mobius::conjugation_data(params);
    let conjugation = pts
        .iter()
        .map(|&x| {
            let y = conj.y(x);
            (conj.y(params.step(x)) - conj.kappa * y).norm() / (1.0 + y.norm())
        })
        .filter(|e| e.is_finite())
        .fold(0.0f64, f64::max);

    let vieta = (conj.mu_plus * conj.mu_minus - 1.0).norm();
    let kappa_modulus = (conj.kappa.norm() - 1.0).abs();

    let mut checks = vec![
        Check::below("inverse_pairing", inverse, 1e-12),
        Check::below("closed_form_equivalence", closed, 1e-9),
        Check::below("conjugation_to_rotation", conjugation, 1e-9),
        Check::below("fixed_point_product", vieta, 1e-12),
    ];
    match params.regime() {
        Regime::Elliptic => {
            checks.push(Check::below("multiplier_unimodular", kappa_modulus, 1e-15))
        }
        Regime::Hyperbolic => {
            checks.push(Check::above("multiplier_off_circle", kappa_modulus, 0.0));
            let target = attractor::point_attractor(params)?;
            let repelling = 1.0 / attractor::point_attractor(MapParams::new(u)?)?;
            let worst = pts
                .iter()
                .filter(|&&x| (x - repelling).abs() > 1e-3)
                .map(|&x| {
                    let p = ProjectivePoint::from_real(x);
                    (mobius::iterate_direct(params, p, 200).to_real() - target).abs()
                })
                .fold(0.0f64, f64::max);
            checks.push(Check::below("point_attractor_convergence", worst, 1e-9));
        }
    }
    Ok(checks)
}

fn spectral_checks(params: MapParams) -> Result<Vec<Check>, Error> {
    let u = params.u();
    let s = SpectralData::new(params)?;
    let sample: Vec<f64> = golden_points(200, -10.0, 10.0)
        .into_iter()
        .filter(|&x| x != 0.0)
        .collect();

    let mut eigen = 0.0f64;
    let mut modulus = 0.0f64;
    for n in -20..=20 {
        eigen = eigen.max(s.eigen_residual(EigenIndex(n), &sample)?);
        for &x in &sample {
            modulus =
                modulus.max((s.eigenfunction(EigenIndex(n), x).norm() - s.lorentzian(x)).abs());
        }
    }

    let cocycle = sample
        .iter()
        .map(|&x| wrap_angle(s.theta_continuous(u - 1.0 / x) - s.theta_continuous(x) - s.phi).abs())
        .fold(0.0f64, f64::max);

    let h = 1e-6;
    let link = sample
        .iter()
        .filter(|&&x| (x - s.x0_disc).abs() > 1e-3)
        .map(|&x| {
            let fd = (s.theta_continuous(x + h) - s.theta_continuous(x - h)) / (2.0 * h);
            let exact = -u.signum() * TAU * s.lorentzian(x);
            ((fd - exact) / exact).abs()
        })
        .fold(0.0f64, f64::max);

    let phi_alt = 2.0 * ((4.0 - u * u).sqrt() / u.abs()).atan();
    let phi_consistency = wrap_angle(s.phi - phi_alt).abs();

    let mut pole = 0.0f64;
    for n in -8..=8 {
        let c = s.pole_form_constant(EigenIndex(n));
        for &x in sample.iter().take(50) {
            let diff =
                s.eigenfunction_pole_form(EigenIndex(n), x) - c * s.eigenfunction(EigenIndex(n), x);
            pole = pole.max(diff.norm());
        }
    }

    let grid = QuadratureGrid::new(params, expansion::DEFAULT_NODE_COUNT)?;
    let mass = (grid.integrate(|x| s.lorentzian(x)) - 1.0).norm();
    let zero_integral = (1..=10)
        .flat_map(|n| [n, -n])
        .map(|n| grid.integrate(|x| s.eigenfunction(EigenIndex(n), x)).norm())
        .fold(0.0f64, f64::max);

    let gaussian = |x: f64| (-x * x).exp();
    let c = expansion::compute_coefficients(params, gaussian, 32, &grid)?;
    let hermitian = (0..=32)
        .map(|n| (c.get(-n) - c.get(n).conj()).norm())
        .fold(0.0f64, f64::max);
    let imaginary = sample
        .iter()
        .map(|&x| c.reconstruct(x).im.abs())
        .fold(0.0f64, f64::max);

    let terms = [
        (-3, Complex64::new(0.2, -0.1)),
        (0, Complex64::new(1.0, 0.0)),
        (2, Complex64::new(-0.4, 0.3)),
        (5, Complex64::new(0.0, 0.7)),
    ];
    let exact = CoefficientSet::from_terms(params, &terms)?;
    let rt = expansion::compute_coefficients(params, |x| exact.reconstruct(x), 6, &grid)?;
    let round_trip = (-6..=6)
        .map(|n| (rt.get(n) - exact.get(n)).norm())
        .fold(0.0f64, f64::max);

    let functional = golden_points(1000, -20.0, 20.0)
        .into_iter()
        .map(|z| (s.lorentzian(z) - s.lorentzian(u - 1.0 / z) / (z * z)).abs())
        .fold(0.0f64, f64::max);

    let away_from_zero: Vec<f64> = sample.iter().copied().filter(|z| z.abs() > 0.05).collect();
    let generalized = attractor::generalized_residual(
        |x| params.step(x),
        |z| params.step_back(z),
        |z| s.lorentzian(z),
        None,
        &away_from_zero,
    )?;
    let control = attractor::generalized_residual(
        |x| params.step(x),
        |z| params.step_back(z),
        |z: f64| (-z * z).exp(),
        None,
        &away_from_zero,
    )?;

    let hc = 1e-5;
    let cdf_link = sample
        .iter()
        .map(|&z| {
            let fd = (attractor::analytic_cdf(params, z + hc).unwrap()
                - attractor::analytic_cdf(params, z - hc).unwrap())
                / (2.0 * hc);
            ((fd - s.lorentzian(z)) / s.lorentzian(z)).abs()
        })
        .fold(0.0f64, f64::max);

    Ok(vec![
        Check::below("eigen_equation", eigen, 1e-10),
        Check::below("modulus_law", modulus, 1e-12),
        Check::below("phase_cocycle", cocycle, 1e-10),
        Check::below("phase_density_link", link, 1e-5),
        Check::below("phi_consistency", phi_consistency, 1e-12),
        Check::below("pole_form_agreement", pole, 1e-12),
        Check::below("lorentzian_mass", mass, 1e-10),
        Check::below("zero_integral", zero_integral, 1e-10),
        Check::below("coefficient_hermitian", hermitian, 1e-12),
        Check::below("reconstruction_real", imaginary, 1e-8),
        Check::below("band_limited_round_trip", round_trip, 1e-9),
        Check::below("density_functional_equation", functional, 1e-12),
        Check::below("generalized_residual", generalized, 1e-6),
        Check::above("generalized_negative_control", control, 0.01),
        Check::below("cdf_derivative", cdf_link, 1e-6),
    ])
}

pub fn run_residuals(a: &ResidualsArgs) -> Result<Outcome, Error> {
    let params = MapParams::new(a.u)?;
    let mut checks = mobius_checks(params)?;
    if params.is_elliptic() {
        checks.extend(spectral_checks(params)?);
    }
    let mut table = Table::new("rows", &["check", "value", "threshold", "pass"]);
    let mut failures = 0;
    for c in &checks {
        let pass = c.passed();
        failures += usize::from(!pass);
        table.push(vec![
            c.name.into(),
            num(c.value),
            num(c.threshold),
            pass.into(),
        ]);
    }
    let mut report = Report::new("residuals", table);
    report.meta("u", num(a.u));
    report.meta("regime", regime_name(params));
    report.footer("checks", checks.len());
    report.footer("failures", failures);
    let mut outcome = Outcome::ok(report);
    if failures > 0 {
        outcome.status = Status::InvariantFailure;
        outcome
            .messages
            .push(format!("fracmap: {failures} invariant check(s) failed"));
    }
    Ok(outcome)
}
