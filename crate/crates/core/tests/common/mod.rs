//! Test-only oracles, independent of the circle quadrature in `expansion`.

#![allow(dead_code, clippy::excessive_precision)]

use std::f64::consts::FRAC_PI_2;

use fracmap_core::SpectralData;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights at XGK[1], XGK[3], XGK[5], XGK[7]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

fn gauss_kronrod<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mid = f(center);
    let mut kronrod = mid * WGK[7];
    let mut gauss = mid * WG[3];
    for k in 0..7 {
        let dx = half * XGK[k];
        let pair = f(center - dx) + f(center + dx);
        kronrod += pair * WGK[k];
        if k % 2 == 1 {
            gauss += pair * WG[k / 2];
        }
    }
    let kronrod = kronrod * half;
    let gauss = gauss * half;
    (kronrod, (kronrod - gauss).norm())
}

/// Adaptive G7K15 with bisection until each panel's error estimate is below
/// its share of `tol`.
pub fn adaptive<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn recurse<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
        let (value, err) = gauss_kronrod(f, a, b);
        if err <= tol || depth == 0 {
            return value;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, tol / 2.0, depth - 1) + recurse(f, m, b, tol / 2.0, depth - 1)
    }
    recurse(f, a, b, tol, 40)
}

/// `C_n = ∫ f(x) ((x - R)/(x - R*))^n dx` on the real line via `x = tan(u)`,
/// rotated by `R^(-2n)` into the `exp(-i n theta)` convention.
pub fn real_line_coefficient<F: Fn(f64) -> Complex64>(
    spectral: &SpectralData,
    f: &F,
    n: i32,
) -> Complex64 {
    let r = spectral.r;
    let rc = r.conj();
    let integrand = |u: f64| {
        let x = u.tan();
        let sec2 = 1.0 + x * x;
        if !sec2.is_finite() {
            return Complex64::new(0.0, 0.0);
        }
        f(x) * ((x - r) / (x - rc)).powi(n) * sec2
    };
    // split at the origin and at ±1 so compactly supported inputs line up with panel edges
    let cuts = [-FRAC_PI_2, -1f64.atan(), 0.0, 1f64.atan(), FRAC_PI_2];
    let total: Complex64 = cuts
        .windows(2)
        .map(|w| adaptive(&integrand, w[0], w[1], 1e-13))
        .sum();
    total * (r * r).powi(-n)
}

pub fn random_points(seed: u64, count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.gen_range(lo..hi)).collect()
}

pub fn gaussian(x: f64) -> Complex64 {
    (-x * x).exp().into()
}

pub fn bump(x: f64) -> Complex64 {
    if x.abs() < 1.0 {
        (-1.0 / (1.0 - x * x)).exp().into()
    } else {
        0.0.into()
    }
}

pub fn quartic(x: f64) -> Complex64 {
    (1.0 / (1.0 + x.powi(4))).into()
}

/// Invariant density of a different map parameter.
pub fn lorentzian_at(v: f64) -> impl Fn(f64) -> Complex64 {
    move |x| ((4.0 - v * v).sqrt() / std::f64::consts::TAU / (x * x - v * x + 1.0)).into()
}
