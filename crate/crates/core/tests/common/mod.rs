#![allow(dead_code)]

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rlw_core::Grid;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vec(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-1.0..1.0)).collect()
}

/// Random trigonometric polynomial with modes `1..=max_mode` plus a mean.
pub fn random_smooth(rng: &mut ChaCha8Rng, grid: &Grid, max_mode: usize, scale: f64) -> Vec<f64> {
    let mu = grid.mu();
    let mean = rng.random_range(-0.5..0.5) * scale;
    let coeffs: Vec<(f64, f64)> = (1..=max_mode)
        .map(|m| {
            let d = scale / (m * m) as f64;
            (rng.random_range(-d..d), rng.random_range(-d..d))
        })
        .collect();
    grid.nodes()
        .iter()
        .map(|&x| {
            mean + coeffs
                .iter()
                .enumerate()
                .map(|(i, (a, b))| {
                    let th = (i + 1) as f64 * mu * (x - grid.x_left());
                    a * th.cos() + b * th.sin()
                })
                .sum::<f64>()
        })
        .collect()
}

/// First-derivative collocation matrix from the cardinal-function formula.
pub fn cardinal_d1(grid: &Grid) -> DMatrix<f64> {
    let n = grid.n_points();
    let mu = grid.mu();
    DMatrix::from_fn(n, n, |j, l| {
        if j == l {
            0.0
        } else {
            let d = j as i64 - l as i64;
            let sign = if d.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let arg = d as f64 * std::f64::consts::PI / n as f64;
            0.5 * mu * sign / arg.tan()
        }
    })
}

/// Second-derivative collocation matrix from the cardinal-function formula.
pub fn cardinal_d2(grid: &Grid) -> DMatrix<f64> {
    let n = grid.n_points();
    let mu = grid.mu();
    let nf = n as f64;
    DMatrix::from_fn(n, n, |j, l| {
        if j == l {
            -mu * mu * (nf * nf + 2.0) / 12.0
        } else {
            let d = j as i64 - l as i64;
            let sign = if d.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let s = (d as f64 * std::f64::consts::PI / nf).sin();
            -0.5 * mu * mu * sign / (s * s)
        }
    })
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

pub fn l2_h(h: f64, v: &[f64]) -> f64 {
    (h * v.iter().map(|x| x * x).sum::<f64>()).sqrt()
}

/// Composite Simpson rule on `[a, b]` with `n` (even) panels.
pub fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// `3c·sech²(m(x − x0))` and its derivative.
pub fn sech2_wave(c: f64, m: f64, x0: f64, x: f64) -> (f64, f64) {
    let z = m * (x - x0);
    let s = 1.0 / z.cosh();
    let u = 3.0 * c * s * s;
    (u, -2.0 * m * z.tanh() * u)
}

/// `∫(u² + σu_x²)` of the two-wave initial profile by Simpson's rule.
pub fn two_soliton_momentum_quadrature(
    c1: f64,
    c2: f64,
    x1: f64,
    x2: f64,
    sigma: f64,
    a: f64,
    b: f64,
) -> f64 {
    let m = |c: f64| 0.5 * (c / ((c + 1.0) * sigma)).sqrt();
    let (m1, m2) = (m(c1), m(c2));
    simpson(
        |x| {
            let (u1, d1) = sech2_wave(c1, m1, x1, x);
            let (u2, d2) = sech2_wave(c2, m2, x2, x);
            let (u, ux) = (u1 + u2, d1 + d2);
            u * u + sigma * ux * ux
        },
        a,
        b,
        400_000,
    )
}
