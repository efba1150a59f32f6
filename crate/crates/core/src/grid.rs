//! Periodic collocation grid, discrete inner products and norms, and
//! FFT-backed Fourier differentiation.
//!
//! The differentiation matrices are never formed on the hot path: the
//! `k`-th order operator is diagonal in Fourier space,
//! `D_k = F⁻¹ Λ_k F`, with the base eigenvalues `iμ·m` laid out in FFT
//! order `0, 1, …, N/2−1, N/2, −N/2+1, …, −1`. Odd orders zero the
//! `N/2` entry so that real data stays real; even orders keep it.

use std::f64::consts::PI;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use nalgebra::DMatrix;
use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Result, RlwError};

/// Imaginary residue allowed after an inverse transform, relative to `1 + ‖u‖_h`.
pub const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Negative radicand of `|u|_h²` tolerated as round-off before clamping.
pub const RADICAND_TOL: f64 = 1e-10;

/// Uniform periodic grid `x_j = x_left + j·h`, `j = 0..N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    x_left: f64,
    x_right: f64,
    n_points: usize,
    h: f64,
    mu: f64,
    nodes: Vec<f64>,
}

impl Grid {
    pub fn new(x_left: f64, x_right: f64, n_points: usize) -> Result<Self> {
        if !(x_left.is_finite() && x_right.is_finite()) {
            return Err(RlwError::config("domain endpoints must be finite"));
        }
        if x_right <= x_left {
            return Err(RlwError::config(format!(
                "interval must be increasing (x_left = {x_left}, x_right = {x_right})"
            )));
        }
        if !n_points.is_multiple_of(2) {
            return Err(RlwError::config(format!(
                "N even required, got n_points = {n_points}"
            )));
        }
        if n_points < 4 {
            return Err(RlwError::config(format!(
                "n_points must be at least 4, got {n_points}"
            )));
        }
        let length = x_right - x_left;
        let h = length / n_points as f64;
        let nodes = (0..n_points).map(|j| x_left + j as f64 * h).collect();
        Ok(Self {
            x_left,
            x_right,
            n_points,
            h,
            mu: 2.0 * PI / length,
            nodes,
        })
    }

    pub fn x_left(&self) -> f64 {
        self.x_left
    }

    pub fn x_right(&self) -> f64 {
        self.x_right
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Mesh size `h = L / N`.
    pub fn h(&self) -> f64 {
        self.h
    }

    /// Wavenumber scale `μ = 2π / L`.
    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn length(&self) -> f64 {
        self.x_right - self.x_left
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    /// Samples `f` at the collocation nodes.
    pub fn sample(&self, f: impl Fn(f64) -> f64) -> Result<GridFunction> {
        GridFunction::new(self.nodes.iter().map(|&x| f(x)).collect())
    }

    pub(crate) fn check_len(&self, u: &[f64]) -> Result<()> {
        if u.len() != self.n_points {
            return Err(RlwError::Shape {
                expected: self.n_points,
                found: u.len(),
            });
        }
        Ok(())
    }
}

/// Nodal values of a real grid function. All entries are finite.
#[derive(Clone, PartialEq)]
pub struct GridFunction(Vec<f64>);

impl GridFunction {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if let Some(j) = values.iter().position(|v| !v.is_finite()) {
            return Err(RlwError::Numerical(format!(
                "grid function has non-finite value at index {j}"
            )));
        }
        Ok(Self(values))
    }

    pub fn zeros(n: usize) -> Self {
        Self(vec![0.0; n])
    }

    /// Wraps values produced by internal arithmetic on finite inputs.
    pub(crate) fn from_vec_unchecked(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `α·self + β·other`, elementwise.
    pub fn lin_comb(&self, alpha: f64, other: &GridFunction, beta: f64) -> GridFunction {
        GridFunction(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| alpha * a + beta * b)
                .collect(),
        )
    }
}

impl Deref for GridFunction {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

impl fmt::Debug for GridFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridFunction(len = {}, max|u| = {:e})", self.0.len(), self.max_abs())
    }
}

/// Discrete inner product `(u, v)_h = h Σ u_j v_j`.
pub fn inner_product_h(grid: &Grid, u: &[f64], v: &[f64]) -> Result<f64> {
    grid.check_len(u)?;
    grid.check_len(v)?;
    Ok(grid.h * dot(u, v))
}

pub(crate) fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(a, b)| a * b).sum()
}

/// Discrete norms of one grid function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    /// `‖u‖_h`
    pub l2_h: f64,
    /// Spectral semi-norm `|u|_h = sqrt((−D₂u, u)_h)`.
    pub seminorm_h: f64,
    /// `‖δ⁺u‖_h` with the periodic forward difference.
    pub fwd_diff_h: f64,
    /// `max_j |u_j|`
    pub linf_h: f64,
}

pub fn norms(ops: &SpectralOperators, u: &[f64]) -> Result<Norms> {
    let grid = ops.grid();
    grid.check_len(u)?;
    let h = grid.h();
    let l2_h = (h * dot(u, u)).sqrt();

    let d2u = ops.derivative_slice(u, 2)?;
    let radicand = -h * dot(&d2u, u);
    if radicand < -RADICAND_TOL {
        return Err(RlwError::Numerical(format!(
            "negative semi-norm radicand {radicand:e}"
        )));
    }
    let seminorm_h = radicand.max(0.0).sqrt();

    let n = u.len();
    let fwd_sq: f64 = (0..n)
        .map(|j| {
            let d = (u[(j + 1) % n] - u[j]) / h;
            d * d
        })
        .sum();
    let fwd_diff_h = (h * fwd_sq).sqrt();
    let linf_h = u.iter().fold(0.0_f64, |m, v| m.max(v.abs()));

    Ok(Norms {
        l2_h,
        seminorm_h,
        fwd_diff_h,
        linf_h,
    })
}

/// Fourier differentiation on a fixed grid.
///
/// Immutable after construction; FFT plans are shared `Arc<dyn Fft>` and
/// every call allocates its own buffers, so one instance can serve many
/// threads.
pub struct SpectralOperators {
    grid: Grid,
    spectrum_odd: Vec<Complex64>,
    spectrum_even: Vec<Complex64>,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for SpectralOperators {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralOperators")
            .field("grid", &self.grid)
            .finish_non_exhaustive()
    }
}

impl SpectralOperators {
    pub fn new(grid: &Grid) -> Self {
        let n = grid.n_points();
        let half = n / 2;
        let mu = grid.mu();
        let mode = |j: usize| -> f64 {
            if j <= half {
                j as f64
            } else {
                j as f64 - n as f64
            }
        };
        let spectrum_even: Vec<Complex64> = (0..n)
            .map(|j| Complex64::new(0.0, mu * mode(j)))
            .collect();
        let mut spectrum_odd = spectrum_even.clone();
        spectrum_odd[half] = Complex64::new(0.0, 0.0);

        let mut planner = FftPlanner::new();
        Self {
            grid: grid.clone(),
            spectrum_odd,
            spectrum_even,
            forward: planner.plan_fft_forward(n),
            inverse: planner.plan_fft_inverse(n),
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    /// Eigenvalues of `D_k` in FFT order.
    pub fn eigenvalues(&self, order: u32) -> Vec<Complex64> {
        let base = if order % 2 == 1 {
            &self.spectrum_odd
        } else {
            &self.spectrum_even
        };
        base.iter().map(|l| l.powu(order)).collect()
    }

    /// Nodal values of the `order`-th derivative of the trigonometric interpolant of `u`.
    pub fn derivative(&self, u: &GridFunction, order: u32) -> Result<GridFunction> {
        self.derivative_slice(u, order)
            .map(GridFunction::from_vec_unchecked)
    }

    pub(crate) fn derivative_slice(&self, u: &[f64], order: u32) -> Result<Vec<f64>> {
        if order == 0 {
            return Err(RlwError::config("derivative order must be at least 1"));
        }
        self.grid.check_len(u)?;
        let mut spec = self.spectrum(u);
        match order {
            1 => mul_diag(&mut spec, &self.spectrum_odd),
            2 => {
                for (c, l) in spec.iter_mut().zip(&self.spectrum_even) {
                    *c *= l * l;
                }
            }
            _ => {
                for (c, l) in spec.iter_mut().zip(self.eigenvalues(order)) {
                    *c *= l;
                }
            }
        }
        self.to_real(spec, u)
    }

    /// `(I − σD₂) u`
    pub fn helmholtz_apply(&self, sigma: f64, u: &[f64]) -> Result<Vec<f64>> {
        self.grid.check_len(u)?;
        let mut spec = self.spectrum(u);
        for (c, l) in spec.iter_mut().zip(&self.spectrum_even) {
            *c *= 1.0 + sigma * l.norm_sqr();
        }
        self.to_real(spec, u)
    }

    /// `(I − σD₂)⁻¹ u`; the operator is diagonal with entries `1 + σμ²m²`.
    pub fn helmholtz_solve(&self, sigma: f64, u: &[f64]) -> Result<Vec<f64>> {
        self.grid.check_len(u)?;
        let mut spec = self.spectrum(u);
        for (c, l) in spec.iter_mut().zip(&self.spectrum_even) {
            *c /= 1.0 + sigma * l.norm_sqr();
        }
        self.to_real(spec, u)
    }

    /// Returns `z = (I − σD₂)⁻¹ v` together with `D₁ z` from one forward transform.
    pub(crate) fn helmholtz_solve_with_d1(
        &self,
        sigma: f64,
        v: &[f64],
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut spec = self.spectrum(v);
        for (c, l) in spec.iter_mut().zip(&self.spectrum_even) {
            *c /= 1.0 + sigma * l.norm_sqr();
        }
        let mut dspec = spec.clone();
        mul_diag(&mut dspec, &self.spectrum_odd);
        Ok((self.to_real(spec, v)?, self.to_real(dspec, v)?))
    }

    /// `|u|_h²` evaluated through Parseval: `(h/N) Σ μ²m² |û_m|²`.
    pub fn seminorm_sq_spectral(&self, u: &[f64]) -> Result<f64> {
        self.grid.check_len(u)?;
        let spec = self.spectrum(u);
        let n = u.len() as f64;
        let sum: f64 = spec
            .iter()
            .zip(&self.spectrum_even)
            .map(|(c, l)| l.norm_sqr() * c.norm_sqr())
            .sum();
        Ok(self.grid.h() * sum / n)
    }

    /// Dense `N×N` matrix of `D_k`, `k ∈ {1, 2}`, assembled column by column
    /// from the transform applied to unit vectors.
    pub fn dense_matrix(&self, order: u32) -> Result<DMatrix<f64>> {
        if !(order == 1 || order == 2) {
            return Err(RlwError::config(format!(
                "dense differentiation matrix supports orders 1 and 2, got {order}"
            )));
        }
        let n = self.grid.n_points();
        let mut m = DMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for col in 0..n {
            e[col] = 1.0;
            let d = self.derivative_slice(&e, order)?;
            for (row, v) in d.into_iter().enumerate() {
                m[(row, col)] = v;
            }
            e[col] = 0.0;
        }
        Ok(m)
    }

    fn spectrum(&self, u: &[f64]) -> Vec<Complex64> {
        let mut buf: Vec<Complex64> = u.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.forward.process(&mut buf);
        buf
    }

    /// Inverse transform, normalised, with the imaginary-residue check
    /// taken relative to the input `reference`.
    fn to_real(&self, mut spec: Vec<Complex64>, reference: &[f64]) -> Result<Vec<f64>> {
        self.inverse.process(&mut spec);
        let scale = 1.0 / spec.len() as f64;
        let mut max_imag = 0.0_f64;
        let out = spec
            .iter()
            .map(|c| {
                max_imag = max_imag.max(c.im.abs());
                c.re * scale
            })
            .collect();
        max_imag *= scale;
        let tol = IMAG_RESIDUE_TOL * (1.0 + (self.grid.h() * dot(reference, reference)).sqrt());
        if max_imag > tol {
            return Err(RlwError::Numerical(format!(
                "imaginary residue {max_imag:e} exceeds {tol:e}"
            )));
        }
        Ok(out)
    }
}

fn mul_diag(spec: &mut [Complex64], diag: &[Complex64]) {
    for (c, l) in spec.iter_mut().zip(diag) {
        *c *= l;
    }
}

/// Builds `D_k` for `grid` as a dense matrix (`k ∈ {1, 2}`).
pub fn dense_diff_matrix(grid: &Grid, order: u32) -> Result<DMatrix<f64>> {
    SpectralOperators::new(grid).dense_matrix(order)
}
