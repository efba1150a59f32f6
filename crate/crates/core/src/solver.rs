//! Linear solves for one implicit step: `[I − σD₂ + α·D(w)] x = b`.
//!
//! `I − σD₂` is symmetric positive definite and `D(w)` is anti-symmetric,
//! so the step matrix is always invertible. The Krylov path uses GMRES
//! right-preconditioned by the Fourier-diagonal `(I − σD₂)⁻¹`, which turns
//! the operator into identity plus an `O(α)` perturbation.

use std::cell::OnceCell;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::error::{Result, RlwError};
use crate::grid::{dot, GridFunction, SpectralOperators};
use crate::model::{nonlinear_with_d1, RlwParams};

/// Largest grid on which the dense solver may be used.
pub const DENSE_MAX_POINTS: usize = 512;

/// Krylov subspace dimension before a restart.
const GMRES_RESTART: usize = 60;
const INNER_FACTOR: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverMode {
    DirectDense,
    Krylov,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolverConfig {
    pub mode: SolverMode,
    pub rel_tol: f64,
    pub max_iters: usize,
    pub startup_tol: f64,
    pub startup_max_iters: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            mode: SolverMode::Krylov,
            rel_tol: 1e-12,
            max_iters: 500,
            startup_tol: 1e-13,
            startup_max_iters: 100,
        }
    }
}

impl SolverConfig {
    pub fn dense() -> Self {
        Self {
            mode: SolverMode::DirectDense,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.rel_tol.is_finite()) {
            return Err(RlwError::config("solver rel_tol must be positive"));
        }
        if !(self.startup_tol > 0.0 && self.startup_tol.is_finite()) {
            return Err(RlwError::config("solver startup_tol must be positive"));
        }
        if self.max_iters == 0 || self.startup_max_iters == 0 {
            return Err(RlwError::config("solver iteration caps must be at least 1"));
        }
        Ok(())
    }
}

/// Result of one linear solve.
#[derive(Debug, Clone)]
pub struct LinearSolve {
    pub solution: GridFunction,
    /// `‖Bx − b‖_h / ‖b‖_h`, recomputed from the matrix-free operator.
    pub residual: f64,
    pub iterations: usize,
}

struct DenseParts {
    d1: DMatrix<f64>,
    d2: DMatrix<f64>,
}

/// Reusable solver bound to one model and grid; dense matrices are built
/// lazily on first use.
pub struct LinearSolver<'a> {
    params: &'a RlwParams,
    ops: &'a SpectralOperators,
    cfg: SolverConfig,
    dense: OnceCell<DenseParts>,
}

impl<'a> LinearSolver<'a> {
    pub fn new(params: &'a RlwParams, ops: &'a SpectralOperators, cfg: SolverConfig) -> Self {
        Self {
            params,
            ops,
            cfg,
            dense: OnceCell::new(),
        }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn params(&self) -> &RlwParams {
        self.params
    }

    pub fn ops(&self) -> &SpectralOperators {
        self.ops
    }

    /// `[I − σD₂ + α·D(w)] x`
    pub fn apply(&self, w: &[f64], alpha: f64, x: &[f64]) -> Result<Vec<f64>> {
        let mx = self.ops.helmholtz_apply(self.params.sigma, x)?;
        if alpha == 0.0 {
            return Ok(mx);
        }
        let d1x = self.ops.derivative_slice(x, 1)?;
        let kx = nonlinear_with_d1(self.params, self.ops, w, x, &d1x)?;
        Ok(mx.iter().zip(&kx).map(|(m, k)| m + alpha * k).collect())
    }

    pub fn solve(&self, w: &[f64], alpha: f64, rhs: &[f64]) -> Result<LinearSolve> {
        let grid = self.ops.grid();
        grid.check_len(w)?;
        grid.check_len(rhs)?;
        if let Some(j) = rhs.iter().position(|v| !v.is_finite()) {
            return Err(RlwError::Numerical(format!(
                "right-hand side is not finite at index {j}"
            )));
        }
        let (x, iterations) = match self.cfg.mode {
            SolverMode::Krylov => self.gmres(w, alpha, rhs)?,
            SolverMode::DirectDense => (self.dense_solve(w, alpha, rhs)?, 1),
        };
        let residual = self.relative_residual(w, alpha, &x, rhs)?;
        if residual > self.cfg.rel_tol {
            return Err(RlwError::Solver {
                iterations,
                residual,
            });
        }
        Ok(LinearSolve {
            solution: GridFunction::new(x)?,
            residual,
            iterations,
        })
    }

    fn relative_residual(&self, w: &[f64], alpha: f64, x: &[f64], rhs: &[f64]) -> Result<f64> {
        let bx = self.apply(w, alpha, x)?;
        let r: f64 = bx.iter().zip(rhs).map(|(a, b)| (a - b) * (a - b)).sum();
        let b = dot(rhs, rhs);
        Ok(if b == 0.0 { r.sqrt() } else { (r / b).sqrt() })
    }

    /// Assembles the step matrix densely.
    pub fn dense_matrix(&self, w: &[f64], alpha: f64) -> Result<DMatrix<f64>> {
        let n = self.ops.grid().n_points();
        if n > DENSE_MAX_POINTS {
            return Err(RlwError::config(format!(
                "direct_dense solver limited to N <= {DENSE_MAX_POINTS}, got {n}"
            )));
        }
        self.ops.grid().check_len(w)?;
        if self.dense.get().is_none() {
            let parts = DenseParts {
                d1: self.ops.dense_matrix(1)?,
                d2: self.ops.dense_matrix(2)?,
            };
            let _ = self.dense.set(parts);
        }
        let parts = self.dense.get().expect("dense parts initialised above");
        let p = self.params;
        let g3 = p.gamma / 3.0;
        let mut b = DMatrix::identity(n, n) - &parts.d2 * p.sigma;
        for r in 0..n {
            for c in 0..n {
                let d1 = parts.d1[(r, c)];
                let k = p.a * d1 + g3 * (w[r] * d1 + d1 * w[c]);
                b[(r, c)] += alpha * k;
            }
        }
        Ok(b)
    }

    fn dense_solve(&self, w: &[f64], alpha: f64, rhs: &[f64]) -> Result<Vec<f64>> {
        let b = self.dense_matrix(w, alpha)?;
        let lu = b.lu();
        let x = lu
            .solve(&DVector::from_column_slice(rhs))
            .ok_or(RlwError::Singular)?;
        Ok(x.iter().copied().collect())
    }

    /// Restarted GMRES with right preconditioning by `(I − σD₂)⁻¹`.
    ///
    /// The preconditioned operator is applied as `v + α·D(w)(M⁻¹v)`, so
    /// each Arnoldi step costs one fused Helmholtz solve plus one extra
    /// derivative. The initial guess `M⁻¹b` is exact when `α = 0`.
    fn gmres(&self, w: &[f64], alpha: f64, rhs: &[f64]) -> Result<(Vec<f64>, usize)> {
        let sigma = self.params.sigma;
        let n = rhs.len();
        let bnorm = dot(rhs, rhs).sqrt();
        if bnorm == 0.0 {
            return Ok((vec![0.0; n], 0));
        }
        let tol = self.cfg.rel_tol * bnorm;
        // Arnoldi estimate has to undershoot: the true residual is rechecked.
        let inner_tol = INNER_FACTOR * tol;

        let mut x = self.ops.helmholtz_solve(sigma, rhs)?;
        if alpha == 0.0 {
            return Ok((x, 0));
        }
        let mut total = 0usize;
        loop {
            let ax = self.apply(w, alpha, &x)?;
            let r: Vec<f64> = rhs.iter().zip(&ax).map(|(b, a)| b - a).collect();
            let beta = dot(&r, &r).sqrt();
            if beta <= tol {
                return Ok((x, total));
            }
            if total >= self.cfg.max_iters {
                return Err(RlwError::Solver {
                    iterations: total,
                    residual: beta / bnorm,
                });
            }

            let m = GMRES_RESTART.min(self.cfg.max_iters - total);
            let mut basis: Vec<Vec<f64>> = Vec::with_capacity(m + 1);
            basis.push(r.iter().map(|v| v / beta).collect());
            let mut hess = vec![vec![0.0; m]; m + 1];
            let mut cs = vec![0.0; m];
            let mut sn = vec![0.0; m];
            let mut g = vec![0.0; m + 1];
            g[0] = beta;
            let mut k = 0;

            for j in 0..m {
                let (z, d1z) = self.ops.helmholtz_solve_with_d1(sigma, &basis[j])?;
                let kz = nonlinear_with_d1(self.params, self.ops, w, &z, &d1z)?;
                let mut v: Vec<f64> = basis[j]
                    .iter()
                    .zip(&kz)
                    .map(|(b, k)| b + alpha * k)
                    .collect();
                total += 1;

                // Modified Gram-Schmidt, two passes.
                for _ in 0..2 {
                    for (i, q) in basis.iter().enumerate() {
                        let hij = dot(&v, q);
                        hess[i][j] += hij;
                        for (vv, qq) in v.iter_mut().zip(q) {
                            *vv -= hij * qq;
                        }
                    }
                }
                let hnext = dot(&v, &v).sqrt();
                hess[j + 1][j] = hnext;

                for i in 0..j {
                    let t = cs[i] * hess[i][j] + sn[i] * hess[i + 1][j];
                    hess[i + 1][j] = -sn[i] * hess[i][j] + cs[i] * hess[i + 1][j];
                    hess[i][j] = t;
                }
                let denom = hess[j][j].hypot(hess[j + 1][j]);
                cs[j] = hess[j][j] / denom;
                sn[j] = hess[j + 1][j] / denom;
                hess[j][j] = denom;
                hess[j + 1][j] = 0.0;
                g[j + 1] = -sn[j] * g[j];
                g[j] *= cs[j];

                k = j + 1;
                let breakdown = hnext <= f64::EPSILON * bnorm;
                if g[j + 1].abs() <= inner_tol || breakdown || total >= self.cfg.max_iters {
                    break;
                }
                basis.push(v.iter().map(|vv| vv / hnext).collect());
            }

            let mut y = vec![0.0; k];
            for i in (0..k).rev() {
                let s: f64 = (i + 1..k).map(|l| hess[i][l] * y[l]).sum();
                y[i] = (g[i] - s) / hess[i][i];
            }
            let mut update = vec![0.0; n];
            for (yi, q) in y.iter().zip(&basis) {
                for (u, qq) in update.iter_mut().zip(q) {
                    *u += yi * qq;
                }
            }
            let dx = self.ops.helmholtz_solve(sigma, &update)?;
            for (xi, d) in x.iter_mut().zip(&dx) {
                *xi += d;
            }
        }
    }
}

/// Solves `[I − σD₂ + α·D(w)] x = rhs` once.
pub fn solve_linear(
    params: &RlwParams,
    ops: &SpectralOperators,
    w: &[f64],
    alpha: f64,
    rhs: &[f64],
    cfg: SolverConfig,
) -> Result<LinearSolve> {
    cfg.validate()?;
    LinearSolver::new(params, ops, cfg).solve(w, alpha, rhs)
}
