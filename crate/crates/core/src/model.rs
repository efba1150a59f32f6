//! RLW problem definition: coefficients, the skew-adjoint transport
//! operator `D(w)`, and closed-form initial/exact data.
//!
//! The equation is `u_t + a u_x − σ u_xxt + (F'(u))_x = 0` with
//! `F = γu³/6` (flux `γ u u_x`) on a periodic interval, rewritten with the nonlinearity in the skew-symmetric split
//! `(γ/3)(u ∂_x + ∂_x u) u` so that the semi-discrete operator is
//! anti-symmetric for every frozen coefficient.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RlwError};
use crate::grid::{Grid, GridFunction, SpectralOperators};

/// Endpoint magnitude above which an initial profile is reported as poorly
/// decayed for a periodic domain.
pub const ENDPOINT_DECAY_TOL: f64 = 1e-8;

/// Coefficients `a` (advection), `σ` (dispersion) and `γ` (nonlinearity).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RlwParams {
    pub a: f64,
    pub sigma: f64,
    pub gamma: f64,
}

impl RlwParams {
    pub fn new(a: f64, sigma: f64, gamma: f64) -> Result<Self> {
        let p = Self { a, sigma, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("a", self.a), ("sigma", self.sigma), ("gamma", self.gamma)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(RlwError::config(format!(
                    "coefficient {name} must be strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

impl Default for RlwParams {
    fn default() -> Self {
        Self {
            a: 1.0,
            sigma: 1.0,
            gamma: 1.0,
        }
    }
}

/// Single solitary wave `3c·sech²(k[x − x₀ − vt])`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolitonSpec {
    pub c: f64,
    pub x0: f64,
}

impl SolitonSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.c.is_finite() && self.c > 0.0) {
            return Err(RlwError::config(format!(
                "soliton c must be strictly positive, got {}",
                self.c
            )));
        }
        if !self.x0.is_finite() {
            return Err(RlwError::config("soliton x0 must be finite"));
        }
        Ok(())
    }

    pub fn amplitude(&self) -> f64 {
        3.0 * self.c
    }

    /// Inverse width `k = ½·sqrt(γc / (σ(a + γc)))`.
    pub fn width_scale(&self, p: &RlwParams) -> f64 {
        0.5 * (p.gamma * self.c / (p.sigma * (p.a + p.gamma * self.c))).sqrt()
    }

    /// Speed `v = a + γc`.
    pub fn speed(&self, p: &RlwParams) -> f64 {
        p.a + p.gamma * self.c
    }
}

/// Superposition of two well-separated solitary waves. Only defined for `a = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TwoSolitonSpec {
    pub c1: f64,
    pub c2: f64,
    pub x1: f64,
    pub x2: f64,
}

impl TwoSolitonSpec {
    pub fn validate(&self, p: &RlwParams) -> Result<()> {
        if p.a != 1.0 {
            return Err(RlwError::config(format!(
                "two-soliton data assumes a = 1, got a = {}",
                p.a
            )));
        }
        for (name, c) in [("c1", self.c1), ("c2", self.c2)] {
            if !(c.is_finite() && c > 0.0) {
                return Err(RlwError::config(format!(
                    "two-soliton {name} must be strictly positive, got {c}"
                )));
            }
        }
        if !(self.x1.is_finite() && self.x2.is_finite()) {
            return Err(RlwError::config("two-soliton centres must be finite"));
        }
        Ok(())
    }

    /// `m = ½·sqrt(γc / ((γc + 1)σ))` for one component.
    pub fn width_scale(c: f64, gamma: f64, sigma: f64) -> f64 {
        0.5 * (gamma * c / ((gamma * c + 1.0) * sigma)).sqrt()
    }

    pub fn m1(&self, p: &RlwParams) -> f64 {
        Self::width_scale(self.c1, p.gamma, p.sigma)
    }

    pub fn m2(&self, p: &RlwParams) -> f64 {
        Self::width_scale(self.c2, p.gamma, p.sigma)
    }
}

/// Closed-form initial data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum InitialCondition {
    SingleSoliton(SolitonSpec),
    TwoSoliton(TwoSolitonSpec),
    /// Gaussian pulse `exp(−(x − center)²)`.
    Maxwellian { center: f64 },
}

impl InitialCondition {
    pub fn validate(&self, p: &RlwParams) -> Result<()> {
        match self {
            InitialCondition::SingleSoliton(s) => s.validate(),
            InitialCondition::TwoSoliton(s) => s.validate(p),
            InitialCondition::Maxwellian { center } => {
                if center.is_finite() {
                    Ok(())
                } else {
                    Err(RlwError::config("maxwellian center must be finite"))
                }
            }
        }
    }

    pub fn eval(&self, p: &RlwParams, x: f64) -> f64 {
        match self {
            InitialCondition::SingleSoliton(s) => exact_soliton(p, s, x, 0.0),
            InitialCondition::TwoSoliton(s) => {
                3.0 * s.c1 * sech2(s.m1(p) * (x - s.x1)) + 3.0 * s.c2 * sech2(s.m2(p) * (x - s.x2))
            }
            InitialCondition::Maxwellian { center } => (-(x - center).powi(2)).exp(),
        }
    }

    /// The exact solution for all times, where one is known.
    pub fn exact(&self, p: &RlwParams, x: f64, t: f64) -> Option<f64> {
        match self {
            InitialCondition::SingleSoliton(s) => Some(exact_soliton(p, s, x, t)),
            _ => None,
        }
    }

    pub fn has_exact(&self) -> bool {
        matches!(self, InitialCondition::SingleSoliton(_))
    }
}

/// `sech²(z)` via `2 / (e^z + e^{−z})`, with `|z|` capped so the tail flushes to zero.
pub fn sech2(z: f64) -> f64 {
    let z = z.abs();
    if z > 700.0 {
        return 0.0;
    }
    let s = 2.0 / (z.exp() + (-z).exp());
    s * s
}

/// Travelling solitary wave `3c·sech²(k[x − x₀ − vt])`.
pub fn exact_soliton(p: &RlwParams, spec: &SolitonSpec, x: f64, t: f64) -> f64 {
    let k = spec.width_scale(p);
    let v = spec.speed(p);
    spec.amplitude() * sech2(k * (x - spec.x0 - v * t))
}

/// Largest magnitude of `ic` at the two domain endpoints.
pub fn endpoint_magnitude(ic: &InitialCondition, p: &RlwParams, grid: &Grid) -> f64 {
    ic.eval(p, grid.x_left())
        .abs()
        .max(ic.eval(p, grid.x_right()).abs())
}

/// Nodal samples of the initial condition. Logs a warning when the profile
/// has not decayed at the domain ends, since the periodic extension then
/// has a jump.
pub fn initial_profile(ic: &InitialCondition, p: &RlwParams, grid: &Grid) -> Result<GridFunction> {
    let tail = endpoint_magnitude(ic, p, grid);
    if tail > ENDPOINT_DECAY_TOL {
        log::warn!(
            "initial profile is {tail:.3e} at the domain ends; periodic truncation error expected"
        );
    }
    grid.sample(|x| ic.eval(p, x))
}

/// `D(w) v = a·D₁v + (γ/3)(w ∘ D₁v + D₁(w ∘ v))`.
pub fn apply_nonlinear_operator(
    params: &RlwParams,
    ops: &SpectralOperators,
    w: &[f64],
    v: &[f64],
) -> Result<GridFunction> {
    ops.grid().check_len(w)?;
    let d1v = ops.derivative_slice(v, 1)?;
    nonlinear_with_d1(params, ops, w, v, &d1v).map(GridFunction::from_vec_unchecked)
}

/// Same as [`apply_nonlinear_operator`] when `D₁v` is already known.
pub(crate) fn nonlinear_with_d1(
    params: &RlwParams,
    ops: &SpectralOperators,
    w: &[f64],
    v: &[f64],
    d1v: &[f64],
) -> Result<Vec<f64>> {
    let wv: Vec<f64> = w.iter().zip(v).map(|(a, b)| a * b).collect();
    let d1wv = ops.derivative_slice(&wv, 1)?;
    let g3 = params.gamma / 3.0;
    Ok(d1v
        .iter()
        .zip(w)
        .zip(&d1wv)
        .map(|((dv, wj), dwv)| params.a * dv + g3 * (wj * dv + dwv))
        .collect())
}
