//! Linear-implicit momentum-preserving time integrators.
//!
//! Both schemes freeze the coefficient of `D(·)` at known levels, so each
//! step is a single linear solve:
//!
//! * LCN-MP: `[M + (τ/2)D(ŵ)] Uⁿ⁺¹ = [M − (τ/2)D(ŵ)] Uⁿ`, `ŵ = (3Uⁿ − Uⁿ⁻¹)/2`
//! * LLF-MP: `[M + τD(Uⁿ)] Uⁿ⁺¹ = [M − τD(Uⁿ)] Uⁿ⁻¹`
//!
//! with `M = I − σD₂`. The first level `U¹` comes from the nonlinear
//! Crank-Nicolson step for either scheme. Because `D(w)` is anti-symmetric
//! for every `w`, taking the inner product with the sum of the two levels
//! shows `‖U‖²_h + σ|U|²_h` is carried over exactly by each solve.

use serde::{Deserialize, Serialize};

use crate::error::{Result, RlwError};
use crate::grid::{dot, GridFunction, SpectralOperators};
use crate::model::{apply_nonlinear_operator, RlwParams};
use crate::solver::{LinearSolver, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    LcnMp,
    LlfMp,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::LcnMp => "LCN-MP",
            Scheme::LlfMp => "LLF-MP",
        }
    }

    pub fn key(self) -> &'static str {
        match self {
            Scheme::LcnMp => "lcn_mp",
            Scheme::LlfMp => "llf_mp",
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = RlwError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lcn_mp" | "LCN-MP" => Ok(Scheme::LcnMp),
            "llf_mp" | "LLF-MP" => Ok(Scheme::LlfMp),
            other => Err(RlwError::config(format!("unknown scheme '{other}'"))),
        }
    }
}

/// Bookkeeping from the most recent step.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct StepStats {
    pub linear_iterations: usize,
    pub residual: f64,
    /// Picard sweeps; nonzero only for the startup step.
    pub startup_sweeps: usize,
}

/// Rolling two-level state of one integration.
#[derive(Debug, Clone)]
pub struct SchemeRun {
    scheme: Scheme,
    tau: f64,
    n_steps: usize,
    previous: Option<GridFunction>,
    current: GridFunction,
    step_index: usize,
    solver: SolverConfig,
    last_stats: StepStats,
}

impl SchemeRun {
    pub fn new(
        scheme: Scheme,
        tau: f64,
        n_steps: usize,
        u0: GridFunction,
        solver: SolverConfig,
    ) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(RlwError::config(format!("time step must be positive, got {tau}")));
        }
        if n_steps == 0 {
            return Err(RlwError::config("n_steps must be at least 1"));
        }
        solver.validate()?;
        Ok(Self {
            scheme,
            tau,
            n_steps,
            previous: None,
            current: u0,
            step_index: 0,
            solver,
            last_stats: StepStats::default(),
        })
    }

    /// Starts from two known levels `Uⁿ⁻¹`, `Uⁿ` at step index `step_index ≥ 1`.
    pub fn from_history(
        scheme: Scheme,
        tau: f64,
        n_steps: usize,
        previous: GridFunction,
        current: GridFunction,
        step_index: usize,
        solver: SolverConfig,
    ) -> Result<Self> {
        if step_index == 0 || step_index > n_steps {
            return Err(RlwError::config("history start index must lie in 1..=n_steps"));
        }
        if previous.len() != current.len() {
            return Err(RlwError::Shape {
                expected: current.len(),
                found: previous.len(),
            });
        }
        let mut run = Self::new(scheme, tau, n_steps, current, solver)?;
        run.previous = Some(previous);
        run.step_index = step_index;
        Ok(run)
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn step_index(&self) -> usize {
        self.step_index
    }

    pub fn time(&self) -> f64 {
        self.step_index as f64 * self.tau
    }

    pub fn current(&self) -> &GridFunction {
        &self.current
    }

    pub fn previous(&self) -> Option<&GridFunction> {
        self.previous.as_ref()
    }

    pub fn solver_config(&self) -> &SolverConfig {
        &self.solver
    }

    pub fn last_stats(&self) -> StepStats {
        self.last_stats
    }

    pub fn is_finished(&self) -> bool {
        self.step_index >= self.n_steps
    }

    /// Takes the next step: the startup solve from level 0, the scheme's
    /// linear step afterwards.
    pub fn advance(&mut self, solver: &LinearSolver<'_>) -> Result<&GridFunction> {
        let target = self.step_index + 1;
        let res = if self.step_index == 0 {
            startup_with_stats(&self.current, solver, self.tau).map(|(u1, stats)| {
                self.push(u1, stats);
            })
        } else {
            match self.scheme {
                Scheme::LcnMp => lcn_step(self, solver).map(drop),
                Scheme::LlfMp => llf_step(self, solver).map(drop),
            }
        };
        res.map_err(|e| RlwError::Step {
            step: target,
            source: Box::new(e),
        })?;
        Ok(&self.current)
    }

    fn push(&mut self, next: GridFunction, stats: StepStats) {
        let old = std::mem::replace(&mut self.current, next);
        self.previous = Some(old);
        self.step_index += 1;
        self.last_stats = stats;
    }

    fn history(&self) -> Result<(&GridFunction, &GridFunction)> {
        if self.step_index >= self.n_steps {
            return Err(RlwError::config("run already reached n_steps"));
        }
        match &self.previous {
            Some(prev) if self.step_index >= 1 => Ok((prev, &self.current)),
            _ => Err(RlwError::config(
                "three-level step needs two history levels; take the startup step first",
            )),
        }
    }
}

/// One LCN-MP step; returns `Uⁿ⁺¹` and advances the history.
pub fn lcn_step(run: &mut SchemeRun, solver: &LinearSolver<'_>) -> Result<GridFunction> {
    let half_tau = 0.5 * run.tau;
    let (prev, cur) = run.history()?;
    let w: Vec<f64> = cur.iter().zip(prev.iter()).map(|(c, p)| 1.5 * c - 0.5 * p).collect();
    let (next, stats) = implicit_update(solver, &w, half_tau, cur)?;
    run.push(next.clone(), stats);
    Ok(next)
}

/// One LLF-MP step; returns `Uⁿ⁺¹` and advances the history.
pub fn llf_step(run: &mut SchemeRun, solver: &LinearSolver<'_>) -> Result<GridFunction> {
    let tau = run.tau;
    let (prev, cur) = run.history()?;
    let (next, stats) = implicit_update(solver, cur, tau, prev)?;
    run.push(next.clone(), stats);
    Ok(next)
}

/// Solves `[M + αD(w)] x = [M − αD(w)] base` for `x`.
///
/// The unknown is the increment `δ = x − base`, which satisfies
/// `[M + αD(w)] δ = −2α D(w) base`. The right-hand side is `O(α)`, so the
/// solver's relative tolerance bounds a much smaller absolute residual and
/// the momentum defect per step stays near machine precision.
fn implicit_update(
    solver: &LinearSolver<'_>,
    w: &[f64],
    alpha: f64,
    base: &GridFunction,
) -> Result<(GridFunction, StepStats)> {
    let rhs: Vec<f64> = apply_nonlinear_operator(solver.params(), solver.ops(), w, base)?
        .iter()
        .map(|k| -2.0 * alpha * k)
        .collect();
    let sol = solver.solve(w, alpha, &rhs)?;
    let next = GridFunction::new(base.iter().zip(sol.solution.iter()).map(|(b, d)| b + d).collect())?;
    Ok((
        next,
        StepStats {
            linear_iterations: sol.iterations,
            residual: sol.residual,
            startup_sweeps: 0,
        },
    ))
}

/// Nonlinear Crank-Nicolson step `U⁰ → U¹`, solved by Picard iteration on
/// the midpoint coefficient `w = (U⁰ + V)/2`.
pub fn startup_step(u0: &GridFunction, solver: &LinearSolver<'_>, tau: f64) -> Result<GridFunction> {
    startup_with_stats(u0, solver, tau).map(|(u, _)| u)
}

fn startup_with_stats(
    u0: &GridFunction,
    solver: &LinearSolver<'_>,
    tau: f64,
) -> Result<(GridFunction, StepStats)> {
    let cfg = *solver.config();
    let h = solver.ops().grid().h();
    let half_tau = 0.5 * tau;
    let mut iterate = u0.clone();
    let mut increment = f64::INFINITY;
    let mut linear_iterations = 0;
    for sweep in 1..=cfg.startup_max_iters {
        let w: Vec<f64> = u0.iter().zip(iterate.iter()).map(|(a, b)| 0.5 * (a + b)).collect();
        let (next, stats) = implicit_update(solver, &w, half_tau, u0)?;
        linear_iterations += stats.linear_iterations;
        let diff: Vec<f64> = next.iter().zip(iterate.iter()).map(|(a, b)| a - b).collect();
        increment = (h * dot(&diff, &diff)).sqrt();
        let size = (h * dot(&next, &next)).sqrt();
        let residual = stats.residual;
        iterate = next;
        if increment <= cfg.startup_tol * (1.0 + size) {
            return Ok((
                iterate,
                StepStats {
                    linear_iterations,
                    residual,
                    startup_sweeps: sweep,
                },
            ));
        }
    }
    Err(RlwError::Startup {
        iterations: cfg.startup_max_iters,
        increment,
    })
}

/// Runs `n_steps` steps of `scheme` from `u0` and returns `U^{n_steps}`.
///
/// `observer(step, time, state)` is called for step 0 and after every step.
#[allow(clippy::too_many_arguments)]
pub fn integrate<F>(
    u0: &GridFunction,
    params: &RlwParams,
    ops: &SpectralOperators,
    scheme: Scheme,
    tau: f64,
    n_steps: usize,
    cfg: SolverConfig,
    mut observer: F,
) -> Result<GridFunction>
where
    F: FnMut(usize, f64, &GridFunction),
{
    ops.grid().check_len(u0)?;
    let solver = LinearSolver::new(params, ops, cfg);
    let mut run = SchemeRun::new(scheme, tau, n_steps, u0.clone(), cfg)?;
    observer(0, 0.0, run.current());
    while !run.is_finished() {
        run.advance(&solver)?;
        observer(run.step_index(), run.time(), run.current());
    }
    Ok(run.current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Grid;

    fn setup(n: usize) -> (RlwParams, SpectralOperators) {
        let g = Grid::new(-30.0, 30.0, n).unwrap();
        (RlwParams::default(), SpectralOperators::new(&g))
    }

    #[test]
    fn zero_is_a_fixed_point() {
        let (p, ops) = setup(32);
        let solver = LinearSolver::new(&p, &ops, SolverConfig::default());
        let z = GridFunction::zeros(32);
        assert_eq!(startup_step(&z, &solver, 0.1).unwrap().max_abs(), 0.0);
        for scheme in [Scheme::LcnMp, Scheme::LlfMp] {
            let mut run = SchemeRun::from_history(scheme, 0.1, 5, z.clone(), z.clone(), 1, SolverConfig::default())
                .unwrap();
            let next = match scheme {
                Scheme::LcnMp => lcn_step(&mut run, &solver).unwrap(),
                Scheme::LlfMp => llf_step(&mut run, &solver).unwrap(),
            };
            assert_eq!(next.max_abs(), 0.0);
            assert_eq!(run.step_index(), 2);
        }
    }

    #[test]
    fn three_level_step_needs_history() {
        let (p, ops) = setup(16);
        let solver = LinearSolver::new(&p, &ops, SolverConfig::default());
        let mut run = SchemeRun::new(Scheme::LcnMp, 0.1, 3, GridFunction::zeros(16), SolverConfig::default()).unwrap();
        assert!(lcn_step(&mut run, &solver).is_err());
    }

    #[test]
    fn single_step_integrate_equals_startup() {
        let (p, ops) = setup(64);
        let u0 = ops.grid().sample(|x| 0.8 / (x * 0.5).cosh().powi(2)).unwrap();
        let solver = LinearSolver::new(&p, &ops, SolverConfig::default());
        let s = startup_step(&u0, &solver, 0.05).unwrap();
        let mut calls = Vec::new();
        let out = integrate(&u0, &p, &ops, Scheme::LlfMp, 0.05, 1, SolverConfig::default(), |k, t, _| {
            calls.push((k, t))
        })
        .unwrap();
        assert_eq!(out, s);
        assert_eq!(calls, vec![(0, 0.0), (1, 0.05)]);
    }

    #[test]
    fn rejects_bad_runs() {
        let z = GridFunction::zeros(8);
        assert!(SchemeRun::new(Scheme::LcnMp, 0.0, 3, z.clone(), SolverConfig::default()).is_err());
        assert!(SchemeRun::new(Scheme::LcnMp, 0.1, 0, z, SolverConfig::default()).is_err());
    }

    #[test]
    fn scheme_parsing() {
        assert_eq!("lcn_mp".parse::<Scheme>().unwrap(), Scheme::LcnMp);
        assert_eq!("LLF-MP".parse::<Scheme>().unwrap(), Scheme::LlfMp);
        assert!("rk4".parse::<Scheme>().is_err());
    }
}
