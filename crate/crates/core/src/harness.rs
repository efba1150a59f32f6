//! Scenario execution, error norms against exact solutions, convergence
//! studies and peak counting.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, RlwError};
use crate::grid::{Grid, GridFunction, SpectralOperators};
use crate::invariants::{compute_invariants, relative_drift, InvariantRecord, RelativeDrift};
use crate::model::{initial_profile, InitialCondition, RlwParams, SolitonSpec, TwoSolitonSpec};
use crate::solver::{LinearSolver, SolverConfig};
use crate::stepper::{Scheme, SchemeRun};

/// Errors below this are treated as round-off when computing orders.
pub const ERROR_FLOOR: f64 = 1e-12;

/// Default peak-detection thresholds.
pub const PEAK_MIN_HEIGHT: f64 = 0.05;
pub const PEAK_MIN_PROMINENCE: f64 = 0.02;

/// One experiment: model, data, discretisation and recording cadence.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: String,
    pub params: RlwParams,
    pub ic: InitialCondition,
    pub x_left: f64,
    pub x_right: f64,
    pub n_points: usize,
    pub tau: f64,
    pub t_final: f64,
    pub scheme: Scheme,
    /// Invariants (and errors, when an exact solution exists) are recorded
    /// every `record_every` steps and at the final step.
    pub record_every: usize,
    /// Solution snapshots are kept every `snapshot_every` steps; `None`
    /// keeps only the initial and final states.
    pub snapshot_every: Option<usize>,
    pub solver: SolverConfig,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.params.validate()?;
        self.ic.validate(&self.params)?;
        self.grid()?;
        self.solver.validate()?;
        self.n_steps()?;
        if self.record_every == 0 {
            return Err(RlwError::config("record_every must be at least 1"));
        }
        if self.snapshot_every == Some(0) {
            return Err(RlwError::config("snapshot_every must be at least 1"));
        }
        if self.solver.mode == crate::solver::SolverMode::DirectDense
            && self.n_points > crate::solver::DENSE_MAX_POINTS
        {
            return Err(RlwError::config(format!(
                "direct_dense solver limited to N <= {}",
                crate::solver::DENSE_MAX_POINTS
            )));
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<Grid> {
        Grid::new(self.x_left, self.x_right, self.n_points)
    }

    /// `N_t = T / τ`, which must be an integer.
    pub fn n_steps(&self) -> Result<usize> {
        if !(self.tau > 0.0 && self.tau.is_finite()) {
            return Err(RlwError::config(format!("tau must be positive, got {}", self.tau)));
        }
        if !(self.t_final > 0.0 && self.t_final.is_finite()) {
            return Err(RlwError::config(format!(
                "t_final must be positive, got {}",
                self.t_final
            )));
        }
        let ratio = self.t_final / self.tau;
        let steps = ratio.round();
        if steps < 1.0 || (ratio - steps).abs() > 1e-9 * ratio.max(1.0) {
            return Err(RlwError::config(format!(
                "t_final/tau must be an integer step count (t_final = {}, tau = {})",
                self.t_final, self.tau
            )));
        }
        Ok(steps as usize)
    }

    pub fn exact_available(&self) -> bool {
        self.ic.has_exact()
    }

    pub fn with_scheme(&self, scheme: Scheme) -> Self {
        Self {
            scheme,
            ..self.clone()
        }
    }
}

/// Discrete `L²` and `L∞` errors at one time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ErrorReport {
    pub l2_error: f64,
    pub linf_error: f64,
    pub at_time: f64,
}

pub fn error_norms(
    numeric: &[f64],
    exact: impl Fn(f64) -> f64,
    grid: &Grid,
    t: f64,
) -> Result<ErrorReport> {
    grid.check_len(numeric)?;
    let mut sq = 0.0;
    let mut linf = 0.0_f64;
    for (x, u) in grid.nodes().iter().zip(numeric) {
        let e = (exact(*x) - u).abs();
        sq += e * e;
        linf = linf.max(e);
    }
    Ok(ErrorReport {
        l2_error: (grid.h() * sq).sqrt(),
        linf_error: linf,
        at_time: t,
    })
}

#[derive(Debug, Clone)]
pub struct Snapshot {
    pub step: usize,
    pub time: f64,
    pub values: GridFunction,
}

/// Everything recorded during one scenario run.
#[derive(Debug, Clone)]
pub struct RunBundle {
    pub scenario: Scenario,
    pub nodes: Vec<f64>,
    pub snapshots: Vec<Snapshot>,
    pub invariants: Vec<InvariantRecord>,
    pub errors: Vec<ErrorReport>,
    pub total_linear_iterations: usize,
}

impl RunBundle {
    pub fn drifts(&self) -> Vec<RelativeDrift> {
        match self.invariants.first() {
            Some(first) => self.invariants.iter().map(|r| relative_drift(r, first)).collect(),
            None => Vec::new(),
        }
    }

    /// Largest relative drift of each functional over the record.
    pub fn max_drift(&self) -> RelativeDrift {
        self.drifts()
            .into_iter()
            .fold(RelativeDrift::default(), |acc, d| RelativeDrift {
                ri1: acc.ri1.max(d.ri1),
                ri2: acc.ri2.max(d.ri2),
                ri3: acc.ri3.max(d.ri3),
                absolute: [
                    acc.absolute[0] || d.absolute[0],
                    acc.absolute[1] || d.absolute[1],
                    acc.absolute[2] || d.absolute[2],
                ],
            })
    }

    pub fn final_state(&self) -> Option<&Snapshot> {
        self.snapshots.last()
    }

    pub fn error_at(&self, t: f64) -> Option<&ErrorReport> {
        self.errors.iter().find(|e| (e.at_time - t).abs() < 1e-9 * t.max(1.0))
    }
}

pub fn run_scenario(s: &Scenario) -> Result<RunBundle> {
    s.validate()?;
    let grid = s.grid()?;
    let ops = SpectralOperators::new(&grid);
    let n_steps = s.n_steps()?;
    let u0 = initial_profile(&s.ic, &s.params, &grid)?;
    let solver = LinearSolver::new(&s.params, &ops, s.solver);
    let mut run = SchemeRun::new(s.scheme, s.tau, n_steps, u0, s.solver)?;

    let mut bundle = RunBundle {
        scenario: s.clone(),
        nodes: grid.nodes().to_vec(),
        snapshots: Vec::new(),
        invariants: Vec::new(),
        errors: Vec::new(),
        total_linear_iterations: 0,
    };
    let snapshot_every = s.snapshot_every.unwrap_or(n_steps);

    let record = |step: usize, u: &GridFunction, bundle: &mut RunBundle| -> Result<()> {
        let t = step as f64 * s.tau;
        let last = step == n_steps;
        if step.is_multiple_of(s.record_every) || last {
            bundle.invariants.push(compute_invariants(&s.params, &ops, u, t)?);
            if s.ic.has_exact() {
                let ic = s.ic;
                let p = s.params;
                let exact = move |x: f64| ic.exact(&p, x, t).unwrap_or(f64::NAN);
                bundle.errors.push(error_norms(u, exact, &grid, t)?);
            }
        }
        if step.is_multiple_of(snapshot_every) || last {
            bundle.snapshots.push(Snapshot {
                step,
                time: t,
                values: u.clone(),
            });
        }
        Ok(())
    };

    record(0, run.current(), &mut bundle)?;
    while !run.is_finished() {
        run.advance(&solver)?;
        bundle.total_linear_iterations += run.last_stats().linear_iterations;
        let step = run.step_index();
        record(step, run.current(), &mut bundle).map_err(|e| RlwError::Step {
            step,
            source: Box::new(e),
        })?;
    }
    Ok(bundle)
}

/// `log(e₁/e₂) / log(δ₁/δ₂)`
pub fn observed_order(e1: f64, e2: f64, d1: f64, d2: f64) -> f64 {
    (e1 / e2).ln() / (d1 / d2).ln()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Axis {
    Time,
    Space,
}

impl std::str::FromStr for Axis {
    type Err = RlwError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "time" => Ok(Axis::Time),
            "space" => Ok(Axis::Space),
            other => Err(RlwError::config(format!(
                "unknown axis '{other}' (expected time or space)"
            ))),
        }
    }
}

/// Refinement levels for a convergence study.
#[derive(Debug, Clone, PartialEq)]
pub enum Refinements {
    /// Time steps at fixed `N`.
    Time(Vec<f64>),
    /// Point counts at fixed `τ`.
    Space(Vec<usize>),
}

impl Refinements {
    pub fn axis(&self) -> Axis {
        match self {
            Refinements::Time(_) => Axis::Time,
            Refinements::Space(_) => Axis::Space,
        }
    }

    /// `τ = 0.1, 0.05, …, 0.00625`.
    pub fn default_time() -> Self {
        Refinements::Time(vec![0.1, 0.05, 0.025, 0.0125, 0.00625])
    }

    /// `N = 32, 36, …, 64`.
    pub fn default_space() -> Self {
        Refinements::Space((32..=64).step_by(4).collect())
    }

    pub fn default_for(axis: Axis) -> Self {
        match axis {
            Axis::Time => Self::default_time(),
            Axis::Space => Self::default_space(),
        }
    }

    fn len(&self) -> usize {
        match self {
            Refinements::Time(v) => v.len(),
            Refinements::Space(v) => v.len(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    /// `τ` or `h`.
    pub delta: f64,
    pub l2_error: f64,
    pub linf_error: f64,
    pub order_l2: Option<f64>,
    pub order_linf: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub axis: Axis,
    pub rows: Vec<ConvergenceRow>,
}

impl ConvergenceTable {
    /// Builds rows from `(δ, e_L2, e_L∞)`, filling orders from row 2 on.
    pub fn from_errors(axis: Axis, data: &[(f64, f64, f64)]) -> Self {
        let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(data.len());
        for (i, &(delta, l2, linf)) in data.iter().enumerate() {
            let (order_l2, order_linf) = if i == 0 {
                (None, None)
            } else {
                let (d0, l20, linf0) = data[i - 1];
                (
                    Some(observed_order(l20.max(ERROR_FLOOR), l2.max(ERROR_FLOOR), d0, delta)),
                    Some(observed_order(linf0.max(ERROR_FLOOR), linf.max(ERROR_FLOOR), d0, delta)),
                )
            };
            rows.push(ConvergenceRow {
                delta,
                l2_error: l2,
                linf_error: linf,
                order_l2,
                order_linf,
            });
        }
        Self { axis, rows }
    }
}

/// Runs `base` at each refinement level and tabulates errors at `t_final`
/// against the exact solution. Levels run in parallel.
pub fn convergence_study(base: &Scenario, levels: &Refinements) -> Result<ConvergenceTable> {
    if !base.exact_available() {
        return Err(RlwError::config(
            "convergence study needs an initial condition with an exact solution",
        ));
    }
    if levels.len() < 2 {
        return Err(RlwError::config("convergence study needs at least two levels"));
    }
    let scenarios: Vec<Scenario> = match levels {
        Refinements::Time(taus) => taus
            .iter()
            .map(|&tau| Scenario {
                tau,
                ..base.clone()
            })
            .collect(),
        Refinements::Space(ns) => ns
            .iter()
            .map(|&n_points| Scenario {
                n_points,
                ..base.clone()
            })
            .collect(),
    };
    let results: Vec<Result<(f64, f64, f64)>> = scenarios
        .par_iter()
        .map(|s| {
            let n_steps = s.n_steps()?;
            let s = Scenario {
                record_every: n_steps,
                snapshot_every: None,
                ..s.clone()
            };
            let bundle = run_scenario(&s)?;
            let err = bundle
                .errors
                .last()
                .copied()
                .ok_or_else(|| RlwError::Numerical("no error recorded".into()))?;
            let delta = match levels.axis() {
                Axis::Time => s.tau,
                Axis::Space => (s.x_right - s.x_left) / s.n_points as f64,
            };
            Ok((delta, err.l2_error, err.linf_error))
        })
        .collect();
    let data = results.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(ConvergenceTable::from_errors(levels.axis(), &data))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Peak {
    pub index: usize,
    pub height: f64,
    pub prominence: f64,
}

/// Local maxima at least `min_height` tall whose topographic prominence
/// is at least `min_prominence`. The profile is treated as non-periodic.
pub fn find_peaks(u: &[f64], min_height: f64, min_prominence: f64) -> Vec<Peak> {
    let n = u.len();
    let mut peaks = Vec::new();
    if n < 3 {
        return peaks;
    }
    let mut i = 1;
    while i + 1 < n {
        if u[i] > u[i - 1] {
            // Walk across a flat top.
            let mut j = i;
            while j + 1 < n && u[j + 1] == u[i] {
                j += 1;
            }
            if j + 1 < n && u[j + 1] < u[i] && u[i] >= min_height {
                let height = u[i];
                let mut left_min = height;
                let mut k = i;
                while k > 0 {
                    k -= 1;
                    if u[k] > height {
                        break;
                    }
                    left_min = left_min.min(u[k]);
                }
                let mut right_min = height;
                let mut k = j;
                while k + 1 < n {
                    k += 1;
                    if u[k] > height {
                        break;
                    }
                    right_min = right_min.min(u[k]);
                }
                let prominence = height - left_min.max(right_min);
                if prominence >= min_prominence {
                    peaks.push(Peak {
                        index: i,
                        height,
                        prominence,
                    });
                }
            }
            i = j + 1;
        } else {
            i += 1;
        }
    }
    peaks
}

/// Number of solitary-wave peaks under the default thresholds.
pub fn count_peaks(u: &[f64]) -> usize {
    find_peaks(u, PEAK_MIN_HEIGHT, PEAK_MIN_PROMINENCE).len()
}

/// Reference experiment configurations.
pub mod presets {
    use super::*;

    const UNIT: RlwParams = RlwParams {
        a: 1.0,
        sigma: 1.0,
        gamma: 1.0,
    };

    fn soliton(c: f64) -> InitialCondition {
        InitialCondition::SingleSoliton(SolitonSpec { c, x0: 0.0 })
    }

    /// Single wave, `c = 1/3`, `N = 256`, `τ = 10⁻³` on `[−30, 30]` up to `T = 6`.
    pub fn propagation(scheme: Scheme) -> Scenario {
        Scenario {
            name: "propagation".into(),
            params: UNIT,
            ic: soliton(1.0 / 3.0),
            x_left: -30.0,
            x_right: 30.0,
            n_points: 256,
            tau: 1e-3,
            t_final: 6.0,
            scheme,
            record_every: 100,
            snapshot_every: Some(1000),
            solver: SolverConfig::default(),
        }
    }

    /// Long-time invariant tracking: `c = 1/3`, `N = 256`, `τ = 0.025`, `T = 100`.
    pub fn conservation(scheme: Scheme) -> Scenario {
        Scenario {
            name: "conservation".into(),
            params: UNIT,
            ic: soliton(1.0 / 3.0),
            x_left: -30.0,
            x_right: 30.0,
            n_points: 256,
            tau: 0.025,
            t_final: 100.0,
            scheme,
            record_every: 1,
            snapshot_every: Some(800),
            solver: SolverConfig::default(),
        }
    }

    /// Temporal-order base: `c = 3/2`, `N = 1024` on `[−30, 30]`, `T = 1`.
    pub fn time_convergence(scheme: Scheme) -> Scenario {
        Scenario {
            name: "convergence_time".into(),
            params: UNIT,
            ic: soliton(1.5),
            x_left: -30.0,
            x_right: 30.0,
            n_points: 1024,
            tau: 0.1,
            t_final: 1.0,
            scheme,
            record_every: 10,
            snapshot_every: None,
            solver: SolverConfig::default(),
        }
    }

    /// Spatial-order base: `c = 3/2`, `τ = 10⁻⁴`, `T = 1`.
    pub fn space_convergence(scheme: Scheme) -> Scenario {
        Scenario {
            name: "convergence_space".into(),
            n_points: 32,
            tau: 1e-4,
            record_every: 10_000,
            ..time_convergence(scheme)
        }
    }

    /// Comparison runs on `[−60, 200]` with `τ = 0.05`, `h = 0.1`,
    /// recorded every 25 time units up to `t_final`.
    pub fn comparison(scheme: Scheme, c: f64, t_final: f64) -> Scenario {
        Scenario {
            name: format!("comparison_c{c:.4}"),
            params: UNIT,
            ic: soliton(c),
            x_left: -60.0,
            x_right: 200.0,
            n_points: 2600,
            tau: 0.05,
            t_final,
            scheme,
            record_every: 500,
            snapshot_every: Some(500),
            solver: SolverConfig::default(),
        }
    }

    /// Two-wave interaction on `[−60, 280]`, `τ = 0.05`, `h = 0.1`, `T = 140`.
    pub fn two_soliton(scheme: Scheme) -> Scenario {
        Scenario {
            name: "two_soliton".into(),
            params: UNIT,
            ic: InitialCondition::TwoSoliton(TwoSolitonSpec {
                c1: 1.0,
                c2: 0.5,
                x1: -20.0,
                x2: 15.0,
            }),
            x_left: -60.0,
            x_right: 280.0,
            n_points: 3400,
            tau: 0.05,
            t_final: 140.0,
            scheme,
            record_every: 1,
            snapshot_every: Some(400),
            solver: SolverConfig::default(),
        }
    }

    /// Gaussian pulse `exp(−(x−7)²)` on `[−40, 100]`, `τ = 0.01`, `h = 0.1`, `T = 40`.
    pub fn maxwellian(scheme: Scheme, sigma: f64) -> Scenario {
        Scenario {
            name: format!("maxwellian_sigma{sigma}"),
            params: RlwParams {
                a: 1.0,
                sigma,
                gamma: 1.0,
            },
            ic: InitialCondition::Maxwellian { center: 7.0 },
            x_left: -40.0,
            x_right: 100.0,
            n_points: 1400,
            tau: 0.01,
            t_final: 40.0,
            scheme,
            record_every: 10,
            snapshot_every: Some(1000),
            solver: SolverConfig::default(),
        }
    }
    /// Every shipped experiment, keyed by the file stem under `scenarios/`.
    pub fn registry() -> Vec<(String, Scenario)> {
        let mut out = Vec::new();
        for scheme in [Scheme::LcnMp, Scheme::LlfMp] {
            let k = scheme.key();
            out.push((format!("propagation_{k}"), propagation(scheme)));
            out.push((format!("conservation_{k}"), conservation(scheme)));
            out.push((format!("convergence_time_{k}"), time_convergence(scheme)));
            out.push((format!("convergence_space_{k}"), space_convergence(scheme)));
            out.push((format!("comparison_c1_3_{k}"), comparison(scheme, 1.0 / 3.0, 75.0)));
            out.push((format!("comparison_c1_2_{k}"), comparison(scheme, 0.5, 75.0)));
            out.push((format!("long_run_c0.1_{k}"), comparison(scheme, 0.1, 100.0)));
            out.push((format!("long_run_c0.03_{k}"), comparison(scheme, 0.03, 100.0)));
            out.push((format!("two_soliton_{k}"), two_soliton(scheme)));
            for sigma in [0.04, 0.01, 0.001] {
                out.push((format!("maxwellian_sigma{sigma}_{k}"), maxwellian(scheme, sigma)));
            }
        }
        out
    }
}

/// Published error norms for the comparison runs, transcribed for
/// side-by-side reports. Values are not computed here.
pub mod reference {
    /// One published row: method, norm, `c`, and errors at the listed times.
    #[derive(Debug, Clone, Copy)]
    pub struct ReferenceRow {
        pub method: &'static str,
        pub norm: &'static str,
        pub c: f64,
        pub values: [f64; 3],
    }

    /// Output times of the `[−60, 200]` comparison.
    pub const COMPARISON_TIMES: [f64; 3] = [25.0, 50.0, 75.0];

    macro_rules! rows {
        ($($m:literal $n:literal $c:expr => [$a:expr, $b:expr, $d:expr]),* $(,)?) => {
            &[$(ReferenceRow { method: $m, norm: $n, c: $c, values: [$a, $b, $d] }),*]
        };
    }

    pub const COMPARISON: &[ReferenceRow] = rows![
        "ELMP-I" "L2" 1.0 / 3.0 => [3.02e-3, 4.51e-3, 5.85e-3],
        "ELMP-I" "Linf" 1.0 / 3.0 => [1.27e-3, 1.83e-3, 2.35e-3],
        "ELMP-II" "L2" 1.0 / 3.0 => [2.14e-3, 3.70e-3, 5.19e-3],
        "ELMP-II" "Linf" 1.0 / 3.0 => [8.67e-4, 1.44e-3, 2.00e-3],
        "ILMP-I" "L2" 1.0 / 3.0 => [2.49e-4, 3.50e-4, 4.71e-4],
        "ILMP-I" "Linf" 1.0 / 3.0 => [6.64e-5, 1.12e-4, 1.67e-4],
        "ILMP-II" "L2" 1.0 / 3.0 => [5.00e-3, 8.18e-3, 1.12e-2],
        "ILMP-II" "Linf" 1.0 / 3.0 => [2.10e-3, 3.28e-3, 4.43e-3],
        "LCN-MP" "L2" 1.0 / 3.0 => [2.20e-4, 4.06e-4, 5.84e-4],
        "LCN-MP" "Linf" 1.0 / 3.0 => [9.42e-5, 1.62e-4, 2.28e-4],
        "LLF-MP" "L2" 1.0 / 3.0 => [3.28e-3, 5.59e-3, 7.82e-3],
        "LLF-MP" "Linf" 1.0 / 3.0 => [1.36e-3, 2.21e-3, 3.05e-3],
        "ELMP-I" "L2" 0.5 => [6.44e-3, 9.83e-3, 1.33e-2],
        "ELMP-I" "Linf" 0.5 => [2.85e-3, 4.26e-3, 5.67e-3],
        "ELMP-II" "L2" 0.5 => [3.61e-3, 6.69e-3, 9.76e-3],
        "ELMP-II" "Linf" 0.5 => [1.48e-3, 2.71e-3, 3.94e-3],
        "ILMP-I" "L2" 0.5 => [1.37e-3, 2.89e-3, 4.42e-3],
        "ILMP-I" "Linf" 0.5 => [5.58e-4, 1.17e-3, 1.79e-3],
        "ILMP-II" "L2" 0.5 => [1.11e-2, 1.91e-2, 2.72e-2],
        "ILMP-II" "Linf" 0.5 => [4.84e-3, 8.08e-3, 1.13e-2],
        "LCN-MP" "L2" 0.5 => [3.41e-4, 5.96e-4, 8.80e-4],
        "LCN-MP" "Linf" 0.5 => [1.69e-4, 2.86e-4, 4.05e-4],
        "LLF-MP" "L2" 0.5 => [8.86e-3, 1.59e-2, 2.30e-2],
        "LLF-MP" "Linf" 0.5 => [3.79e-3, 6.62e-3, 9.46e-3],
    ];

    /// Published `T = 100` results: method, `c`, `L²`, `L∞`, CPU seconds.
    #[derive(Debug, Clone, Copy)]
    pub struct LongRunRow {
        pub method: &'static str,
        pub c: f64,
        pub l2: f64,
        pub linf: f64,
        pub cpu_seconds: f64,
    }

    pub const LONG_RUN: &[LongRunRow] = &[
        LongRunRow { method: "ILMP-I", c: 0.1, l2: 3.13e-4, linf: 1.01e-4, cpu_seconds: 35.57 },
        LongRunRow { method: "ILMP-II", c: 0.1, l2: 1.40e-3, linf: 4.61e-4, cpu_seconds: 34.14 },
        LongRunRow { method: "LCN-MP", c: 0.1, l2: 1.24e-4, linf: 3.99e-5, cpu_seconds: 5.29 },
        LongRunRow { method: "LLF-MP", c: 0.1, l2: 7.05e-4, linf: 2.31e-4, cpu_seconds: 5.76 },
        LongRunRow { method: "ILMP-I", c: 0.03, l2: 4.61e-5, linf: 1.16e-5, cpu_seconds: 30.22 },
        LongRunRow { method: "ILMP-II", c: 0.03, l2: 1.39e-4, linf: 3.98e-5, cpu_seconds: 29.02 },
        LongRunRow { method: "LCN-MP", c: 0.03, l2: 2.59e-5, linf: 5.08e-6, cpu_seconds: 5.25 },
        LongRunRow { method: "LLF-MP", c: 0.03, l2: 6.65e-5, linf: 1.84e-5, cpu_seconds: 4.73 },
    ];

    pub fn comparison_row(method: &str, norm: &str, c: f64) -> Option<&'static ReferenceRow> {
        COMPARISON
            .iter()
            .find(|r| r.method == method && r.norm == norm && (r.c - c).abs() < 1e-12)
    }

    pub fn long_run_row(method: &str, c: f64) -> Option<&'static LongRunRow> {
        LONG_RUN
            .iter()
            .find(|r| r.method == method && (r.c - c).abs() < 1e-12)
    }
}
