//! Sectioned scenario files.
//!
//! A scenario is a TOML document with a top-level `name` and the sections
//! `[model]`, `[domain]`, `[time]`, `[scheme]`, `[initial]` and `[output]`.
//! Unknown keys are rejected. Only the solver settings in `[scheme]` and
//! `snapshot_every` in `[output]` have defaults.
//!
//! ```toml
//! name = "conservation"
//!
//! [model]
//! a = 1.0
//! sigma = 1.0
//! gamma = 1.0
//!
//! [domain]
//! x_left = -30.0
//! x_right = 30.0
//! n_points = 256
//!
//! [time]
//! tau = 0.025
//! t_final = 100.0
//!
//! [scheme]
//! name = "lcn_mp"        # or "llf_mp"
//! solver = "krylov"      # or "direct_dense"; optional
//! rel_tol = 1e-12        # optional
//!
//! [initial]
//! kind = "single_soliton"
//! c = 0.3333333333333333
//! x0 = 0.0
//!
//! [output]
//! directory = "out/conservation"
//! record_every = 1
//! emit_plots = false
//! ```

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Result, RlwError};
use crate::harness::Scenario;
use crate::model::{InitialCondition, RlwParams};
use crate::solver::{SolverConfig, SolverMode};
use crate::stepper::Scheme;

/// Where and how results are written.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputOptions {
    pub directory: PathBuf,
    pub emit_plots: bool,
}

/// A parsed scenario file.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub output: OutputOptions,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileLayout {
    name: String,
    model: RlwParams,
    domain: DomainSection,
    time: TimeSection,
    scheme: SchemeSection,
    initial: InitialCondition,
    output: OutputSection,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DomainSection {
    x_left: f64,
    x_right: f64,
    n_points: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TimeSection {
    tau: f64,
    t_final: f64,
}

fn default_mode() -> SolverMode {
    SolverConfig::default().mode
}
fn default_rel_tol() -> f64 {
    SolverConfig::default().rel_tol
}
fn default_max_iters() -> usize {
    SolverConfig::default().max_iters
}
fn default_startup_tol() -> f64 {
    SolverConfig::default().startup_tol
}
fn default_startup_max_iters() -> usize {
    SolverConfig::default().startup_max_iters
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeSection {
    name: Scheme,
    #[serde(default = "default_mode")]
    solver: SolverMode,
    #[serde(default = "default_rel_tol")]
    rel_tol: f64,
    #[serde(default = "default_max_iters")]
    max_iters: usize,
    #[serde(default = "default_startup_tol")]
    startup_tol: f64,
    #[serde(default = "default_startup_max_iters")]
    startup_max_iters: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutputSection {
    directory: PathBuf,
    record_every: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    snapshot_every: Option<usize>,
    emit_plots: bool,
}

impl RunConfig {
    /// Wraps a scenario with an output directory named after it.
    pub fn from_scenario(scenario: Scenario, root: &Path) -> Self {
        let directory = root.join(&scenario.name);
        Self {
            scenario,
            output: OutputOptions {
                directory,
                emit_plots: false,
            },
        }
    }

    pub fn to_toml(&self) -> Result<String> {
        let s = &self.scenario;
        let layout = FileLayout {
            name: s.name.clone(),
            model: s.params,
            domain: DomainSection {
                x_left: s.x_left,
                x_right: s.x_right,
                n_points: s.n_points,
            },
            time: TimeSection {
                tau: s.tau,
                t_final: s.t_final,
            },
            scheme: SchemeSection {
                name: s.scheme,
                solver: s.solver.mode,
                rel_tol: s.solver.rel_tol,
                max_iters: s.solver.max_iters,
                startup_tol: s.solver.startup_tol,
                startup_max_iters: s.solver.startup_max_iters,
            },
            initial: s.ic,
            output: OutputSection {
                directory: self.output.directory.clone(),
                record_every: s.record_every,
                snapshot_every: s.snapshot_every,
                emit_plots: self.output.emit_plots,
            },
        };
        toml::to_string(&layout).map_err(|e| RlwError::config(format!("cannot serialise scenario: {e}")))
    }
}

/// Parses and validates a scenario file.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let layout: FileLayout = toml::from_str(text).map_err(|e| RlwError::Parse {
        line: e.span().map_or(1, |r| line_of(text, r.start)),
        message: e.message().to_string(),
    })?;
    let scenario = Scenario {
        name: layout.name,
        params: layout.model,
        ic: layout.initial,
        x_left: layout.domain.x_left,
        x_right: layout.domain.x_right,
        n_points: layout.domain.n_points,
        tau: layout.time.tau,
        t_final: layout.time.t_final,
        scheme: layout.scheme.name,
        record_every: layout.output.record_every,
        snapshot_every: layout.output.snapshot_every,
        solver: SolverConfig {
            mode: layout.scheme.solver,
            rel_tol: layout.scheme.rel_tol,
            max_iters: layout.scheme.max_iters,
            startup_tol: layout.scheme.startup_tol,
            startup_max_iters: layout.scheme.startup_max_iters,
        },
    };
    scenario.validate()?;
    Ok(RunConfig {
        scenario,
        output: OutputOptions {
            directory: layout.output.directory,
            emit_plots: layout.output.emit_plots,
        },
    })
}

pub fn load_config(path: &Path) -> Result<RunConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| RlwError::io(path, e))?;
    parse_config(&text)
}

fn line_of(text: &str, offset: usize) -> usize {
    let end = offset.min(text.len());
    text.as_bytes()[..end].iter().filter(|&&b| b == b'\n').count() + 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::presets;

    const MINIMAL: &str = r#"
name = "conservation"

[model]
a = 1.0
sigma = 1.0
gamma = 1.0

[domain]
x_left = -30.0
x_right = 30.0
n_points = 256

[time]
tau = 0.025
t_final = 100.0

[scheme]
name = "lcn_mp"

[initial]
kind = "single_soliton"
c = 0.3333333333333333
x0 = 0.0

[output]
directory = "out"
record_every = 1
emit_plots = false
"#;

    #[test]
    fn minimal_config_applies_solver_defaults() {
        let cfg = parse_config(MINIMAL).unwrap();
        let s = &cfg.scenario;
        assert_eq!(s.n_points, 256);
        assert_eq!(s.tau, 0.025);
        assert_eq!(s.n_steps().unwrap(), 4000);
        assert_eq!(s.solver, SolverConfig::default());
        match s.ic {
            InitialCondition::SingleSoliton(spec) => assert!((spec.c - 1.0 / 3.0).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(cfg.output.directory, PathBuf::from("out"));
    }

    #[test]
    fn odd_grid_names_invariant() {
        let text = MINIMAL.replace("n_points = 256", "n_points = 255");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("N even"), "{err}");
    }

    #[test]
    fn non_integral_step_count_rejected() {
        let text = MINIMAL.replace("t_final = 100.0", "t_final = 100.01");
        let err = parse_config(&text).unwrap_err().to_string();
        assert!(err.contains("integer"), "{err}");
    }

    #[test]
    fn unknown_key_reports_line() {
        let text = MINIMAL.replace("gamma = 1.0", "gamma = 1.0\nbeta = 2.0");
        match parse_config(&text) {
            Err(RlwError::Parse { line, message }) => {
                assert_eq!(line, 8, "{message}");
                assert!(message.contains("beta"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn unknown_initial_key_rejected() {
        let text = MINIMAL.replace("x0 = 0.0", "x0 = 0.0\nwidth = 3.0");
        assert!(matches!(parse_config(&text), Err(RlwError::Parse { .. })));
        let text = MINIMAL.replace(
            "kind = \"single_soliton\"\nc = 0.3333333333333333\nx0 = 0.0",
            "kind = \"maxwellian\"\ncenter = 7.0\nheight = 1.0",
        );
        assert!(matches!(parse_config(&text), Err(RlwError::Parse { .. })));
    }

    #[test]
    fn missing_key_rejected() {
        let text = MINIMAL.replace("sigma = 1.0\n", "");
        let err = parse_config(&text).unwrap_err();
        assert!(matches!(err, RlwError::Parse { .. }), "{err}");
        assert!(err.to_string().contains("sigma"), "{err}");
    }

    #[test]
    fn presets_round_trip() {
        for s in [
            presets::conservation(Scheme::LlfMp),
            presets::two_soliton(Scheme::LcnMp),
            presets::maxwellian(Scheme::LcnMp, 0.001),
            presets::comparison(Scheme::LlfMp, 1.0 / 3.0, 75.0),
            presets::space_convergence(Scheme::LcnMp),
        ] {
            let cfg = RunConfig::from_scenario(s, Path::new("out"));
            let text = cfg.to_toml().unwrap();
            assert_eq!(parse_config(&text).unwrap(), cfg, "{text}");
        }
    }
}
