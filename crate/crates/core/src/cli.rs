//! Command-line front end used by the `rlw` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::config::load_config;
use crate::error::{Result, RlwError};
use crate::harness::{
    convergence_study, presets, reference, run_scenario, Axis, Refinements, RunBundle,
};
use crate::output::{convergence_csv, emit_convergence, emit_results};
use crate::stepper::Scheme;

#[derive(Debug, Parser)]
#[command(name = "rlw", about = "Momentum-preserving pseudo-spectral RLW solvers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run one scenario file and write CSV output.
    Run {
        config: PathBuf,
        /// Overrides the output directory of the file.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        emit_plots: bool,
    },
    /// Refine one axis of a scenario and tabulate observed orders.
    Converge {
        config: PathBuf,
        #[arg(long)]
        axis: Axis,
        /// Comma-separated time steps (time axis) or point counts (space axis).
        #[arg(long, value_delimiter = ',')]
        levels: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        emit_plots: bool,
    },
    /// Run a scenario and print the invariant drift summary.
    Invariants { config: PathBuf },
    /// Error norms of the [-60, 200] comparison runs against the published rows.
    Table2 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// T = 100 errors and timings against the published rows.
    Table3 {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl clap::ValueEnum for Axis {
    fn value_variants<'a>() -> &'a [Self] {
        &[Axis::Time, Axis::Space]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            Axis::Time => "time",
            Axis::Space => "space",
        }))
    }
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code: 0 on success, 2 on usage errors, 1 on
/// any other failure.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(report) => {
            print!("{report}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            let mut src = std::error::Error::source(&e);
            while let Some(s) = src {
                eprintln!("  caused by: {s}");
                src = s.source();
            }
            1
        }
    }
}

fn execute(cmd: Command) -> Result<String> {
    match cmd {
        Command::Run {
            config,
            out,
            emit_plots,
        } => {
            let cfg = load_config(&config)?;
            let dir = out.unwrap_or(cfg.output.directory);
            let bundle = run_scenario(&cfg.scenario)?;
            let files = emit_results(&bundle, &dir, emit_plots || cfg.output.emit_plots)?;
            let mut s = summary(&bundle);
            let _ = writeln!(s, "wrote {} files to {}", files.len(), dir.display());
            Ok(s)
        }
        Command::Converge {
            config,
            axis,
            levels,
            out,
            emit_plots,
        } => {
            let cfg = load_config(&config)?;
            let levels = match levels {
                Some(raw) => parse_levels(axis, &raw)?,
                None => Refinements::default_for(axis),
            };
            let table = convergence_study(&cfg.scenario, &levels)?;
            let dir = out.unwrap_or(cfg.output.directory);
            emit_convergence(&table, &dir, emit_plots || cfg.output.emit_plots)?;
            let mut s = convergence_csv(&table);
            let _ = writeln!(s, "wrote {}", dir.join("convergence.csv").display());
            Ok(s)
        }
        Command::Invariants { config } => {
            let cfg = load_config(&config)?;
            Ok(summary(&run_scenario(&cfg.scenario)?))
        }
        Command::Table2 { out } => table2(out.as_deref()),
        Command::Table3 { out } => table3(out.as_deref()),
    }
}

fn parse_levels(axis: Axis, raw: &[String]) -> Result<Refinements> {
    let bad = |v: &str| RlwError::config(format!("invalid refinement level '{v}'"));
    Ok(match axis {
        Axis::Time => Refinements::Time(
            raw.iter()
                .map(|v| v.trim().parse::<f64>().map_err(|_| bad(v)))
                .collect::<Result<_>>()?,
        ),
        Axis::Space => Refinements::Space(
            raw.iter()
                .map(|v| v.trim().parse::<usize>().map_err(|_| bad(v)))
                .collect::<Result<_>>()?,
        ),
    })
}

fn summary(bundle: &RunBundle) -> String {
    let s = &bundle.scenario;
    let d = bundle.max_drift();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} ({}, N = {}, tau = {}, T = {})",
        s.name,
        s.scheme.label(),
        s.n_points,
        s.tau,
        s.t_final
    );
    if let (Some(first), Some(last)) = (bundle.invariants.first(), bundle.invariants.last()) {
        let _ = writeln!(out, "I1h {:.10e} -> {:.10e}  max RI1 {:.3e}", first.mass_h, last.mass_h, d.ri1);
        let _ = writeln!(
            out,
            "I2h {:.10e} -> {:.10e}  max RI2 {:.3e}",
            first.momentum_h, last.momentum_h, d.ri2
        );
        let _ = writeln!(out, "I3h {:.10e} -> {:.10e}  max RI3 {:.3e}", first.energy_h, last.energy_h, d.ri3);
    }
    if let Some(e) = bundle.errors.last() {
        let _ = writeln!(out, "error at t = {}: L2 {:.3e}  Linf {:.3e}", e.at_time, e.l2_error, e.linf_error);
    }
    let _ = writeln!(out, "linear iterations: {}", bundle.total_linear_iterations);
    out
}

fn schemes() -> [Scheme; 2] {
    [Scheme::LcnMp, Scheme::LlfMp]
}

fn table2(out: Option<&Path>) -> Result<String> {
    let t_final = *reference::COMPARISON_TIMES.last().unwrap_or(&75.0);
    let jobs: Vec<(Scheme, f64)> = [1.0 / 3.0, 0.5]
        .into_iter()
        .flat_map(|c| schemes().into_iter().map(move |s| (s, c)))
        .collect();
    let bundles: Vec<RunBundle> = jobs
        .par_iter()
        .map(|&(s, c)| run_scenario(&presets::comparison(s, c, t_final)))
        .collect::<Result<_>>()?;

    let mut report = String::from(
        "Error norms, [-60, 200], tau = 0.05, h = 0.1. Rows marked * are computed here; the rest are transcribed literature values.\n",
    );
    let mut csv = String::from("method,source,norm,c,t,value\n");
    for c in [1.0 / 3.0, 0.5] {
        let _ = writeln!(report, "\nc = {c:.4}\n{:<10}{:<6}{:>12}{:>12}{:>12}", "method", "norm", "T=25", "T=50", "T=75");
        for norm in ["L2", "Linf"] {
            for ((s, cc), b) in jobs.iter().zip(&bundles) {
                if *cc != c {
                    continue;
                }
                let vals: Vec<f64> = reference::COMPARISON_TIMES
                    .iter()
                    .map(|&t| {
                        b.error_at(t)
                            .map(|e| if norm == "L2" { e.l2_error } else { e.linf_error })
                            .unwrap_or(f64::NAN)
                    })
                    .collect();
                push_row(&mut report, &mut csv, &format!("{}*", s.label()), "computed", norm, c, &vals);
            }
            for r in reference::COMPARISON.iter().filter(|r| r.norm == norm && r.c == c) {
                push_row(&mut report, &mut csv, r.method, "transcribed", norm, c, &r.values);
            }
        }
    }
    if let Some(dir) = out {
        write_report(dir, "table2.csv", &csv)?;
    }
    Ok(report)
}

fn push_row(report: &mut String, csv: &mut String, method: &str, source: &str, norm: &str, c: f64, vals: &[f64]) {
    let _ = write!(report, "{method:<10}{norm:<6}");
    for (v, t) in vals.iter().zip(reference::COMPARISON_TIMES) {
        let _ = write!(report, "{v:>12.3e}");
        let _ = writeln!(csv, "{},{source},{norm},{c:.15e},{t},{v:.15e}", method.trim_end_matches('*'));
    }
    report.push('\n');
}

fn table3(out: Option<&Path>) -> Result<String> {
    let t_final = 100.0;
    let mut report = String::from(
        "T = 100, [-60, 200], tau = 0.05, h = 0.1. Rows marked * are computed here; the rest are transcribed literature values.\nCPU seconds are machine dependent.\n",
    );
    let mut csv = String::from("method,source,c,l2,linf,cpu_seconds\n");
    for c in [0.1, 0.03] {
        let _ = writeln!(report, "\nc = {c}\n{:<10}{:>12}{:>12}{:>10}", "method", "L2", "Linf", "CPU(s)");
        for s in schemes() {
            let start = Instant::now();
            let b = run_scenario(&presets::comparison(s, c, t_final))?;
            let secs = start.elapsed().as_secs_f64();
            let e = b
                .error_at(t_final)
                .copied()
                .ok_or_else(|| RlwError::Numerical("no error recorded at T = 100".into()))?;
            let _ = writeln!(report, "{:<10}{:>12.3e}{:>12.3e}{secs:>10.2}", format!("{}*", s.label()), e.l2_error, e.linf_error);
            let _ = writeln!(csv, "{},computed,{c},{:.15e},{:.15e},{secs:.3}", s.label(), e.l2_error, e.linf_error);
        }
        for r in reference::LONG_RUN.iter().filter(|r| r.c == c) {
            let _ = writeln!(report, "{:<10}{:>12.3e}{:>12.3e}{:>10.2}", r.method, r.l2, r.linf, r.cpu_seconds);
            let _ = writeln!(csv, "{},transcribed,{c},{:.15e},{:.15e},{}", r.method, r.l2, r.linf, r.cpu_seconds);
        }
    }
    if let Some(dir) = out {
        write_report(dir, "table3.csv", &csv)?;
    }
    Ok(report)
}

fn write_report(dir: &Path, name: &str, body: &str) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| RlwError::io(dir, e))?;
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| RlwError::io(&path, e))
}

