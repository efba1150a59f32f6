//! CSV and gnuplot emission.
//!
//! Reals are written as `{:.15e}` (16 significant digits), every file has a
//! header row and ends with a newline. Missing orders are left blank.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{Result, RlwError};
use crate::harness::{Axis, ConvergenceTable, RunBundle};

fn num(x: f64) -> String {
    format!("{x:.15e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// File-name form of a time: rounded to 1e-9 and printed without padding.
pub fn time_label(t: f64) -> String {
    let r = (t * 1e9).round() / 1e9;
    format!("{}", if r == 0.0 { 0.0 } else { r })
}

fn write_file(dir: &Path, name: &str, body: &str, written: &mut Vec<PathBuf>) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| RlwError::io(&path, e))?;
    written.push(path);
    Ok(())
}

fn ensure_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| RlwError::io(dir, e))
}

pub fn solution_csv(nodes: &[f64], values: &[f64]) -> String {
    let mut out = String::from("x,u\n");
    for (x, u) in nodes.iter().zip(values) {
        let _ = writeln!(out, "{},{}", num(*x), num(*u));
    }
    out
}

pub fn invariants_csv(bundle: &RunBundle) -> String {
    let mut out = String::from("t,I1h,I2h,I3h,RI1,RI2,RI3\n");
    for (r, d) in bundle.invariants.iter().zip(bundle.drifts()) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            num(r.time),
            num(r.mass_h),
            num(r.momentum_h),
            num(r.energy_h),
            num(d.ri1),
            num(d.ri2),
            num(d.ri3)
        );
    }
    out
}

pub fn errors_csv(bundle: &RunBundle) -> String {
    let mut out = String::from("t,l2,linf\n");
    for e in &bundle.errors {
        let _ = writeln!(out, "{},{},{}", num(e.at_time), num(e.l2_error), num(e.linf_error));
    }
    out
}

pub fn convergence_csv(table: &ConvergenceTable) -> String {
    let mut out = String::from("delta,l2,linf,order_l2,order_linf\n");
    for r in &table.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            num(r.delta),
            num(r.l2_error),
            num(r.linf_error),
            opt(r.order_l2),
            opt(r.order_linf)
        );
    }
    out
}

/// Writes snapshots, invariants and (when the scenario has an exact
/// solution) errors into `dir`. Returns the paths written.
pub fn emit_results(bundle: &RunBundle, dir: &Path, emit_plots: bool) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut written = Vec::new();
    let mut solution_files = Vec::new();
    for snap in &bundle.snapshots {
        let name = format!("solution_{}.csv", time_label(snap.time));
        write_file(dir, &name, &solution_csv(&bundle.nodes, &snap.values), &mut written)?;
        solution_files.push((name, snap.time));
    }
    write_file(dir, "invariants.csv", &invariants_csv(bundle), &mut written)?;
    let with_errors = bundle.scenario.exact_available();
    if with_errors {
        write_file(dir, "errors.csv", &errors_csv(bundle), &mut written)?;
    }
    if emit_plots {
        write_file(dir, "solution.gp", &solution_script(&solution_files), &mut written)?;
        write_file(dir, "invariants.gp", INVARIANTS_SCRIPT, &mut written)?;
        if with_errors {
            write_file(dir, "errors.gp", ERRORS_SCRIPT, &mut written)?;
        }
    }
    Ok(written)
}

pub fn emit_convergence(table: &ConvergenceTable, dir: &Path, emit_plots: bool) -> Result<Vec<PathBuf>> {
    ensure_dir(dir)?;
    let mut written = Vec::new();
    write_file(dir, "convergence.csv", &convergence_csv(table), &mut written)?;
    if emit_plots {
        let xlabel = match table.axis {
            Axis::Time => "tau",
            Axis::Space => "h",
        };
        let script = format!(
            "set datafile separator ','\nset logscale xy\nset key autotitle columnhead\nset xlabel '{xlabel}'\nset ylabel 'error'\nset terminal pngcairo size 800,600\nset output 'convergence.png'\nplot 'convergence.csv' using 1:2 with linespoints title 'L2', \\\n     '' using 1:3 with linespoints title 'Linf'\n"
        );
        write_file(dir, "convergence.gp", &script, &mut written)?;
    }
    Ok(written)
}

fn solution_script(files: &[(String, f64)]) -> String {
    let mut out = String::from(
        "set datafile separator ','\nset key autotitle columnhead\nset xlabel 'x'\nset ylabel 'u'\nset terminal pngcairo size 900,500\nset output 'solution.png'\n",
    );
    if files.is_empty() {
        return out;
    }
    let parts: Vec<String> = files
        .iter()
        .map(|(f, t)| format!("'{f}' using 1:2 with lines title 't = {}'", time_label(*t)))
        .collect();
    let _ = writeln!(out, "plot {}", parts.join(", \\\n     "));
    out
}

const INVARIANTS_SCRIPT: &str = "set datafile separator ','
set key autotitle columnhead
set logscale y
set format y '%.0e'
set xlabel 't'
set ylabel 'relative drift'
set terminal pngcairo size 900,500
set output 'invariants.png'
plot 'invariants.csv' using 1:5 with lines title 'RI1', \\
     '' using 1:6 with lines title 'RI2', \\
     '' using 1:7 with lines title 'RI3'
";

const ERRORS_SCRIPT: &str = "set datafile separator ','
set key autotitle columnhead
set xlabel 't'
set ylabel 'error'
set terminal pngcairo size 900,500
set output 'errors.png'
plot 'errors.csv' using 1:2 with linespoints title 'L2', \\
     '' using 1:3 with linespoints title 'Linf'
";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_labels() {
        assert_eq!(time_label(0.0), "0");
        assert_eq!(time_label(6.000000000001), "6");
        assert_eq!(time_label(0.025 * 3.0), "0.075");
        assert_eq!(time_label(-0.0), "0");
    }

    #[test]
    fn number_format_has_sixteen_digits() {
        assert_eq!(num(1.0 / 3.0), "3.333333333333333e-1");
        assert_eq!(num(-2.5e-12), "-2.500000000000000e-12");
    }

    #[test]
    fn convergence_rows_leave_first_order_blank() {
        let t = ConvergenceTable::from_errors(Axis::Time, &[(0.1, 1e-2, 2e-2), (0.05, 2.5e-3, 5e-3)]);
        let csv = convergence_csv(&t);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "delta,l2,linf,order_l2,order_linf");
        assert!(lines[1].ends_with(",,"));
        assert!(lines[2].ends_with("2.000000000000000e0,2.000000000000000e0"));
        assert!(csv.ends_with('\n'));
    }
}
