mod common;

use std::path::Path;

use rlw_core::harness::{count_peaks, find_peaks, observed_order, presets, reference};
use rlw_core::{
    convergence_study, error_norms, exact_soliton, parse_config, run_scenario, Axis, ConvergenceTable, Grid,
    InitialCondition, Refinements, RlwParams, Scenario, Scheme, SolitonSpec,
};

#[test]
fn sampled_exact_solution_has_zero_error() {
    let g = Grid::new(-30.0, 30.0, 256).unwrap();
    let p = RlwParams::default();
    let s = SolitonSpec { c: 0.5, x0: -3.0 };
    let u = g.sample(|x| exact_soliton(&p, &s, x, 2.0)).unwrap();
    let e = error_norms(&u, |x| exact_soliton(&p, &s, x, 2.0), &g, 2.0).unwrap();
    assert!(e.l2_error <= 1e-14 && e.linf_error <= 1e-14);
    assert_eq!(e.at_time, 2.0);
}

#[test]
fn order_formula_on_synthetic_data() {
    let taus = [0.1, 0.05, 0.025, 0.0125];
    let data: Vec<(f64, f64, f64)> = taus.iter().map(|&t| (t, t * t, 3.0 * t * t)).collect();
    let table = ConvergenceTable::from_errors(Axis::Time, &data);
    assert!(table.rows[0].order_l2.is_none() && table.rows[0].order_linf.is_none());
    for row in &table.rows[1..] {
        assert!((row.order_l2.unwrap() - 2.0).abs() < 1e-12);
        assert!((row.order_linf.unwrap() - 2.0).abs() < 1e-12);
    }
    assert!((observed_order(1e-2, 2.5e-3, 0.1, 0.05) - 2.0).abs() < 1e-12);
}

#[test]
fn propagation_peak_travels_to_eight() {
    for scheme in [Scheme::LcnMp, Scheme::LlfMp] {
        let s = presets::propagation(scheme);
        let b = run_scenario(&s).unwrap();
        let last = b.final_state().unwrap();
        assert!((last.time - 6.0).abs() < 1e-12);
        let u = last.values.values();
        let j = (0..u.len()).max_by(|&a, &b| u[a].total_cmp(&u[b])).unwrap();
        // Vertex of the parabola through the three largest samples.
        let (l, c, r) = (u[j - 1], u[j], u[j + 1]);
        let h = s.grid().unwrap().h();
        let offset = 0.5 * (l - r) / (l - 2.0 * c + r);
        let x_peak = b.nodes[j] + offset * h;
        let height = c - 0.25 * (l - r) * offset;
        assert!((x_peak - 8.0).abs() < 0.02, "{scheme:?}: peak at {x_peak}");
        assert!((height - 1.0).abs() <= 1e-2, "{scheme:?}: amplitude {height}");
    }
}

#[test]
fn recording_cadence() {
    let s = Scenario {
        t_final: 0.5,
        tau: 0.05,
        record_every: 3,
        snapshot_every: Some(4),
        ..presets::conservation(Scheme::LlfMp)
    };
    let b = run_scenario(&s).unwrap();
    let times: Vec<f64> = b.invariants.iter().map(|r| r.time).collect();
    let want = [0.0, 0.15, 0.3, 0.45, 0.5];
    assert_eq!(times.len(), want.len());
    for (a, w) in times.iter().zip(want) {
        assert!((a - w).abs() < 1e-12);
    }
    let steps: Vec<usize> = b.snapshots.iter().map(|s| s.step).collect();
    assert_eq!(steps, vec![0, 4, 8, 10]);
    assert_eq!(b.errors.len(), b.invariants.len());
    assert_eq!(b.drifts()[0].ri2, 0.0);

    let maxwell = Scenario { t_final: 0.1, ..presets::maxwellian(Scheme::LcnMp, 0.04) };
    assert!(run_scenario(&maxwell).unwrap().errors.is_empty());
}

#[test]
fn invalid_scenarios_are_rejected() {
    let base = presets::conservation(Scheme::LcnMp);
    let bad = [
        Scenario { t_final: 1.01, tau: 0.025, ..base.clone() },
        Scenario { record_every: 0, ..base.clone() },
        Scenario { n_points: 255, ..base.clone() },
        Scenario { x_right: -30.0, ..base.clone() },
    ];
    for s in bad {
        assert!(run_scenario(&s).is_err(), "{s:?}");
    }
}

#[test]
fn time_study_recovers_second_order() {
    let base = Scenario {
        ic: InitialCondition::SingleSoliton(SolitonSpec { c: 0.5, x0: 0.0 }),
        n_points: 256,
        ..presets::time_convergence(Scheme::LlfMp)
    };
    let t = convergence_study(&base, &Refinements::Time(vec![0.1, 0.05, 0.025])).unwrap();
    assert_eq!(t.axis, Axis::Time);
    for row in &t.rows[1..] {
        let o = row.order_l2.unwrap();
        assert!((1.8..=2.2).contains(&o), "{o}");
    }
    let t = convergence_study(&base, &Refinements::Space(vec![16, 24, 32])).unwrap();
    assert!((t.rows[0].delta - 60.0 / 16.0).abs() < 1e-12);
    assert!(t.rows.windows(2).all(|w| w[1].l2_error < w[0].l2_error));

    let maxwell = presets::maxwellian(Scheme::LcnMp, 0.04);
    assert!(convergence_study(&maxwell, &Refinements::default_time()).is_err());
}

#[test]
fn peak_detection_rules() {
    let x: Vec<f64> = (0..400).map(|i| i as f64 * 0.1).collect();
    let bump = |c: f64, a: f64| move |t: f64| a * (-(t - c) * (t - c)).exp();
    let (b1, b2, b3) = (bump(5.0, 1.0), bump(15.0, 0.3), bump(25.0, 0.04));
    let u: Vec<f64> = x.iter().map(|&t| b1(t) + b2(t) + b3(t)).collect();
    let peaks = find_peaks(&u, 0.05, 0.02);
    assert_eq!(peaks.len(), 2);
    assert_eq!(peaks[0].index, 50);
    assert!((peaks[1].height - 0.3).abs() < 1e-6);
    // A ripple on a shoulder is not a separate wave.
    let v: Vec<f64> = x.iter().map(|&t| b1(t) + 0.005 * (8.0 * t).sin()).collect();
    assert_eq!(count_peaks(&v), 1);
    assert_eq!(count_peaks(&[0.0, 1.0]), 0);
}

#[test]
fn shipped_scenario_files_match_presets() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let registry = presets::registry();
    let mut seen = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        let stem = path.file_stem().unwrap().to_str().unwrap().to_string();
        let cfg = parse_config(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let (_, preset) = registry.iter().find(|(k, _)| *k == stem).unwrap_or_else(|| panic!("{stem}"));
        assert_eq!(&cfg.scenario, preset, "{stem}");
        assert_eq!(cfg.output.directory, Path::new("out").join(&stem));
        seen += 1;
    }
    assert_eq!(seen, registry.len());
}

#[test]
fn lcn_is_more_accurate_on_comparison_runs() {
    for c in [1.0 / 3.0, 0.5] {
        let lcn = run_scenario(&presets::comparison(Scheme::LcnMp, c, 75.0)).unwrap();
        let llf = run_scenario(&presets::comparison(Scheme::LlfMp, c, 75.0)).unwrap();
        for t in reference::COMPARISON_TIMES {
            let (a, b) = (lcn.error_at(t).unwrap(), llf.error_at(t).unwrap());
            assert!(a.l2_error <= b.l2_error, "c = {c}, t = {t}");
        }
    }
}
