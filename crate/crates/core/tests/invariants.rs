mod common;

use common::*;
use rlw_core::invariants::momentum_nodal_form;
use rlw_core::{
    analytic_two_soliton_momentum, compute_invariants, initial_profile, Grid, InitialCondition, RlwParams,
    SolitonSpec, SpectralOperators, TwoSolitonSpec,
};

const PAIR: TwoSolitonSpec = TwoSolitonSpec { c1: 1.0, c2: 0.5, x1: -20.0, x2: 15.0 };

#[test]
fn both_momentum_forms_agree() {
    let mut r = rng(41);
    for n in [16, 64, 256] {
        let g = Grid::new(-7.0, 11.0, n).unwrap();
        let ops = SpectralOperators::new(&g);
        for i in 0..50 {
            let p = RlwParams::new(1.0, 0.1 + 0.05 * i as f64, 1.0).unwrap();
            let u = if i % 2 == 0 { random_vec(&mut r, n) } else { random_smooth(&mut r, &g, n / 4, 2.0) };
            let norm_form = compute_invariants(&p, &ops, &u, 0.0).unwrap().momentum_h;
            let nodal = momentum_nodal_form(&p, &ops, &u).unwrap();
            assert!(norm_form >= 0.0);
            assert!((norm_form - nodal).abs() <= 1e-12 * norm_form, "{norm_form} {nodal}");
        }
    }
}

#[test]
fn constant_state_functionals() {
    let g = Grid::new(0.0, 5.0, 32).unwrap();
    let ops = SpectralOperators::new(&g);
    let p = RlwParams::new(0.4, 2.0, 1.5).unwrap();
    let k = -1.25;
    let r = compute_invariants(&p, &ops, &[k; 32], 3.0).unwrap();
    assert!((r.mass_h - k * 5.0).abs() < 1e-13);
    assert!((r.momentum_h - k * k * 5.0).abs() < 1e-12);
    assert!((r.energy_h - 5.0 * (1.5 * k * k * k / 6.0 + 0.2 * k * k)).abs() < 1e-13);
    assert_eq!(r.time, 3.0);
}

#[test]
fn printed_closed_form_value() {
    let v = analytic_two_soliton_momentum(&PAIR, 1.0, 1.0);
    assert!((v - 24.210182).abs() <= 1e-6, "{v}");
    let doubled = TwoSolitonSpec { c1: 2.0, c2: 1.0, ..PAIR };
    let m = |c: f64| 0.5 * (c / (c + 1.0)).sqrt();
    let direct: f64 = [2.0, 1.0].iter().map(|&c| 6.0 * c * c / m(c) + 24.0 * m(c) * c * c / 5.0).sum();
    assert!((analytic_two_soliton_momentum(&doubled, 1.0, 1.0) - direct).abs() < 1e-12);
    assert!((analytic_two_soliton_momentum(&doubled, 1.0, 1.0) - 2.0 * v).abs() > 1.0);
}

#[test]
fn discrete_two_soliton_momentum_matches_quadrature() {
    let quad = two_soliton_momentum_quadrature(1.0, 0.5, -20.0, 15.0, 1.0, -60.0, 280.0);
    assert!((quad - 48.420357).abs() <= 1e-4, "{quad}");
    let closed = analytic_two_soliton_momentum(&PAIR, 1.0, 1.0);
    assert!((quad - 2.0 * closed).abs() <= 1e-4);

    let g = Grid::new(-60.0, 280.0, 3400).unwrap();
    let ops = SpectralOperators::new(&g);
    let p = RlwParams::default();
    let u = initial_profile(&InitialCondition::TwoSoliton(PAIR), &p, &g).unwrap();
    let i2h = compute_invariants(&p, &ops, &u, 0.0).unwrap().momentum_h;
    assert!((i2h - 48.420357).abs() <= 1e-4, "{i2h}");
}

/// For `u = 3c·sech²(kξ)`: `∫u² = 12c²/k` and `∫u_x² = 48c²k/5`.
#[test]
fn resolved_profile_matches_continuum_momentum() {
    let p = RlwParams::default();
    for c in [1.0 / 3.0, 0.5, 1.0] {
        let s = SolitonSpec { c, x0: 20.0 };
        let k = s.width_scale(&p);
        let exact = 12.0 * c * c / k + 48.0 * c * c * k * p.sigma / 5.0;
        let g = Grid::new(-60.0, 200.0, 2600).unwrap();
        let ops = SpectralOperators::new(&g);
        let u = initial_profile(&InitialCondition::SingleSoliton(s), &p, &g).unwrap();
        let i2h = compute_invariants(&p, &ops, &u, 0.0).unwrap().momentum_h;
        assert!((i2h - exact).abs() <= 1e-8 * exact, "c = {c}: {i2h} vs {exact}");
    }
}
