//! End-to-end use of the crate-root aliases.

use hardy_core::bargmann::{bargmann_numeric, expansion_to_taylor};
use hardy_core::decay_analysis::{decay_fit, thm21_bound};
use hardy_core::gaussian_family::{e_membership, example_2_3, hermite_coeffs_gaussian};
use hardy_core::hermite_basis::{analyze, synthesize};
use hardy_core::{Complex64, Gaussian, Gaussian32, Grid, Grid32, State};

#[test]
fn gaussian_round_trip_through_every_representation() {
    let grid = Grid::default();
    let g = Gaussian::new(Complex64::new(0.8, 0.1), Complex64::new(0.6, 0.3)).unwrap();
    let closed = hermite_coeffs_gaussian(&g, 60);
    let numeric = analyze(&g.sample(&grid), 60).unwrap();
    assert!(closed.max_abs_diff(&numeric) < 1e-12);

    let back = synthesize(&closed, &grid);
    assert!(back.max_abs_diff(&g.sample(&grid)) < 1e-10);

    let taylor = expansion_to_taylor(&closed);
    let w = Complex64::new(0.7, -0.4);
    let series = taylor.eval(w);
    assert!(!series.truncated);
    assert!((series.value - bargmann_numeric(&g.sample(&grid), w).unwrap()).norm() < 1e-10);
}

#[test]
fn evolved_state_keeps_its_norm_and_bound() {
    let g = example_2_3(0.3).unwrap();
    let a = 0.6f64.tanh();
    let c = e_membership(&g, a).constant;
    let e = hermite_coeffs_gaussian(&g, 80);
    for k in 1..=80 {
        assert!(e.coeffs[k].norm() <= thm21_bound(k, a, c).unwrap());
    }
    let fit = decay_fit(&e, (10, 80)).unwrap();
    assert!((fit.alpha_hat - 0.3).abs() < 2e-3);

    let s = State::gaussian(g);
    let n0 = s.coefficients(80).norm_sq();
    for t in [0.3, 1.1, 2.9] {
        assert!((s.at(t).coefficients(80).norm_sq() - n0).abs() < 1e-12);
    }
}

#[test]
fn single_precision_path() {
    let grid = Grid32::new(8.0, 512).unwrap();
    let g = Gaussian32::g(0.5).unwrap();
    let e = analyze(&g.sample(&grid), 10).unwrap();
    let want = hermite_coeffs_gaussian(&g, 10);
    assert!(e.max_abs_diff(&want) < 1e-5);
}
