//! Cross-module invariants that don't fit a single unit-test scope: solver
//! cross-validation, conservation along evolution, and a few randomized
//! structural properties.

use ndarray::Array1;
use num_complex::Complex64;
use proptest::prelude::*;

use strobo_core::classical::harmonic_oscillator;
use strobo_core::clock::{quadrature, ClockDistribution};
use strobo_core::evolution::{discrete_step, evolution_matrix, expectation};
use strobo_core::lattice::{
    centered_eigenvalues, centered_first_row, centered_generator, forward_eigenvalues,
    forward_first_row, forward_generator, observable_operator, AngularGrid, EffectiveHamiltonian,
    PiGrid,
};
use strobo_core::spectral::{circulant_eig, eig, match_nearest_bijective};
use strobo_core::su2::{emergent_hamiltonian, qp_operators, spin_matrices, OscCoefficients};
use strobo_core::types::{OperatorMatrix, PhasePolynomial, PolyTerm, StateVector};

/// The symbol fast path and the dense solver are independent routes to the
/// same spectra; they must agree on every shift generator.
#[test]
fn circulant_fast_path_cross_validates_dense_solver() {
    for &n in &[64usize, 256, 1024] {
        let grid = AngularGrid::new(n, 1.3, 0.27).unwrap();

        let dense = eig(&forward_generator(&grid)).unwrap().eigenvalues;
        let symbol = circulant_eig(&forward_first_row(&grid), grid.delta());
        let matched = match_nearest_bijective(&dense, &symbol).unwrap();
        let worst = matched
            .iter()
            .zip(symbol.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-9, "one-sided N={n}: routes disagree by {worst:.3e}");

        let dense = eig(&centered_generator(&grid)).unwrap().eigenvalues;
        let symbol = circulant_eig(&centered_first_row(&grid), grid.delta());
        let mut dense_re: Vec<f64> = dense.iter().map(|z| z.re).collect();
        let mut symbol_re: Vec<f64> = symbol.iter().map(|z| z.re).collect();
        dense_re.sort_by(f64::total_cmp);
        symbol_re.sort_by(f64::total_cmp);
        let worst = dense_re
            .iter()
            .zip(symbol_re.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        assert!(worst <= 1e-9, "centered N={n}: routes disagree by {worst:.3e}");
    }
}

/// In the spin setting each single-oscillator energy commutes with the full
/// generator exactly, so its expectation must stay put over many clock-averaged
/// steps.
#[test]
fn spin_oscillator_energy_conserved_over_hundred_steps() {
    let two_s = 2u32;
    let omega = 1.0;
    let rep = spin_matrices(two_s);
    let ham = emergent_hamiltonian(&rep, omega).unwrap();
    let coeffs = OscCoefficients::canonical(two_s, omega).unwrap();
    let (q, p) = qp_operators(&rep, &coeffs).unwrap();
    let single = p
        .matmul(&p)
        .unwrap()
        .scaled(Complex64::new(0.5, 0.0))
        .add(&q.matmul(&q).unwrap().scaled(Complex64::new(0.5 * omega * omega, 0.0)))
        .unwrap();
    let dim = rep.dim();
    let id = OperatorMatrix::identity(dim, single.basis().clone()).unwrap();
    let lifted_raw = id.kron(&single).unwrap().kron(&id).unwrap();
    // Same entries, retagged to the generator's tensor nesting.
    let lifted = OperatorMatrix::new(lifted_raw.entries().clone(), ham.basis().clone()).unwrap();

    let amp = Array1::from_shape_fn(ham.dim(), |i| {
        Complex64::new((0.17 * i as f64 + 0.3).sin(), (0.29 * i as f64).cos())
    });
    let mut psi = StateVector::new(amp, ham.basis().clone()).unwrap().normalized();
    let clock = ClockDistribution::gaussian(1.0).unwrap();
    let e0 = expectation(&psi, &lifted).unwrap();
    let mut drift = 0.0f64;
    for _ in 0..100 {
        psi = discrete_step(&psi, &ham, &clock, 0.05, 16).unwrap().normalized();
        let e = expectation(&psi, &lifted).unwrap();
        drift = drift.max((e - e0).norm());
    }
    assert!(drift <= 1e-9, "energy drift {drift:.3e} over 100 steps");
}

/// On the grid the conservation is only asymptotic: the drift of <H(phi_hat)>
/// along the evolution shrinks as the grid refines.
#[test]
fn grid_energy_drift_vanishes_under_refinement() {
    let sys = harmonic_oscillator(1.0, 0.5);
    let energy_poly = PhasePolynomial::new(
        2,
        vec![
            PolyTerm { coeff: 0.5, powers: vec![0, 2] },
            PolyTerm { coeff: 0.5, powers: vec![2, 0] },
        ],
    )
    .unwrap();
    let mut drifts = Vec::new();
    for sites in [16usize, 20, 24] {
        let grid = PiGrid::square(2, sites, 20.0).unwrap();
        let gen = EffectiveHamiltonian::new(&sys, grid.clone()).unwrap().to_matrix().unwrap();
        assert!(gen.is_hermitian());
        let energy = observable_operator(&energy_poly, &grid).unwrap();
        let psi = grid.gaussian_state(1.0).unwrap();
        let e0 = expectation(&psi, &energy).unwrap();
        let mut drift = 0.0f64;
        for k in 1..=10 {
            let tau = 0.1 * k as f64;
            let evolved = evolution_matrix(&gen, tau).unwrap().apply(&psi).unwrap().normalized();
            let e = expectation(&evolved, &energy).unwrap();
            drift = drift.max((e - e0).norm());
        }
        drifts.push(drift);
    }
    assert!(
        drifts[0] > drifts[1] && drifts[1] > drifts[2],
        "drifts not decreasing: {drifts:?}"
    );
    assert!(drifts[2] < drifts[0] / 50.0, "refinement too weak: {drifts:?}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Spectral link between the two discretizations at arbitrary parameters.
    #[test]
    fn forward_and_centered_spectra_are_linked(
        n in 2usize..40,
        omega in 0.1f64..8.0,
        delta in -1.5f64..1.5,
    ) {
        let grid = AngularGrid::new(n, omega, delta).unwrap();
        let fwd = forward_eigenvalues(&grid);
        let cen = centered_eigenvalues(&grid);
        for (f, c) in fwd.iter().zip(cen.iter()) {
            prop_assert!((f.re - c).abs() <= 1e-12 * (1.0 + omega * n as f64));
            prop_assert!(f.im >= -1e-14);
        }
        prop_assert!(centered_generator(&grid).is_hermitian());
        prop_assert!(!forward_generator(&grid).is_hermitian());
    }

    /// Quadrature rules are normalized with strictly increasing nodes for
    /// every distribution kind and node count.
    #[test]
    fn quadrature_rules_are_normalized(
        nodes in 1usize..200,
        gamma in 0.05f64..20.0,
        width in 0.05f64..20.0,
    ) {
        for dist in [
            ClockDistribution::Delta,
            ClockDistribution::gaussian(gamma).unwrap(),
            ClockDistribution::uniform(width).unwrap(),
        ] {
            let rule = quadrature(&dist, nodes).unwrap();
            let total: f64 = rule.weights().iter().sum();
            prop_assert!((total - 1.0).abs() <= 1e-10);
            prop_assert!(rule.weights().iter().all(|&w| w >= 0.0));
            prop_assert!(rule.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    /// The twisted symbol route stays on the closed forms at random twists.
    #[test]
    fn symbol_route_matches_formulas(
        n in 2usize..128,
        omega in 0.1f64..5.0,
        delta in -1.0f64..1.0,
    ) {
        let grid = AngularGrid::new(n, omega, delta).unwrap();
        let sym = circulant_eig(&forward_first_row(&grid), delta);
        let formula = forward_eigenvalues(&grid);
        for (s, f) in sym.iter().zip(formula.iter()) {
            prop_assert!((s - f).norm() <= 1e-9 * (1.0 + omega * n as f64));
        }
    }
}
