//! Cross-checks the Hamiltonian stencil against an independently assembled
//! dense matrix: Hermiticity of the dense form, and entrywise equality of
//! the two matrix–vector products.

mod common;

use std::f64::consts::{FRAC_PI_2, PI};

use ndarray::Array1;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

use common::{dense_hamiltonian, pseudo_random_state};
use floquet_lattice::{apply_hamiltonian, LatticeParams, SpinorWavefunction};

fn params(n_sites: usize, soc_angle: f64, impurity: f64, drive_amplitude: f64) -> LatticeParams {
    LatticeParams {
        n_sites,
        soc_angle,
        impurity,
        drive_amplitude,
        ..LatticeParams::default()
    }
    .validated()
    .unwrap()
}

fn worst_component_difference(p: &LatticeParams, psi: &SpinorWavefunction, t: f64) -> f64 {
    // The library routine returns the Schrödinger right-hand side −iH·ψ.
    let stencil = apply_hamiltonian(t, psi, p).unwrap();
    let dense: Array1<C64> = dense_hamiltonian(p, t).dot(psi.amplitudes());
    stencil
        .iter()
        .zip(dense.iter())
        .map(|(a, b)| (a - C64::new(0.0, -1.0) * b).norm())
        .fold(0.0, f64::max)
}

#[test]
fn dense_matrix_is_hermitian_for_all_coupling_angles() {
    for &alpha in &[0.0, 0.3, 0.6, FRAC_PI_2, 2.2, PI] {
        let p = params(9, alpha, 24.0, 48.1);
        for &t in &[0.0, 0.07, 0.11, 0.29] {
            let h = dense_hamiltonian(&p, t);
            for i in 0..p.dim() {
                for j in 0..p.dim() {
                    let defect = (h[(i, j)] - h[(j, i)].conj()).norm();
                    assert!(defect < 1e-15, "H[{i},{j}] breaks Hermiticity by {defect}");
                }
            }
        }
    }
}

#[test]
fn stencil_matches_dense_matrix_at_default_parameters() {
    for &alpha in &[0.0, 0.6, FRAC_PI_2] {
        let p = params(21, alpha, 24.0, 48.1);
        let period = p.period();
        for (k, &t) in [0.0, 0.11, period / 3.0, 2.7].iter().enumerate() {
            let psi = pseudo_random_state(p.dim(), 41 + k as u64);
            let diff = worst_component_difference(&p, &psi, t);
            assert!(
                diff < 1e-13,
                "stencil deviates from the dense matrix by {diff} at α={alpha}, t={t}"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn stencil_matches_dense_matrix_across_parameters(
        half_width in 3usize..6,
        alpha in 0.0..PI,
        drive_ratio in 0.0..4.0f64,
        impurity_ratio in -1.5..1.5f64,
        t in 0.0..1.0f64,
        seed in 1u64..u64::MAX,
    ) {
        let p = params(
            2 * half_width + 1,
            alpha,
            impurity_ratio * 20.0,
            drive_ratio * 20.0,
        );
        let psi = pseudo_random_state(p.dim(), seed);
        let diff = worst_component_difference(&p, &psi, t);
        prop_assert!(diff < 1e-13, "stencil deviates by {diff}");
    }
}
