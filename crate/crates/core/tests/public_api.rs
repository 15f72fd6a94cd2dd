use std::f64::consts::{FRAC_PI_4, FRAC_PI_8, SQRT_2};

use approx::assert_abs_diff_eq;
use chsh_core::bound::{bound_value, certify, vw_matrix};
use chsh_core::entanglement::{concurrence, entanglement, eof};
use chsh_core::nonlocality::{brute_force_nonlocality, chsh_value, nonlocality, optimal_chsh};
use chsh_core::qmat::{ComplexMatrix, Tolerances};
use chsh_core::shared::{operator_sharing_pair, shared_conditions};
use chsh_core::states::{
    apply_local_unitary, gamma_state, lambda_state, omega_state, phi_state, vw_state, DensityMatrix, StateSampler,
    Unitary2,
};
use chsh_core::Error;

const TOL: Tolerances = Tolerances::DEFAULT;

#[test]
fn werner_pipeline() {
    let rho = DensityMatrix::werner(0.8).unwrap();
    let e = entanglement(&rho, &TOL).unwrap();
    assert_abs_diff_eq!(e.concurrence, 0.7, epsilon = 1e-12);
    assert_abs_diff_eq!(e.eof, 0.591857407170677, epsilon = 1e-12);
    let n = nonlocality(&rho, &TOL).value;
    assert_abs_diff_eq!(n, 1.6 * SQRT_2, epsilon = 1e-12);
    let q = certify(&rho, &TOL).unwrap();
    assert_abs_diff_eq!(q.bound, bound_value(0.7).unwrap(), epsilon = 0.0);
    assert_abs_diff_eq!(q.slack, 0.178569423349789, epsilon = 1e-12);
    assert!(!q.operational_member);
    assert_eq!(q.structural_member, Some(false));
}

#[test]
fn werner_oracle_cross_check() {
    let rho = DensityMatrix::werner(0.8).unwrap();
    let brute = brute_force_nonlocality(&rho, 64, 50, 9).unwrap();
    assert_abs_diff_eq!(brute, nonlocality(&rho, &TOL).value, epsilon = 1e-3);
}

#[test]
fn pure_families_saturate() {
    let states = [gamma_state(0.4), omega_state(0.4), lambda_state(0.4, -1.0).unwrap(), phi_state(0.4, 1.0).unwrap()];
    for psi in states {
        let q = certify(&psi.density(), &TOL).unwrap();
        assert!(q.slack.abs() <= 1e-10, "{q:?}");
        assert!(q.operational_member);
        assert_eq!(q.structural_member, Some(true));
    }
}

#[test]
fn family_rejects_bad_sign() {
    assert!(matches!(lambda_state(0.4, 2.0), Err(Error::BadSign(_))));
}

#[test]
fn rank_two_family_recovers_parameters() {
    let mut s = StateSampler::new(3);
    let rho = vw_state(0.75, 0.3).unwrap();
    let moved = apply_local_unitary(&rho, &s.unitary(), &s.unitary());
    let q = certify(&moved, &TOL).unwrap();
    assert_eq!(q.structural_member, Some(true));
    let r = q.recovered.unwrap();
    assert_abs_diff_eq!(r.p, 0.75, epsilon = 1e-8);
    assert_abs_diff_eq!(r.theta, 0.3, epsilon = 1e-8);
    assert!(r.reconstruct().unwrap().matrix().max_abs_diff(moved.matrix()) <= 1e-8);
}

#[test]
fn vw_matrix_matches_family() {
    // I⊗X maps the family onto the {|01>, |10>} block with C = sin 2θ and
    // α = -(2p-1) cos 2θ.
    let (p, theta) = (0.8f64, FRAC_PI_8);
    let alpha = -(2.0 * p - 1.0) * (2.0 * theta).cos();
    let a = vw_matrix((2.0 * theta).sin(), alpha).unwrap();
    let b = apply_local_unitary(&vw_state(p, theta).unwrap(), &Unitary2::identity(), &Unitary2::pauli(0));
    assert!(a.matrix().max_abs_diff(b.matrix()) <= 1e-14);
    assert!(matches!(vw_matrix(0.9, 0.9), Err(Error::NotPsd { .. })));
}

#[test]
fn sharing_pair_end_to_end() {
    let mut s = StateSampler::new(4);
    let pair = operator_sharing_pair(FRAC_PI_8, &s.unitary(), &s.unitary());
    let (rho, sigma) = (pair.psi.density(), pair.psi_prime.density());
    let v = shared_conditions(&rho, &sigma, &TOL).unwrap();
    assert!(v.certificate && v.shared());
    let w = v.witness.unwrap();
    assert_abs_diff_eq!(chsh_value(&rho, &w), nonlocality(&rho, &TOL).value, epsilon = 1e-9);
    assert_abs_diff_eq!(chsh_value(&sigma, &w), nonlocality(&sigma, &TOL).value, epsilon = 1e-9);

    let v = shared_conditions(&gamma_state(FRAC_PI_8).density(), &omega_state(FRAC_PI_8).density(), &TOL).unwrap();
    assert!(!v.certificate && !v.shared());
}

#[test]
fn invalid_inputs_are_rejected() {
    let mut m = ComplexMatrix::from_real_diagonal([0.6, 0.2, 0.3, -0.1]);
    assert!(matches!(DensityMatrix::validate(&m, &TOL), Err(Error::NotPsd { .. })));
    m = ComplexMatrix::from_real_diagonal([0.6, 0.2, 0.3, 0.1]);
    m.0[0][1].im = 0.1;
    assert!(DensityMatrix::validate(&m, &TOL).is_err());
    m = ComplexMatrix::from_real_diagonal([0.5, 0.5, 0.5, 0.5]);
    assert!(DensityMatrix::validate(&m, &TOL).is_err());
    m.0[0][0].re = f64::NAN;
    assert!(matches!(DensityMatrix::validate(&m, &TOL), Err(Error::NonFinite)));
    assert!(eof(1.5).is_err());
    assert!(bound_value(-0.5).is_err());
    assert!(matches!(optimal_chsh(&DensityMatrix::maximally_mixed(), &TOL), Err(Error::ZeroCorrelation)));
}

#[test]
fn invariants_under_local_unitaries() {
    let mut s = StateSampler::new(5);
    for rank in 1..=4 {
        let rho = s.density(rank).unwrap();
        let moved = apply_local_unitary(&rho, &s.unitary(), &s.unitary());
        let (c0, _) = concurrence(&rho, &TOL).unwrap();
        let (c1, _) = concurrence(&moved, &TOL).unwrap();
        assert_abs_diff_eq!(c0, c1, epsilon = 1e-9);
        assert_abs_diff_eq!(nonlocality(&rho, &TOL).value, nonlocality(&moved, &TOL).value, epsilon = 1e-9);
    }
    let id = Unitary2::identity();
    let bell = gamma_state(FRAC_PI_4).density();
    assert!(apply_local_unitary(&bell, &id, &id).matrix().max_abs_diff(bell.matrix()) <= 1e-15);
}
