use std::format;

use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, FRAC_PI_6, PI};

use approx::assert_abs_diff_eq;
use num_complex::Complex64;

use super::*;
use crate::qmat::{Matrix4, RealMatrix3, Tolerances};

const TOL: Tolerances = Tolerances::DEFAULT;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Literal Pauli matrices, independent of `qmat::pauli`.
fn sigma(k: usize) -> [[Complex64; 2]; 2] {
    match k {
        0 => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(1., 0.)]],
        1 => [[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]],
        2 => [[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]],
        _ => [[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]],
    }
}

/// `tr((A ⊗ B) ρ)` by index summation.
fn oracle_expectation(a: usize, b: usize, rho: &Matrix4) -> f64 {
    let (sa, sb) = (sigma(a), sigma(b));
    let mut acc = c(0.0, 0.0);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    acc += sa[i][j] * sb[k][l] * rho.0[2 * j + l][2 * i + k];
                }
            }
        }
    }
    acc.re
}

fn oracle_t(rho: &Matrix4) -> RealMatrix3 {
    RealMatrix3(core::array::from_fn(|j| core::array::from_fn(|k| oracle_expectation(j + 1, k + 1, rho))))
}

#[test]
fn validate_accepts_maximally_mixed() {
    let m = Matrix4::identity().scale_real(0.25);
    assert!(DensityMatrix::validate(&m, &TOL).is_ok());
}

#[test]
fn validate_rejects_negative_eigenvalue() {
    let m = Matrix4::from_real_diagonal([0.5, 0.6, 0.0, -0.1]);
    match DensityMatrix::validate(&m, &TOL) {
        Err(Error::NotPsd { min_eigenvalue }) => assert_abs_diff_eq!(min_eigenvalue, -0.1, epsilon = 1e-15),
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn validate_rejects_bad_trace() {
    let m = Matrix4::from_real_diagonal([0.99, 0.0, 0.0, 0.0]);
    assert!(matches!(DensityMatrix::validate(&m, &TOL), Err(Error::TraceNotOne { .. })));
}

#[test]
fn validate_rejects_non_hermitian() {
    let mut m = Matrix4::identity().scale_real(0.25);
    m.0[0][1] = c(0.0, 0.1);
    assert!(matches!(DensityMatrix::validate(&m, &TOL), Err(Error::NotHermitian { .. })));
    m.0[0][0] = c(f64::NAN, 0.0);
    assert!(matches!(DensityMatrix::validate(&m, &TOL), Err(Error::NonFinite)));
}

#[test]
fn error_messages_name_the_invariant() {
    let m = Matrix4::from_real_diagonal([0.5, 0.6, 0.0, -0.1]);
    let msg = format!("{}", DensityMatrix::validate(&m, &TOL).unwrap_err());
    assert!(msg.starts_with("NotPSD"), "{msg}");
}

#[test]
fn bloch_of_bell_state() {
    let b = bloch_decompose(&gamma_state(FRAC_PI_4).density());
    assert!(b.r.iter().chain(&b.s).all(|x| x.abs() < 1e-15));
    assert!(b.t.max_abs_diff(&RealMatrix3::diag([1.0, -1.0, 1.0])) < 1e-15);
}

#[test]
fn bloch_of_maximally_mixed() {
    let b = bloch_decompose(&DensityMatrix::maximally_mixed());
    assert_eq!(b.r, [0.0; 3]);
    assert_eq!(b.s, [0.0; 3]);
    assert_eq!(b.t, RealMatrix3::zeros());
}

#[test]
fn bloch_of_product_zero_zero() {
    let zz = PureState::new([c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]).unwrap().density();
    let b = bloch_decompose(&zz);
    let m = zz.matrix();
    let r: [f64; 3] = core::array::from_fn(|j| oracle_expectation(j + 1, 0, m));
    let s: [f64; 3] = core::array::from_fn(|k| oracle_expectation(0, k + 1, m));
    assert_eq!(r, [0.0, 0.0, 1.0]);
    assert_eq!(s, [0.0, 0.0, 1.0]);
    assert_eq!(b.r, r);
    assert_eq!(b.s, s);
    assert_eq!(oracle_t(m), RealMatrix3::diag([0.0, 0.0, 1.0]));
    assert_eq!(b.t, oracle_t(m));
}

#[test]
fn bloch_matches_index_oracle_and_round_trips() {
    let mut sampler = StateSampler::new(21);
    for i in 0..1000 {
        let rho = sampler.density(1 + i % 4).unwrap();
        let b = bloch_decompose(&rho);
        assert!(b.t.max_abs_diff(&oracle_t(rho.matrix())) < 1e-12);
        assert!(b.reconstruct().max_abs_diff(rho.matrix()) <= 1e-9);
        assert!(crate::qmat::norm(&b.r) <= 1.0 + 1e-9);
        assert!(crate::qmat::norm(&b.s) <= 1.0 + 1e-9);
        assert!(b.t.max_abs() <= 1.0 + 1e-9);
    }
}

#[test]
fn family_amplitudes() {
    let bell = gamma_state(FRAC_PI_4);
    let k = core::f64::consts::FRAC_1_SQRT_2;
    for (a, e) in bell.amplitudes().iter().zip([k, 0.0, 0.0, k]) {
        assert_abs_diff_eq!(a.re, e, epsilon = 2e-16);
        assert_eq!(a.im, 0.0);
    }
    let o = omega_state(0.0);
    assert_eq!(o.amplitudes(), &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]);
    assert_eq!(bloch_decompose(&o.density()).t, RealMatrix3::diag([0.0, 0.0, -1.0]));
}

#[test]
fn family_correlation_tables() {
    for i in 0..40 {
        let th = PI * i as f64 / 40.0;
        let (s2, c2) = (2.0 * th).sin_cos();
        let tg = bloch_decompose(&gamma_state(th).density()).t;
        assert!(tg.max_abs_diff(&RealMatrix3::diag([s2, -s2, 1.0])) <= 1e-10);
        let to = bloch_decompose(&omega_state(th).density()).t;
        assert!(to.max_abs_diff(&RealMatrix3::diag([s2, s2, -1.0])) <= 1e-10);
        for d in [1.0, -1.0] {
            let tl = bloch_decompose(&lambda_state(th, d).unwrap().density()).t;
            assert!(tl.max_abs_diff(&RealMatrix3::diag([d * c2, -d, c2])) <= 1e-10, "lambda {th} {d}: {tl:?}");
            let tp = bloch_decompose(&phi_state(th, d).unwrap().density()).t;
            assert!(tp.max_abs_diff(&RealMatrix3::diag([d, -d * c2, c2])) <= 1e-10, "phi {th} {d}: {tp:?}");
        }
    }
}

#[test]
fn family_sign_is_checked() {
    assert_eq!(lambda_state(0.3, 2.0), Err(Error::BadSign(2.0)));
    assert_eq!(phi_state(0.3, 0.0), Err(Error::BadSign(0.0)));
}

/// Ensemble oracle written out entry by entry.
fn vw_oracle(p: f64, th: f64) -> Matrix4 {
    let (s, co) = (th.sin(), th.cos());
    let phi1 = [co, 0.0, 0.0, s];
    let phi2 = [s, 0.0, 0.0, co];
    let mut m = Matrix4::zeros();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = c(p * phi1[i] * phi1[j] + (1.0 - p) * phi2[i] * phi2[j], 0.0);
        }
    }
    m
}

#[test]
fn vw_state_examples() {
    let bell = vw_state(1.0, FRAC_PI_4).unwrap();
    assert!(bell.matrix().max_abs_diff(gamma_state(FRAC_PI_4).density().matrix()) < 1e-16);

    for th in [0.1, 0.7, 1.3] {
        let half = vw_state(0.5, th).unwrap();
        assert!(half.matrix().max_abs_diff(&vw_oracle(0.5, th)) < 1e-16);
        assert_abs_diff_eq!(half.matrix()[(0, 0)].re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(half.matrix()[(3, 3)].re, 0.5, epsilon = 1e-15);
    }

    let m = vw_state(0.3, FRAC_PI_6).unwrap();
    assert!(m.matrix().max_abs_diff(&vw_oracle(0.3, FRAC_PI_6)) < 1e-16);
    assert_abs_diff_eq!(m.matrix()[(0, 3)].re, 0.4330127018922193, epsilon = 1e-15);
    assert_eq!(vw_state(1.2, 0.3), Err(Error::BadProbability(1.2)));
}

#[test]
fn vw_state_diagonal_uses_one_plus_alpha() {
    for (p, th) in [(0.3, 0.4), (0.8, 1.1), (0.0, 0.2)] {
        let alpha = 1.0 + 4.0 * p * th.sin().powi(2) - 2.0 * p - 2.0 * th.sin().powi(2);
        let m = vw_state(p, th).unwrap();
        assert_abs_diff_eq!(m.matrix()[(0, 0)].re, (1.0 - alpha) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.matrix()[(3, 3)].re, (1.0 + alpha) / 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(m.matrix()[(0, 3)].re, (2.0 * th).sin() / 2.0, epsilon = 1e-15);
        for (i, j) in [(0, 1), (0, 2), (1, 1), (1, 2), (2, 2), (1, 3), (2, 3)] {
            assert_eq!(m.matrix()[(i, j)], c(0.0, 0.0));
        }
        let t = bloch_decompose(&m).t;
        let s2 = (2.0 * th).sin();
        assert!(t.max_abs_diff(&RealMatrix3::diag([s2, -s2, 1.0])) <= 1e-15);
    }
}

#[test]
fn sampling_is_deterministic() {
    assert_eq!(random_pure(5), random_pure(5));
    assert_ne!(random_pure(5), random_pure(6));
    assert_eq!(random_density(5, 3).unwrap(), random_density(5, 3).unwrap());
    assert_eq!(random_density(5, 0), Err(Error::BadRank(0)));
    assert_eq!(random_density(5, 5), Err(Error::BadRank(5)));
}

#[test]
fn sampled_states_validate() {
    let mut s = StateSampler::new(22);
    for rank in 1..=4 {
        for _ in 0..50 {
            let rho = s.density(rank).unwrap();
            let eigs = DensityMatrix::validate(rho.matrix(), &TOL).unwrap().spectrum(&TOL);
            for k in 0..4 {
                if k < rank {
                    assert!(eigs[k] > 0.0);
                } else {
                    assert!(eigs[k].abs() < 1e-12);
                }
            }
        }
    }
    assert!(random_density(9, 4).unwrap().spectrum(&TOL).iter().all(|x| *x > 0.0));
}

#[test]
fn correlation_mean_vanishes_monte_carlo() {
    let mut s = StateSampler::new(23);
    let mut acc = RealMatrix3::zeros();
    let n = 10_000;
    for _ in 0..n {
        acc = acc + correlation_matrix(&s.density(4).unwrap());
    }
    assert!(acc.scale(1.0 / n as f64).max_abs() < 0.05);
}

#[test]
fn local_identity_is_noop() {
    let rho = random_density(24, 3).unwrap();
    let out = apply_local_unitary(&rho, &Unitary2::identity(), &Unitary2::identity());
    assert_eq!(out, rho);
}

#[test]
fn bit_flip_on_bob_moves_vw_state_to_middle_block() {
    let rho = vw_state(0.3, 0.5).unwrap();
    let out = apply_local_unitary(&rho, &Unitary2::identity(), &Unitary2::pauli(0));
    let m = out.matrix();
    for i in 0..4 {
        for j in 0..4 {
            let inner = (i == 1 || i == 2) && (j == 1 || j == 2);
            if !inner {
                assert_eq!(m[(i, j)], c(0.0, 0.0));
            }
        }
    }
    assert_abs_diff_eq!(m[(1, 2)].re, 1.0f64.sin() / 2.0, epsilon = 1e-15);
}

#[test]
fn local_unitaries_preserve_spectrum_and_validity() {
    let mut s = StateSampler::new(25);
    for _ in 0..200 {
        let rho = s.density(3).unwrap();
        let (ua, ub) = (s.unitary(), s.unitary());
        let out = apply_local_unitary(&rho, &ua, &ub);
        let out = DensityMatrix::validate(out.matrix(), &TOL).unwrap();
        let (a, b) = (rho.spectrum(&TOL), out.spectrum(&TOL));
        for k in 0..4 {
            assert_abs_diff_eq!(a[k], b[k], epsilon = 1e-10);
        }
    }
}

#[test]
fn rotation_examples() {
    assert!(rotation_from_unitary(&Unitary2::identity()).matrix().max_abs_diff(&RealMatrix3::identity()) < 1e-15);
    let rx = rotation_from_unitary(&Unitary2::pauli(0));
    assert!(rx.matrix().max_abs_diff(&RealMatrix3::diag([1.0, -1.0, -1.0])) < 1e-15);

    let u = Unitary2::new(Matrix2::from_parts(
        [[FRAC_PI_4.cos(), 0.0], [0.0, FRAC_PI_4.cos()]],
        [[-FRAC_PI_4.sin(), 0.0], [0.0, FRAC_PI_4.sin()]],
    ))
    .unwrap();
    let r = rotation_from_unitary(&u);
    let col0 = r.matrix().column(0);
    assert_abs_diff_eq!(col0[0], FRAC_PI_2.cos(), epsilon = 1e-15);
    assert_abs_diff_eq!(col0[1], FRAC_PI_2.sin(), epsilon = 1e-15);
    assert_abs_diff_eq!(col0[2], 0.0, epsilon = 1e-15);
    // Same as the axis-angle constructor.
    assert!(Unitary2::rotation([0., 0., 1.], FRAC_PI_2).matrix().max_abs_diff(u.matrix()) < 1e-15);
}

#[test]
fn rotation_ignores_global_phase() {
    let mut s = StateSampler::new(26);
    for _ in 0..50 {
        let u = s.unitary();
        let v = Unitary2::new(u.matrix().scale(Complex64::from_polar(1.0, 1.234))).unwrap();
        let d = rotation_from_unitary(&u).matrix().max_abs_diff(rotation_from_unitary(&v).matrix());
        assert!(d < 1e-14);
    }
}

#[test]
fn rotation_is_a_homomorphism_into_so3() {
    let mut s = StateSampler::new(27);
    for _ in 0..500 {
        let (u, v) = (s.unitary(), s.unitary());
        let ru = *rotation_from_unitary(&u).matrix();
        let rv = *rotation_from_unitary(&v).matrix();
        let ruv = *rotation_from_unitary(&u.compose(&v)).matrix();
        assert!(ruv.max_abs_diff(&(ru * rv)) <= 1e-9);
        assert!(ru.orthogonality_defect() <= 1e-10);
        assert!((ru.det() - 1.0).abs() <= 1e-10);
    }
}

fn equal_up_to_phase(a: &Matrix2, b: &Matrix2) -> bool {
    let tr = a.adjoint().trace_product(b);
    let phase = tr / tr.norm();
    a.scale(phase).max_abs_diff(b) < 1e-10
}

#[test]
fn unitary_from_rotation_examples() {
    let u = unitary_from_rotation(&RealMatrix3::identity()).unwrap();
    assert!(u.matrix().max_abs_diff(&Matrix2::identity()) < 1e-15);
    let x = unitary_from_rotation(&RealMatrix3::diag([1.0, -1.0, -1.0])).unwrap();
    assert!(equal_up_to_phase(x.matrix(), Unitary2::pauli(0).matrix()));
    assert!(matches!(unitary_from_rotation(&RealMatrix3::diag([1.0, 1.0, -1.0])), Err(Error::NotARotation { .. })));
    assert!(matches!(unitary_from_rotation(&RealMatrix3::diag([1.0, 1.0, 1.1])), Err(Error::NotARotation { .. })));
}

#[test]
fn unitary_from_rotation_round_trip() {
    let mut s = StateSampler::new(28);
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let r = if i % 10 == 0 {
            // Half-turns exercise the non-trace branches.
            let axis = [s.normal(), s.normal(), s.normal()];
            *rotation_from_unitary(&Unitary2::rotation(axis, PI)).matrix()
        } else {
            *rotation_from_unitary(&s.unitary()).matrix()
        };
        let u = unitary_from_rotation(&r).unwrap();
        assert!(u.matrix().unitarity_defect() < 1e-12);
        assert!(u.matrix().trace().re >= -1e-15);
        worst = worst.max(rotation_from_unitary(&u).matrix().max_abs_diff(&r));
    }
    assert!(worst <= 1e-8, "{worst}");
}

#[test]
fn local_unitary_rotates_correlation_matrix() {
    let mut s = StateSampler::new(29);
    for i in 0..500 {
        let rho = s.density(1 + i % 4).unwrap();
        let (ua, ub) = (s.unitary(), s.unitary());
        let before = bloch_decompose(&rho);
        let after = bloch_decompose(&apply_local_unitary(&rho, &ua, &ub));
        let ra = *rotation_from_unitary(&ua).matrix();
        let rb = *rotation_from_unitary(&ub).matrix();
        assert!(after.t.max_abs_diff(&(ra * before.t * rb.transpose())) <= 1e-8);
        let r2 = ra.apply(&before.r);
        assert!((0..3).all(|k| (r2[k] - after.r[k]).abs() <= 1e-8));
    }
}

#[test]
fn pure_state_checks_normalization() {
    assert!(matches!(
        PureState::new([c(1.0, 0.0), c(0.1, 0.0), c(0.0, 0.0), c(0.0, 0.0)]),
        Err(Error::NotNormalized { .. })
    ));
    let p = PureState::normalize([c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]).unwrap();
    assert_abs_diff_eq!(p.amplitudes()[0].re, core::f64::consts::FRAC_1_SQRT_2, epsilon = 2e-16);
}

#[test]
fn werner_state_correlations() {
    let w = DensityMatrix::werner(0.8).unwrap();
    assert!(bloch_decompose(&w).t.max_abs_diff(&RealMatrix3::diag([0.8, -0.8, 0.8])) < 1e-15);
}

mod props {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn family_t_is_diagonal(th in 0.0..PI, neg in any::<bool>()) {
            let d = if neg { -1.0 } else { 1.0 };
            for psi in [gamma_state(th), omega_state(th), lambda_state(th, d).unwrap(), phi_state(th, d).unwrap()] {
                let t = bloch_decompose(&psi.density()).t;
                for j in 0..3 {
                    for k in 0..3 {
                        if j != k {
                            prop_assert!(t[(j, k)].abs() <= 1e-10);
                        }
                    }
                }
            }
        }
    }
}
