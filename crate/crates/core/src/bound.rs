//! The concurrence bound `N(ρ) <= 2 sqrt(1 + C(ρ)²)` and the states attaining it.
//!
//! Equality holds exactly on the set `Q` of local-unitary images of the
//! rank-two mixtures
//! `ρ(p, θ) = p |φ1><φ1| + (1-p) |φ2><φ2|`, with `φ1 = cos θ|00> + sin θ|11>` and
//! `φ2 = sin θ|00> + cos θ|11>`.

// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::entanglement::{concurrence, concurrence_pure};
use crate::nonlocality::nonlocality_of_correlation;
use crate::qmat::{svd3, Matrix4, RealMatrix3, Tolerances};
use crate::states::{
    apply_local_unitary, correlation_matrix, unitary_from_rotation, vw_state, DensityMatrix, PureState, Unitary2,
};
use crate::{Error, Result};

/// Entry and reconstruction tolerance of the structural membership test.
pub const STRUCTURE_TOL: f64 = 1e-7;
/// Gap `|t1| - |t2|` below which the structural frame is ambiguous.
pub const FRAME_GAP: f64 = 1e-6;

/// `2 sqrt(1 + C²)`.
pub fn bound_value(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(Error::OutOfRange { value: c, min: 0.0, max: 1.0 });
    }
    Ok(2.0 * (1.0 + c * c).sqrt())
}

/// `|N(ψ) - 2 sqrt(1 + C(ψ)²)|`, which vanishes for every pure state.
pub fn check_pure_relation(psi: &PureState) -> f64 {
    let t = correlation_matrix(&psi.density());
    let n = nonlocality_of_correlation(&t, &Tolerances::DEFAULT).value;
    let c = concurrence_pure(psi);
    (n - 2.0 * (1.0 + c * c).sqrt()).abs()
}

/// Parameters with `ρ = (U_A⊗U_B) ρ(p, θ) (U_A⊗U_B)^†`.
///
/// The representative has `p >= 1/2` and `θ` in `[0, π/4]`: `(1-p, π/2-θ)`
/// names the same state, and `(p, π/2-θ)` is its image under `X⊗X`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RecoveredParameters {
    pub p: f64,
    pub theta: f64,
    pub ua: Unitary2,
    pub ub: Unitary2,
}

impl RecoveredParameters {
    pub fn reconstruct(&self) -> Result<DensityMatrix> {
        Ok(apply_local_unitary(&vw_state(self.p, self.theta)?, &self.ua, &self.ub))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QMembership {
    pub concurrence: f64,
    pub nonlocality: f64,
    pub bound: f64,
    /// `bound - nonlocality`.
    pub slack: f64,
    /// The bound is attained within `compare_tol`.
    pub operational_member: bool,
    /// The state has the normal form of `Q`; `None` when the frame is too
    /// degenerate to decide.
    pub structural_member: Option<bool>,
    pub recovered: Option<RecoveredParameters>,
}

/// Decide whether `ρ` attains the bound, both by comparing `N` with
/// `2 sqrt(1 + C²)` and by recovering the `Q` normal form.
pub fn certify(rho: &DensityMatrix, tol: &Tolerances) -> Result<QMembership> {
    let (c, _) = concurrence(rho, tol)?;
    let t = correlation_matrix(rho);
    let n = nonlocality_of_correlation(&t, tol).value;
    let bound = bound_value(c)?;
    let slack = bound - n;
    let (structural_member, recovered) = match structural(rho, &t, tol)? {
        Structure::Member(r) => (Some(true), Some(r)),
        Structure::NotMember => (Some(false), None),
        Structure::Indeterminate => (None, None),
    };
    Ok(QMembership {
        concurrence: c,
        nonlocality: n,
        bound,
        slack,
        operational_member: slack <= tol.compare_tol,
        structural_member,
        recovered,
    })
}

enum Structure {
    Member(RecoveredParameters),
    NotMember,
    Indeterminate,
}

fn structural(rho: &DensityMatrix, t: &RealMatrix3, tol: &Tolerances) -> Result<Structure> {
    let spectrum = rho.spectrum(tol);
    if spectrum[2] > STRUCTURE_TOL {
        return Ok(Structure::NotMember);
    }
    let svd = svd3(t);
    // Every element of Q has a unit correlation along its dominant axis.
    if svd.values[0].abs() < 1.0 - STRUCTURE_TOL {
        return Ok(Structure::NotMember);
    }
    let ambiguous = svd.values[0].abs() - svd.values[1].abs() < FRAME_GAP;

    // Rotate T into diag(|t2|, ±|t3|, |t1|): the dominant axis becomes z.
    let cycle = RealMatrix3([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]]);
    let (s1, s2) = (sign(svd.values[0]), sign(svd.values[1]));
    let flip = RealMatrix3::diag([s2, s1 * s2, s1]);
    let mut ra = flip * cycle * svd.u.transpose();
    let mut rb = cycle * svd.v.transpose();
    let mut ua = unitary_from_rotation(&ra)?;
    let mut ub = unitary_from_rotation(&rb)?;
    let mut frame = apply_local_unitary(rho, &ua, &ub);
    // X⊗X keeps T and swaps |00> with |11>; put the larger weight on |00>.
    if frame.matrix()[(0, 0)].re < frame.matrix()[(3, 3)].re {
        let xx = RealMatrix3::diag([1.0, -1.0, -1.0]);
        ra = xx * ra;
        rb = xx * rb;
        ua = unitary_from_rotation(&ra)?;
        ub = unitary_from_rotation(&rb)?;
        frame = apply_local_unitary(rho, &ua, &ub);
    }

    match normal_form(frame.matrix()) {
        Some((p, theta)) => {
            let r = RecoveredParameters { p, theta, ua: ua.adjoint(), ub: ub.adjoint() };
            if r.reconstruct()?.matrix().max_abs_diff(rho.matrix()) <= STRUCTURE_TOL {
                Ok(Structure::Member(r))
            } else if ambiguous {
                Ok(Structure::Indeterminate)
            } else {
                Ok(Structure::NotMember)
            }
        }
        None if ambiguous => Ok(Structure::Indeterminate),
        None => Ok(Structure::NotMember),
    }
}

fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// `(p, θ)` of a state supported on `{|00>, |11>}` with a real nonnegative
/// coherence, or `None` if the matrix does not have that pattern.
fn normal_form(m: &Matrix4) -> Option<(f64, f64)> {
    for i in 0..4 {
        for j in 0..4 {
            let outside = i == 1 || i == 2 || j == 1 || j == 2;
            if outside && m[(i, j)].norm() > STRUCTURE_TOL {
                return None;
            }
        }
    }
    let coherence: Complex64 = m[(0, 3)];
    if coherence.im.abs() > STRUCTURE_TOL || coherence.re < -STRUCTURE_TOL {
        return None;
    }
    let theta = 0.5 * (2.0 * coherence.re).clamp(0.0, 1.0).asin();
    let cos2 = (2.0 * theta).cos();
    // At θ = π/4 both ensemble members coincide and p is arbitrary.
    let p = if cos2 < 1e-12 { 1.0 } else { (m[(0, 0)].re - theta.sin().powi(2)) / cos2 };
    if !(-STRUCTURE_TOL..=1.0 + STRUCTURE_TOL).contains(&p) {
        return None;
    }
    // With the larger weight on |00>, p < 1/2 only through rounding.
    Some((p.clamp(0.5, 1.0), theta))
}

/// Two-level state on `{|01>, |10>}` with block `[[1-α, C], [C, 1+α]] / 2`.
///
/// It is the image under `I⊗X` of an element of `Q` and attains the bound.
pub fn vw_matrix(c: f64, alpha: f64) -> Result<DensityMatrix> {
    let mut m = Matrix4::zeros();
    m.0[1][1] = Complex64::new((1.0 - alpha) / 2.0, 0.0);
    m.0[2][2] = Complex64::new((1.0 + alpha) / 2.0, 0.0);
    m.0[1][2] = Complex64::new(c / 2.0, 0.0);
    m.0[2][1] = Complex64::new(c / 2.0, 0.0);
    DensityMatrix::validate(&m, &Tolerances::DEFAULT)
}
