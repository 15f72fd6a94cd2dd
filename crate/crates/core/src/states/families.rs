// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use super::{DensityMatrix, PureState};
use crate::qmat::ComplexMatrix;
use crate::{Error, Result};

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn check_sign(delta: f64) -> Result<f64> {
    if delta == 1.0 || delta == -1.0 {
        Ok(delta)
    } else {
        Err(Error::BadSign(delta))
    }
}

/// `cos θ |00> + sin θ |11>`.
pub fn gamma_state(theta: f64) -> PureState {
    let (s, c) = theta.sin_cos();
    PureState::from_normalized([re(c), re(0.0), re(0.0), re(s)])
}

/// `cos θ |01> + sin θ |10>`.
pub fn omega_state(theta: f64) -> PureState {
    let (s, c) = theta.sin_cos();
    PureState::from_normalized([re(0.0), re(c), re(s), re(0.0)])
}

/// `cos θ (|00> + δ|11>)/√2 + i sin θ (|01> - δ|10>)/√2`.
pub fn lambda_state(theta: f64, delta: f64) -> Result<PureState> {
    let d = check_sign(delta)?;
    let (s, c) = theta.sin_cos();
    let k = FRAC_1_SQRT_2;
    let i = Complex64::new(0.0, 1.0);
    Ok(PureState::from_normalized([re(c * k), i * (s * k), i * (-d * s * k), re(d * c * k)]))
}

/// `cos θ (|00> + δ|11>)/√2 + sin θ (|01> + δ|10>)/√2`.
pub fn phi_state(theta: f64, delta: f64) -> Result<PureState> {
    let d = check_sign(delta)?;
    let (s, c) = theta.sin_cos();
    let k = FRAC_1_SQRT_2;
    Ok(PureState::from_normalized([re(c * k), re(s * k), re(d * s * k), re(d * c * k)]))
}

/// Rank-two mixture `p |φ1><φ1| + (1-p) |φ2><φ2|` with
/// `φ1 = cos θ|00> + sin θ|11>` and `φ2 = sin θ|00> + cos θ|11>`.
///
/// Built by summing the ensemble, so the `|11>` diagonal entry is `(1+α)/2`.
pub fn vw_state(p: f64, theta: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadProbability(p));
    }
    let phi1 = gamma_state(theta);
    let (s, c) = theta.sin_cos();
    let phi2 = PureState::from_normalized([re(s), re(0.0), re(0.0), re(c)]);
    let m: ComplexMatrix<4> = phi1.density().matrix().scale_real(p) + phi2.density().matrix().scale_real(1.0 - p);
    Ok(DensityMatrix::from_trusted(m))
}
