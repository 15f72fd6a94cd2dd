//! Two-qubit states: validation, Pauli (Bloch) decomposition, named families,
//! random sampling, and local-unitary transformations.
//!
//! Basis order is `|00>, |01>, |10>, |11>` with the first tensor factor
//! belonging to Alice. Pauli index 0, 1, 2 stands for x, y, z.

// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

mod families;
mod local;
mod sampling;

use num_complex::Complex64;

pub use families::{gamma_state, lambda_state, omega_state, phi_state, vw_state};
pub use local::{apply_local_unitary, rotation_from_unitary, unitary_from_rotation, Rotation3, Unitary2};
pub use sampling::{random_density, random_pure, StateSampler};

use crate::qmat::{hermitian_eigensystem, pauli, ComplexMatrix, Matrix2, Matrix4, RealMatrix3, Tolerances, Vector3};
use crate::{Error, Result};

/// Normalization tolerance for pure-state amplitudes.
pub const NORM_TOL: f64 = 1e-10;
/// Trace tolerance for density matrices.
pub const TRACE_TOL: f64 = 1e-10;

/// Normalized two-qubit state vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PureState([Complex64; 4]);

impl PureState {
    /// Accepts amplitudes whose squared norm is 1 within [`NORM_TOL`].
    pub fn new(amplitudes: [Complex64; 4]) -> Result<Self> {
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(Self(amplitudes))
    }

    /// Rescales nonzero amplitudes to unit norm.
    pub fn normalize(amplitudes: [Complex64; 4]) -> Result<Self> {
        let norm_sqr: f64 = amplitudes.iter().map(|z| z.norm_sqr()).sum();
        if !(norm_sqr > 0.0 && norm_sqr.is_finite()) {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let k = 1.0 / norm_sqr.sqrt();
        Ok(Self(amplitudes.map(|z| z * k)))
    }

    pub(crate) fn from_normalized(amplitudes: [Complex64; 4]) -> Self {
        Self(amplitudes)
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.0
    }

    /// The projector `|psi><psi|`.
    pub fn density(&self) -> DensityMatrix {
        DensityMatrix(ComplexMatrix::outer(&self.0, &self.0))
    }

    /// `(U_A ⊗ U_B)|psi>`.
    pub fn transform(&self, ua: &Unitary2, ub: &Unitary2) -> PureState {
        Self(ua.matrix().kron(ub.matrix()).apply(&self.0))
    }

    /// `|<self|other>|^2`.
    pub fn fidelity(&self, other: &PureState) -> f64 {
        crate::qmat::inner(&self.0, &other.0).norm_sqr()
    }
}

/// Validated two-qubit density operator: Hermitian, unit trace, positive
/// semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix(Matrix4);

impl DensityMatrix {
    /// Checks hermiticity, trace and positivity, in that order.
    pub fn validate(m: &Matrix4, tol: &Tolerances) -> Result<Self> {
        m.ensure_finite()?;
        let deviation = m.hermiticity_defect();
        if deviation > tol.eig_tol {
            return Err(Error::NotHermitian { deviation });
        }
        let tr = m.trace();
        if (tr.re - 1.0).abs() > TRACE_TOL || tr.im.abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { re: tr.re, im: tr.im });
        }
        let eig = hermitian_eigensystem(m, tol)?;
        let min_eigenvalue = eig.values[3];
        if min_eigenvalue < -tol.psd_tol {
            return Err(Error::NotPsd { min_eigenvalue });
        }
        Ok(Self(*m))
    }

    pub(crate) fn from_trusted(m: Matrix4) -> Self {
        Self(m)
    }

    /// The maximally mixed state `I/4`.
    pub fn maximally_mixed() -> Self {
        Self(Matrix4::identity().scale_real(0.25))
    }

    /// Werner state `w |Φ+><Φ+| + (1 - w) I/4`.
    pub fn werner(w: f64) -> Result<Self> {
        if !(-1.0 / 3.0..=1.0).contains(&w) {
            return Err(Error::OutOfRange { value: w, min: -1.0 / 3.0, max: 1.0 });
        }
        let bell = gamma_state(core::f64::consts::FRAC_PI_4).density();
        Ok(bell.mix(&Self::maximally_mixed(), w))
    }

    pub fn matrix(&self) -> &Matrix4 {
        &self.0
    }

    /// `q * self + (1 - q) * other`, for `q` in `[0, 1]`.
    pub fn mix(&self, other: &Self, q: f64) -> Self {
        Self(self.0.scale_real(q) + other.0.scale_real(1.0 - q))
    }

    /// Eigenvalues in descending order.
    pub fn spectrum(&self, tol: &Tolerances) -> [f64; 4] {
        // Validated states are Hermitian, so this cannot fail.
        hermitian_eigensystem(&self.0, tol).map(|e| e.values).unwrap_or([f64::NAN; 4])
    }

    /// `tr(self * op)`, real part.
    pub fn expectation(&self, op: &Matrix4) -> f64 {
        self.0.trace_product(op).re
    }

    pub fn bloch(&self) -> BlochDecomposition {
        bloch_decompose(self)
    }
}

/// Pauli-basis coordinates of a two-qubit state:
/// `ρ = (I⊗I + r·σ⊗I + I⊗s·σ + Σ T_jk σ_j⊗σ_k) / 4`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDecomposition {
    /// Alice's Bloch vector.
    pub r: Vector3,
    /// Bob's Bloch vector.
    pub s: Vector3,
    /// Correlation matrix `T_jk = tr(σ_j⊗σ_k ρ)`.
    pub t: RealMatrix3,
}

impl BlochDecomposition {
    pub fn reconstruct(&self) -> Matrix4 {
        let p = pauli();
        let id = Matrix2::identity();
        let mut m = Matrix4::identity();
        for j in 0..3 {
            m = m + p[j].kron(&id).scale_real(self.r[j]);
            m = m + id.kron(&p[j]).scale_real(self.s[j]);
            for k in 0..3 {
                m = m + p[j].kron(&p[k]).scale_real(self.t[(j, k)]);
            }
        }
        m.scale_real(0.25)
    }
}

/// Pauli decomposition of a state.
pub fn bloch_decompose(rho: &DensityMatrix) -> BlochDecomposition {
    let p = pauli();
    let id = Matrix2::identity();
    let m = rho.matrix();
    let r = core::array::from_fn(|j| m.trace_product(&p[j].kron(&id)).re);
    let s = core::array::from_fn(|k| m.trace_product(&id.kron(&p[k])).re);
    let t = RealMatrix3(core::array::from_fn(|j| core::array::from_fn(|k| m.trace_product(&p[j].kron(&p[k])).re)));
    BlochDecomposition { r, s, t }
}

/// Correlation matrix of a state.
pub fn correlation_matrix(rho: &DensityMatrix) -> RealMatrix3 {
    bloch_decompose(rho).t
}

#[cfg(test)]
mod tests;
