// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use super::DensityMatrix;
use crate::qmat::{pauli, Matrix2, RealMatrix3};
use crate::{Error, Result};

/// Orthogonality and unitarity threshold for the local-frame types.
pub const FRAME_TOL: f64 = 1e-10;

/// Single-qubit unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Matrix2);

impl Unitary2 {
    pub fn new(m: Matrix2) -> Result<Self> {
        m.ensure_finite()?;
        let deviation = m.unitarity_defect();
        if deviation > FRAME_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self(m))
    }

    pub(crate) fn from_trusted(m: Matrix2) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        Self(Matrix2::identity())
    }

    /// Pauli matrix `σ_k` (k = 0, 1, 2 for x, y, z).
    pub fn pauli(k: usize) -> Self {
        Self(pauli()[k])
    }

    /// `exp(-i φ/2 n·σ)`, the spin-1/2 rotation by `angle` about unit `axis`.
    pub fn rotation(axis: [f64; 3], angle: f64) -> Self {
        let n = crate::qmat::normalized(&axis).unwrap_or([0.0, 0.0, 1.0]);
        let (s, c) = (angle / 2.0).sin_cos();
        Self(quaternion_to_su2([c, s * n[0], s * n[1], s * n[2]]))
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0 * other.0)
    }
}

/// Proper rotation of R^3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Rotation3(RealMatrix3);

impl Rotation3 {
    pub fn new(m: RealMatrix3) -> Result<Self> {
        let orthogonality = m.orthogonality_defect();
        let determinant = m.det();
        if !m.is_finite() || orthogonality > FRAME_TOL || (determinant - 1.0).abs() > FRAME_TOL {
            return Err(Error::NotARotation { orthogonality, determinant });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(RealMatrix3::identity())
    }

    pub fn matrix(&self) -> &RealMatrix3 {
        &self.0
    }
}

/// `w I - i (x σx + y σy + z σz)` for a unit quaternion `(w, x, y, z)`.
fn quaternion_to_su2(q: [f64; 4]) -> Matrix2 {
    let [w, x, y, z] = q;
    Matrix2::from_parts([[w, -y], [y, w]], [[-z, -x], [-x, z]])
}

/// `ρ' = (U_A ⊗ U_B) ρ (U_A ⊗ U_B)^†`.
pub fn apply_local_unitary(rho: &DensityMatrix, ua: &Unitary2, ub: &Unitary2) -> DensityMatrix {
    let k = ua.matrix().kron(ub.matrix());
    DensityMatrix::from_trusted(k * *rho.matrix() * k.adjoint())
}

/// Bloch rotation induced by `U`: `R_kk' = tr(σ_k U σ_k' U^†) / 2`.
///
/// The correlation matrix transforms as `T' = R_A T R_B^T` under
/// [`apply_local_unitary`]. The global phase of `U` cancels.
pub fn rotation_from_unitary(u: &Unitary2) -> Rotation3 {
    let p = pauli();
    let m = u.matrix();
    let ma = m.adjoint();
    let mut r = RealMatrix3::zeros();
    for kp in 0..3 {
        let conj = *m * p[kp] * ma;
        for k in 0..3 {
            r.0[k][kp] = 0.5 * p[k].trace_product(&conj).re;
        }
    }
    Rotation3(r)
}

/// A unitary whose Bloch rotation is `r`, via the unit quaternion of `r`.
///
/// The double cover leaves a sign free; the representative with
/// `Re tr U >= 0` is returned (ties broken by the first nonzero vector
/// component being positive).
pub fn unitary_from_rotation(r: &RealMatrix3) -> Result<Unitary2> {
    let r = Rotation3::new(*r)?.0 .0;
    let tr = r[0][0] + r[1][1] + r[2][2];
    // Shepperd's method: branch on the largest of (tr, R00, R11, R22).
    let mut q = if tr >= r[0][0] && tr >= r[1][1] && tr >= r[2][2] {
        let w = 0.5 * (1.0 + tr).max(0.0).sqrt();
        let f = 0.25 / w;
        [w, (r[2][1] - r[1][2]) * f, (r[0][2] - r[2][0]) * f, (r[1][0] - r[0][1]) * f]
    } else if r[0][0] >= r[1][1] && r[0][0] >= r[2][2] {
        let x = 0.5 * (1.0 + r[0][0] - r[1][1] - r[2][2]).max(0.0).sqrt();
        let f = 0.25 / x;
        [(r[2][1] - r[1][2]) * f, x, (r[0][1] + r[1][0]) * f, (r[0][2] + r[2][0]) * f]
    } else if r[1][1] >= r[2][2] {
        let y = 0.5 * (1.0 - r[0][0] + r[1][1] - r[2][2]).max(0.0).sqrt();
        let f = 0.25 / y;
        [(r[0][2] - r[2][0]) * f, (r[0][1] + r[1][0]) * f, y, (r[1][2] + r[2][1]) * f]
    } else {
        let z = 0.5 * (1.0 - r[0][0] - r[1][1] + r[2][2]).max(0.0).sqrt();
        let f = 0.25 / z;
        [(r[1][0] - r[0][1]) * f, (r[0][2] + r[2][0]) * f, (r[1][2] + r[2][1]) * f, z]
    };
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    q = q.map(|x| x / n);
    let flip = if q[0] != 0.0 { q[0] < 0.0 } else { q[1..].iter().find(|x| **x != 0.0).is_some_and(|x| *x < 0.0) };
    if flip {
        q = q.map(|x| -x);
    }
    Ok(Unitary2(quaternion_to_su2(q)))
}
