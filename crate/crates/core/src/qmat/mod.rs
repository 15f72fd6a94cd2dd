//! Small fixed-size matrix numerics: 2x2/4x4 complex matrices, Hermitian and
//! general eigenvalue solvers, and the signed 3x3 real SVD.

mod complex;
mod eigen;
mod real;
mod svd;

pub use complex::{inner, pauli, vec_norm, ComplexMatrix, Matrix2, Matrix4};
pub use eigen::{eigenvalues_general, hermitian_eigensystem, singular_values, HermitianEigen};
pub use real::{add, any_orthogonal, cross, dot, norm, normalized, scale, sub, RealMatrix3, Vector3};
pub use svd::{svd3, SignedSvd3};

/// Shared tolerance policy, passed explicitly to every routine that needs one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Hermiticity threshold for eigen-solvers and state validation.
    pub eig_tol: f64,
    /// Threshold for comparing derived quantities (degeneracy, membership).
    pub compare_tol: f64,
    /// Most negative eigenvalue accepted for a positive semidefinite matrix.
    pub psd_tol: f64,
}

impl Tolerances {
    pub const DEFAULT: Self = Self { eig_tol: 1e-10, compare_tol: 1e-8, psd_tol: 1e-10 };

    /// Returns `None` unless every tolerance is strictly positive and finite.
    pub fn new(eig_tol: f64, compare_tol: f64, psd_tol: f64) -> Option<Self> {
        let ok = |x: f64| x > 0.0 && x.is_finite();
        (ok(eig_tol) && ok(compare_tol) && ok(psd_tol)).then_some(Self { eig_tol, compare_tol, psd_tol })
    }
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
