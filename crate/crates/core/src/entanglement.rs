//! Concurrence and entanglement of formation of two-qubit states.

// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use crate::qmat::{eigenvalues_general, hermitian_eigensystem, singular_values, Matrix4, Tolerances};
use crate::states::{DensityMatrix, PureState};
use crate::{Error, Result};

/// Negative real parts of `ρ ρ̃` eigenvalues below this magnitude are clipped.
pub const CLIP_TOL: f64 = 1e-9;
/// Largest imaginary part tolerated in the spectrum of `ρ ρ̃`.
pub const IMAG_TOL: f64 = 1e-7;

/// Concurrence, entanglement of formation and (for the mixed-state route)
/// the Wootters eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntanglementReport {
    pub concurrence: f64,
    pub eof: f64,
    /// Descending, nonnegative; `None` when computed from a state vector.
    pub wootters_eigs: Option<[f64; 4]>,
}

fn yy() -> Matrix4 {
    let mut m = Matrix4::zeros();
    m.0[0][3] = Complex64::new(-1.0, 0.0);
    m.0[1][2] = Complex64::new(1.0, 0.0);
    m.0[2][1] = Complex64::new(1.0, 0.0);
    m.0[3][0] = Complex64::new(-1.0, 0.0);
    m
}

fn flip_matrix(m: &Matrix4) -> Matrix4 {
    let y = yy();
    y * m.conj() * y
}

/// `ρ̃ = (σy ⊗ σy) ρ* (σy ⊗ σy)`.
pub fn spin_flip(rho: &DensityMatrix) -> DensityMatrix {
    DensityMatrix::from_trusted(flip_matrix(rho.matrix()))
}

/// `|ψ̃> = (σy ⊗ σy)|ψ*>`.
pub fn spin_flip_pure(psi: &PureState) -> PureState {
    let a = psi.amplitudes().map(|z| z.conj());
    PureState::from_normalized(yy().apply(&a))
}

/// `C(ψ) = |<ψ|ψ̃>|`.
pub fn concurrence_pure(psi: &PureState) -> f64 {
    let a = psi.amplitudes();
    (2.0 * (a[0] * a[3] - a[1] * a[2]).norm()).min(1.0)
}

/// Concurrence `max(0, λ1 - λ2 - λ3 - λ4)` and the Wootters eigenvalues.
///
/// The `λ_i` are the eigenvalues of `sqrt(sqrt(ρ) ρ̃ sqrt(ρ))`, evaluated as the
/// singular values of `sqrt(ρ̃) sqrt(ρ)`; their squares are the eigenvalues of
/// `ρ ρ̃`, whose spectrum is computed as well and must be real and
/// nonnegative within [`IMAG_TOL`] and [`CLIP_TOL`].
pub fn concurrence(rho: &DensityMatrix, tol: &Tolerances) -> Result<(f64, [f64; 4])> {
    let eig = hermitian_eigensystem(rho.matrix(), tol)?;
    let sqrt_rho = eig.map_spectrum(|x| x.max(0.0).sqrt());
    let lambdas = singular_values(&(flip_matrix(&sqrt_rho) * sqrt_rho))?;

    let product = *rho.matrix() * flip_matrix(rho.matrix());
    for z in eigenvalues_general(&product)? {
        if z.im.abs() > IMAG_TOL {
            return Err(Error::NumericalFailure("rho * spin_flip(rho) has a complex eigenvalue"));
        }
        if z.re < -CLIP_TOL {
            return Err(Error::NumericalFailure("rho * spin_flip(rho) has a negative eigenvalue"));
        }
    }

    let c = lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3];
    Ok((c.clamp(0.0, 1.0), lambdas))
}

/// Binary Shannon entropy in bits, with `0 log 0 = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// Entanglement of formation `h((1 + sqrt(1 - C^2)) / 2)`.
pub fn eof(c: f64) -> Result<f64> {
    if !(-CLIP_TOL..=1.0 + CLIP_TOL).contains(&c) {
        return Err(Error::OutOfRange { value: c, min: 0.0, max: 1.0 });
    }
    let c = c.clamp(0.0, 1.0);
    Ok(binary_entropy((1.0 + (1.0 - c * c).sqrt()) / 2.0))
}

pub fn entanglement(rho: &DensityMatrix, tol: &Tolerances) -> Result<EntanglementReport> {
    let (concurrence, eigs) = concurrence(rho, tol)?;
    Ok(EntanglementReport { concurrence, eof: eof(concurrence)?, wootters_eigs: Some(eigs) })
}

pub fn entanglement_pure(psi: &PureState) -> EntanglementReport {
    let concurrence = concurrence_pure(psi);
    EntanglementReport {
        concurrence,
        eof: binary_entropy((1.0 + (1.0 - concurrence * concurrence).sqrt()) / 2.0),
        wootters_eigs: None,
    }
}
