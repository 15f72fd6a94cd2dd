// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use core::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

/// Dense `N x N` complex matrix stored row-major on the stack.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexMatrix<const N: usize>(pub [[Complex64; N]; N]);

pub type Matrix2 = ComplexMatrix<2>;
pub type Matrix4 = ComplexMatrix<4>;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

impl<const N: usize> ComplexMatrix<N> {
    pub const fn zeros() -> Self {
        Self([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_real_diagonal(diag: [f64; N]) -> Self {
        let mut m = Self::zeros();
        for (i, d) in diag.into_iter().enumerate() {
            m.0[i][i] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a matrix from separate real and imaginary parts.
    pub fn from_parts(re: [[f64; N]; N], im: [[f64; N]; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = Complex64::new(re[i][j], im[i][j]);
            }
        }
        m
    }

    /// Outer product `|u><v|`.
    pub fn outer(u: &[Complex64; N], v: &[Complex64; N]) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = u[i] * v[j].conj();
            }
        }
        m
    }

    pub fn real_parts(&self) -> [[f64; N]; N] {
        self.0.map(|row| row.map(|z| z.re))
    }

    pub fn imag_parts(&self) -> [[f64; N]; N] {
        self.0.map(|row| row.map(|z| z.im))
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Returns an error for NaN or infinite entries.
    pub fn ensure_finite(&self) -> Result<()> {
        if self.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite)
        }
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[j][i] = self.0[i][j].conj();
            }
        }
        m
    }

    /// Entrywise complex conjugate (not transposed).
    pub fn conj(&self) -> Self {
        Self(self.0.map(|row| row.map(|z| z.conj())))
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self(self.0.map(|row| row.map(|z| z * k)))
    }

    pub fn scale_real(&self, k: f64) -> Self {
        Self(self.0.map(|row| row.map(|z| z * k)))
    }

    /// `M v`.
    pub fn apply(&self, v: &[Complex64; N]) -> [Complex64; N] {
        let mut out = [ZERO; N];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..N).map(|j| self.0[i][j] * v[j]).sum();
        }
        out
    }

    /// `tr(self * other)` without forming the product.
    pub fn trace_product(&self, other: &Self) -> Complex64 {
        let mut acc = ZERO;
        for i in 0..N {
            for k in 0..N {
                acc += self.0[i][k] * other.0[k][i];
            }
        }
        acc
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    /// Largest entrywise modulus of `self - self^dagger`.
    pub fn hermiticity_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in i..N {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Largest entrywise modulus of `U U^dagger - I`.
    pub fn unitarity_defect(&self) -> f64 {
        (*self * self.adjoint()).max_abs_diff(&Self::identity())
    }

    pub fn column(&self, j: usize) -> [Complex64; N] {
        core::array::from_fn(|i| self.0[i][j])
    }

    pub fn set_column(&mut self, j: usize, col: &[Complex64; N]) {
        for i in 0..N {
            self.0[i][j] = col[i];
        }
    }
}

impl Matrix2 {
    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Matrix2) -> Matrix4 {
        let mut m = Matrix4::zeros();
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        m.0[2 * i + k][2 * j + l] = self.0[i][j] * other.0[k][l];
                    }
                }
            }
        }
        m
    }
}

impl<const N: usize> Default for ComplexMatrix<N> {
    fn default() -> Self {
        Self::zeros()
    }
}

impl<const N: usize> Index<(usize, usize)> for ComplexMatrix<N> {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.0[i][j]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for ComplexMatrix<N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.0[i][j]
    }
}

impl<const N: usize> Mul for ComplexMatrix<N> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    m.0[i][j] += a * rhs.0[k][j];
                }
            }
        }
        m
    }
}

impl<const N: usize> Add for ComplexMatrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for ComplexMatrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for ComplexMatrix<N> {
    type Output = Self;

    fn neg(self) -> Self {
        Self(self.0.map(|row| row.map(|z| -z)))
    }
}

/// The Pauli matrices `[σx, σy, σz]`.
pub fn pauli() -> [Matrix2; 3] {
    let i = Complex64::new(0.0, 1.0);
    [
        ComplexMatrix([[ZERO, ONE], [ONE, ZERO]]),
        ComplexMatrix([[ZERO, -i], [i, ZERO]]),
        ComplexMatrix([[ONE, ZERO], [ZERO, -ONE]]),
    ]
}

/// Euclidean norm of a complex vector.
pub fn vec_norm<const N: usize>(v: &[Complex64; N]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `<u|v>` (conjugate-linear in the first argument).
pub fn inner<const N: usize>(u: &[Complex64; N], v: &[Complex64; N]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}
