//! Eigenvalue routines for small dense complex matrices.
//!
//! Hermitian problems use cyclic Jacobi rotations, which are deterministic and
//! accurate to working precision for the 2x2 and 4x4 sizes used here. The
//! general (non-Hermitian) solver reduces to Hessenberg form and runs a shifted
//! complex QR iteration; it only returns eigenvalues.

// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use num_complex::Complex64;

use super::complex::ComplexMatrix;
use super::Tolerances;
use crate::{Error, Result};

const EPS: f64 = f64::EPSILON;
const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianEigen<const N: usize> {
    /// Eigenvalues in descending order.
    pub values: [f64; N],
    /// Orthonormal eigenvectors stored as columns, matching `values`.
    pub vectors: ComplexMatrix<N>,
}

impl<const N: usize> HermitianEigen<N> {
    pub fn vector(&self, k: usize) -> [Complex64; N] {
        self.vectors.column(k)
    }

    /// `sum_k f(lambda_k) v_k v_k^dagger`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix<N> {
        let mut out = ComplexMatrix::zeros();
        for k in 0..N {
            let v = self.vector(k);
            out = out + ComplexMatrix::outer(&v, &v).scale_real(f(self.values[k]));
        }
        out
    }
}

/// Jacobi rotation `J` that annihilates the `(p, q)` entry of a Hermitian
/// matrix under `J^dagger A J`. Returns `(c, s, phase)` with
/// `J_pp = c`, `J_pq = s`, `J_qp = -s conj(phase)`, `J_qq = c conj(phase)`.
fn jacobi_rotation(app: f64, aqq: f64, apq: Complex64) -> (f64, f64, Complex64) {
    let abs = apq.norm();
    let phase = apq / abs;
    let tau = (aqq - app) / (2.0 * abs);
    let t = if tau >= 0.0 { 1.0 / (tau + 1.0f64.hypot(tau)) } else { -1.0 / (-tau + 1.0f64.hypot(tau)) };
    let c = 1.0 / 1.0f64.hypot(t);
    (c, t * c, phase)
}

/// Right-multiplies the columns `p, q` of `m` by the rotation.
fn rotate_columns<const N: usize>(m: &mut ComplexMatrix<N>, p: usize, q: usize, (c, s, phase): (f64, f64, Complex64)) {
    let pc = phase.conj();
    for i in 0..N {
        let x = m.0[i][p];
        let y = m.0[i][q];
        m.0[i][p] = x * c - y * (pc * s);
        m.0[i][q] = x * s + y * (pc * c);
    }
}

/// Left-multiplies the rows `p, q` of `m` by the adjoint of the rotation.
fn rotate_rows_adjoint<const N: usize>(
    m: &mut ComplexMatrix<N>,
    p: usize,
    q: usize,
    (c, s, phase): (f64, f64, Complex64),
) {
    for j in 0..N {
        let x = m.0[p][j];
        let y = m.0[q][j];
        m.0[p][j] = x * c - y * (phase * s);
        m.0[q][j] = x * s + y * (phase * c);
    }
}

/// Eigenvalues (descending) and orthonormal eigenvectors of a Hermitian matrix.
///
/// Fails with [`Error::NotHermitian`] when some `|m_ij - conj(m_ji)|` exceeds
/// `tol.eig_tol`. The input is symmetrized before iterating, so identical input
/// bytes always give identical output.
pub fn hermitian_eigensystem<const N: usize>(m: &ComplexMatrix<N>, tol: &Tolerances) -> Result<HermitianEigen<N>> {
    m.ensure_finite()?;
    let deviation = m.hermiticity_defect();
    if deviation > tol.eig_tol {
        return Err(Error::NotHermitian { deviation });
    }
    let mut a = (*m + m.adjoint()).scale_real(0.5);
    for i in 0..N {
        a.0[i][i].im = 0.0;
    }
    let mut v = ComplexMatrix::<N>::identity();

    let scale = a.0.iter().flatten().fold(0.0f64, |acc, z| acc.max(z.norm()));
    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..N {
            for q in p + 1..N {
                off += a.0[p][q].norm_sqr();
            }
        }
        if off.sqrt() <= EPS * EPS * scale || off == 0.0 {
            break;
        }
        for p in 0..N {
            for q in p + 1..N {
                let apq = a.0[p][q];
                if apq.norm() <= EPS * EPS * scale {
                    a.0[p][q] = Complex64::new(0.0, 0.0);
                    a.0[q][p] = Complex64::new(0.0, 0.0);
                    continue;
                }
                let rot = jacobi_rotation(a.0[p][p].re, a.0[q][q].re, apq);
                rotate_columns(&mut a, p, q, rot);
                rotate_rows_adjoint(&mut a, p, q, rot);
                a.0[p][q] = Complex64::new(0.0, 0.0);
                a.0[q][p] = Complex64::new(0.0, 0.0);
                a.0[p][p].im = 0.0;
                a.0[q][q].im = 0.0;
                rotate_columns(&mut v, p, q, rot);
            }
        }
    }

    let mut order: [usize; N] = core::array::from_fn(|i| i);
    // Stable sort keeps the Jacobi ordering for exactly tied eigenvalues.
    order.sort_unstable_by(|&i, &j| a.0[j][j].re.total_cmp(&a.0[i][i].re));
    let values = order.map(|i| a.0[i][i].re);
    let mut vectors = ComplexMatrix::<N>::zeros();
    for (k, &src) in order.iter().enumerate() {
        let mut col = v.column(src);
        // Fix the phase: the largest-modulus component is made real positive.
        let mut best = 0;
        for i in 1..N {
            if col[i].norm() > col[best].norm() + 1e-14 {
                best = i;
            }
        }
        let norm = col[best].norm();
        if norm > 0.0 {
            let ph = col[best].conj() / norm;
            col = col.map(|z| z * ph);
        }
        vectors.set_column(k, &col);
    }
    Ok(HermitianEigen { values, vectors })
}

/// Complex Givens rotation `[[c, s], [-conj(s), c]]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let an = a.norm();
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if an == 0.0 {
        return (0.0, Complex64::new(1.0, 0.0));
    }
    let r = an.hypot(bn);
    (an / r, (a / an) * b.conj() / r)
}

fn apply_givens_rows<const N: usize>(
    h: &mut ComplexMatrix<N>,
    i: usize,
    j: usize,
    (c, s): (f64, Complex64),
    cols: core::ops::Range<usize>,
) {
    for k in cols {
        let x = h.0[i][k];
        let y = h.0[j][k];
        h.0[i][k] = x * c + s * y;
        h.0[j][k] = -s.conj() * x + y * c;
    }
}

fn apply_givens_cols_adjoint<const N: usize>(
    h: &mut ComplexMatrix<N>,
    i: usize,
    j: usize,
    (c, s): (f64, Complex64),
    rows: core::ops::Range<usize>,
) {
    for k in rows {
        let x = h.0[k][i];
        let y = h.0[k][j];
        h.0[k][i] = x * c + y * s.conj();
        h.0[k][j] = -x * s + y * c;
    }
}

/// Eigenvalues of a general complex matrix, in no particular order.
pub fn eigenvalues_general<const N: usize>(m: &ComplexMatrix<N>) -> Result<[Complex64; N]> {
    m.ensure_finite()?;
    let mut h = *m;
    let scale = h.0.iter().flatten().fold(0.0f64, |acc, z| acc.max(z.norm()));
    let mut eig = [Complex64::new(0.0, 0.0); N];
    if N == 0 {
        return Ok(eig);
    }

    // Hessenberg reduction by Givens similarity transforms.
    for k in 0..N.saturating_sub(2) {
        for i in (k + 2..N).rev() {
            let g = givens(h.0[i - 1][k], h.0[i][k]);
            apply_givens_rows(&mut h, i - 1, i, g, 0..N);
            apply_givens_cols_adjoint(&mut h, i - 1, i, g, 0..N);
            h.0[i][k] = Complex64::new(0.0, 0.0);
        }
    }

    let mut hi = N - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let mut lo = hi;
        while lo > 0 {
            let sub = h.0[lo][lo - 1].norm();
            let near = h.0[lo][lo].norm() + h.0[lo - 1][lo - 1].norm();
            if sub <= EPS * near || sub <= EPS * scale {
                h.0[lo][lo - 1] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h.0[hi][hi];
            hi -= 1;
            iter = 0;
            continue;
        }
        iter += 1;
        total += 1;
        if total > 100 * N {
            return Err(Error::NumericalFailure("QR iteration did not converge"));
        }

        let a = h.0[hi - 1][hi - 1];
        let b = h.0[hi - 1][hi];
        let c = h.0[hi][hi - 1];
        let d = h.0[hi][hi];
        let mu = if iter.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            d + Complex64::new(c.norm(), 0.0)
        } else {
            let half = (a - d) * 0.5;
            let disc = (half * half + b * c).sqrt();
            let mean = (a + d) * 0.5;
            let l1 = mean + disc;
            let l2 = mean - disc;
            if (l1 - d).norm() <= (l2 - d).norm() {
                l1
            } else {
                l2
            }
        };

        for k in lo..=hi {
            h.0[k][k] -= mu;
        }
        let mut rots = [(1.0, Complex64::new(0.0, 0.0)); N];
        for k in lo..hi {
            let g = givens(h.0[k][k], h.0[k + 1][k]);
            apply_givens_rows(&mut h, k, k + 1, g, lo..hi + 1);
            h.0[k + 1][k] = Complex64::new(0.0, 0.0);
            rots[k] = g;
        }
        for k in lo..hi {
            apply_givens_cols_adjoint(&mut h, k, k + 1, rots[k], lo..hi + 1);
        }
        for k in lo..=hi {
            h.0[k][k] += mu;
        }
    }
    eig[0] = h.0[0][0];
    Ok(eig)
}

/// Singular values (descending) of a complex square matrix by one-sided
/// Jacobi. Small singular values are accurate to about `eps * ||m||` in
/// absolute terms, which squaring-based routes do not achieve.
pub fn singular_values<const N: usize>(m: &ComplexMatrix<N>) -> Result<[f64; N]> {
    m.ensure_finite()?;
    let mut a = *m;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..N {
            for q in p + 1..N {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for i in 0..N {
                    alpha += a.0[i][p].norm_sqr();
                    beta += a.0[i][q].norm_sqr();
                    gamma += a.0[i][p].conj() * a.0[i][q];
                }
                if gamma.norm() <= EPS * (alpha * beta).sqrt() || gamma.norm() == 0.0 {
                    continue;
                }
                rotated = true;
                let rot = jacobi_rotation(alpha, beta, gamma);
                rotate_columns(&mut a, p, q, rot);
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: [f64; N] = core::array::from_fn(|j| (0..N).map(|i| a.0[i][j].norm_sqr()).sum::<f64>().sqrt());
    sv.sort_unstable_by(|x, y| y.total_cmp(x));
    Ok(sv)
}
