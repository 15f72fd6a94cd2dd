// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use super::real::{any_orthogonal, cross, dot, norm, normalized, RealMatrix3, Vector3};
use super::Tolerances;

const EPS: f64 = f64::EPSILON;
const TIE_TOL: f64 = 1e-12;

/// Signed singular value decomposition `M = U diag(t) V^T` with
/// `det U = det V = +1` and `|t1| >= |t2| >= |t3|`.
///
/// Any reflection in the raw orthogonal factors is absorbed into the sign of
/// `t3`, so both factors are proper rotations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SignedSvd3 {
    pub u: RealMatrix3,
    pub v: RealMatrix3,
    pub values: Vector3,
}

impl SignedSvd3 {
    pub fn magnitudes(&self) -> Vector3 {
        self.values.map(f64::abs)
    }

    pub fn left(&self, k: usize) -> Vector3 {
        self.u.column(k)
    }

    pub fn right(&self, k: usize) -> Vector3 {
        self.v.column(k)
    }

    pub fn reconstruct(&self) -> RealMatrix3 {
        self.u * RealMatrix3::diag(self.values) * self.v.transpose()
    }

    /// `[|t1|-|t2| < tol, |t2|-|t3| < tol]`.
    pub fn degenerate_pairs(&self, tol: &Tolerances) -> [bool; 2] {
        let m = self.magnitudes();
        [m[0] - m[1] < tol.compare_tol, m[1] - m[2] < tol.compare_tol]
    }

    /// True when any two adjacent magnitudes coincide within `compare_tol`.
    pub fn degenerate(&self, tol: &Tolerances) -> bool {
        let [a, b] = self.degenerate_pairs(tol);
        a || b
    }
}

/// Signed SVD of a finite 3x3 real matrix by one-sided Jacobi.
pub fn svd3(m: &RealMatrix3) -> SignedSvd3 {
    let mut a = *m;
    let mut v = RealMatrix3::identity();

    for _ in 0..64 {
        let mut rotated = false;
        for p in 0..3 {
            for q in p + 1..3 {
                let cp = a.column(p);
                let cq = a.column(q);
                let alpha = dot(&cp, &cp);
                let beta = dot(&cq, &cq);
                let gamma = dot(&cp, &cq);
                if gamma == 0.0 || gamma.abs() <= EPS * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (2.0 * gamma);
                let t = zeta.signum() / (zeta.abs() + 1.0f64.hypot(zeta));
                let c = 1.0 / 1.0f64.hypot(t);
                let s = c * t;
                for mat in [&mut a, &mut v] {
                    for i in 0..3 {
                        let x = mat.0[i][p];
                        let y = mat.0[i][q];
                        mat.0[i][p] = c * x - s * y;
                        mat.0[i][q] = s * x + c * y;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let sigma = [0, 1, 2].map(|j| norm(&a.column(j)));
    // Stable descending sort; values tied to rounding keep the order z, x, y.
    let tie = TIE_TOL * sigma.iter().fold(0.0f64, |m, x| m.max(*x));
    let mut order = [2usize, 0, 1];
    for i in 1..3 {
        let mut k = i;
        while k > 0 && sigma[order[k]] > sigma[order[k - 1]] + tie {
            order.swap(k, k - 1);
            k -= 1;
        }
    }
    let b = order.map(|j| a.column(j));
    let mut vcols = order.map(|j| v.column(j));
    let s = order.map(|j| sigma[j]);

    let u1 = normalized(&b[0]).unwrap_or([1.0, 0.0, 0.0]);
    let u2 = {
        let raw = normalized(&b[1]).unwrap_or_else(|| any_orthogonal(&u1));
        // Re-orthogonalize against u1 so the frame stays exactly orthonormal.
        let proj = dot(&raw, &u1);
        let r = [raw[0] - proj * u1[0], raw[1] - proj * u1[1], raw[2] - proj * u1[2]];
        normalized(&r).unwrap_or_else(|| any_orthogonal(&u1))
    };
    let u3 = cross(&u1, &u2);
    let mut t3 = dot(&u3, &b[2]);

    let mut vm = RealMatrix3::from_columns(vcols);
    if vm.det() < 0.0 {
        vcols[2] = vcols[2].map(|x| -x);
        t3 = -t3;
        vm = RealMatrix3::from_columns(vcols);
    }
    // Magnitude of t3 from the column norm is more accurate than the projection.
    let t3 = if t3 < 0.0 { -s[2] } else { s[2] };
    SignedSvd3 { u: RealMatrix3::from_columns([u1, u2, u3]), v: vm, values: [s[0], s[1], t3] }
}
