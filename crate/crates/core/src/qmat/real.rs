// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use core::ops::{Add, Index, IndexMut, Mul, Sub};

/// Real 3-vector.
pub type Vector3 = [f64; 3];

pub fn dot(a: &Vector3, b: &Vector3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn norm(a: &Vector3) -> f64 {
    dot(a, a).sqrt()
}

pub fn cross(a: &Vector3, b: &Vector3) -> Vector3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn scale(a: &Vector3, k: f64) -> Vector3 {
    a.map(|x| x * k)
}

pub fn add(a: &Vector3, b: &Vector3) -> Vector3 {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn sub(a: &Vector3, b: &Vector3) -> Vector3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

/// Unit vector along `a`, or `None` when `a` vanishes.
pub fn normalized(a: &Vector3) -> Option<Vector3> {
    let n = norm(a);
    (n > 0.0 && n.is_finite()).then(|| scale(a, 1.0 / n))
}

/// A deterministic unit vector orthogonal to the unit vector `a`.
pub fn any_orthogonal(a: &Vector3) -> Vector3 {
    // Cross with the coordinate axis least aligned with `a`.
    let mut axis = 0;
    for k in 1..3 {
        if a[k].abs() < a[axis].abs() {
            axis = k;
        }
    }
    let mut e = [0.0; 3];
    e[axis] = 1.0;
    normalized(&cross(a, &e)).unwrap_or([1.0, 0.0, 0.0])
}

/// Dense 3x3 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RealMatrix3(pub [[f64; 3]; 3]);

impl RealMatrix3 {
    pub const fn zeros() -> Self {
        Self([[0.0; 3]; 3])
    }

    pub const fn identity() -> Self {
        Self([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    pub fn diag(d: Vector3) -> Self {
        Self([[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]])
    }

    /// Matrix whose columns are `c0, c1, c2`.
    pub fn from_columns(c: [Vector3; 3]) -> Self {
        Self(core::array::from_fn(|i| [c[0][i], c[1][i], c[2][i]]))
    }

    /// `u v^T`.
    pub fn outer(u: &Vector3, v: &Vector3) -> Self {
        Self(core::array::from_fn(|i| core::array::from_fn(|j| u[i] * v[j])))
    }

    pub fn column(&self, j: usize) -> Vector3 {
        [self.0[0][j], self.0[1][j], self.0[2][j]]
    }

    pub fn set_column(&mut self, j: usize, c: &Vector3) {
        for i in 0..3 {
            self.0[i][j] = c[i];
        }
    }

    pub fn row(&self, i: usize) -> Vector3 {
        self.0[i]
    }

    pub fn transpose(&self) -> Self {
        Self(core::array::from_fn(|i| core::array::from_fn(|j| self.0[j][i])))
    }

    pub fn apply(&self, v: &Vector3) -> Vector3 {
        core::array::from_fn(|i| dot(&self.0[i], v))
    }

    /// `u^T M v`.
    pub fn bilinear(&self, u: &Vector3, v: &Vector3) -> f64 {
        dot(u, &self.apply(v))
    }

    pub fn scale(&self, k: f64) -> Self {
        Self(self.0.map(|row| row.map(|x| x * k)))
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    /// Frobenius inner product `sum_jk a_jk b_jk`.
    pub fn frobenius_dot(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                acc += self.0[i][j] * other.0[i][j];
            }
        }
        acc
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.frobenius_dot(self).sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    /// Largest entry of `|M M^T - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        (*self * self.transpose()).max_abs_diff(&Self::identity())
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_finite())
    }
}

impl Index<(usize, usize)> for RealMatrix3 {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.0[i][j]
    }
}

impl IndexMut<(usize, usize)> for RealMatrix3 {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.0[i][j]
    }
}

impl Mul for RealMatrix3 {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        Self(core::array::from_fn(|i| core::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * rhs.0[k][j]).sum())))
    }
}

impl Add for RealMatrix3 {
    type Output = Self;

    fn add(self, rhs: Self) -> Self {
        Self(core::array::from_fn(|i| core::array::from_fn(|j| self.0[i][j] + rhs.0[i][j])))
    }
}

impl Sub for RealMatrix3 {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        Self(core::array::from_fn(|i| core::array::from_fn(|j| self.0[i][j] - rhs.0[i][j])))
    }
}
