//! Maximal CHSH violation, the optimal operator and its measurement settings.
//!
//! For a state with correlation matrix `T` and `T^T T` eigenvalues
//! `λ1 >= λ2 >= λ3`, the largest value of `tr(ρ S)` over CHSH operators
//! `S = A⊗(B+B') + A'⊗(B-B')` is `N(ρ) = 2 sqrt(λ1 + λ2)`.

mod oracle;

// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::qmat::{add, norm, pauli, scale, sub, svd3, Matrix4, RealMatrix3, SignedSvd3, Tolerances, Vector3};
use crate::states::{correlation_matrix, DensityMatrix};
use crate::{Error, Result};

pub use oracle::brute_force_nonlocality;

/// Correlations with `λ1` at or below this are treated as zero.
pub const ZERO_CORRELATION: f64 = 1e-12;
/// Unit-norm tolerance for setting vectors.
pub const UNIT_TOL: f64 = 1e-10;

const E3: Vector3 = [0.0, 0.0, 1.0];
const E1: Vector3 = [1.0, 0.0, 0.0];

/// Measurement directions for `A = a·σ`, `A' = a'·σ` on Alice's side and
/// `B`, `B'` on Bob's, with `b ± b'` along orthogonal unit vectors weighted by
/// `cos θ*` and `sin θ*`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshSetting {
    pub a: Vector3,
    pub a_prime: Vector3,
    pub b: Vector3,
    pub b_prime: Vector3,
    pub mix_angle: f64,
}

impl ChshSetting {
    pub fn new(a: Vector3, a_prime: Vector3, b: Vector3, b_prime: Vector3, mix_angle: f64) -> Result<Self> {
        for v in [a, a_prime, b, b_prime] {
            let n = norm(&v);
            if !n.is_finite() || (n - 1.0).abs() > UNIT_TOL {
                return Err(Error::NotNormalized { norm_sqr: n * n });
            }
        }
        if !(0.0..=core::f64::consts::FRAC_PI_2).contains(&mix_angle) {
            return Err(Error::OutOfRange { value: mix_angle, min: 0.0, max: core::f64::consts::FRAC_PI_2 });
        }
        Ok(Self { a, a_prime, b, b_prime, mix_angle })
    }

    /// Coefficients `W = a (b+b')^T + a' (b-b')^T`.
    pub fn coefficients(&self) -> RealMatrix3 {
        RealMatrix3::outer(&self.a, &add(&self.b, &self.b_prime))
            + RealMatrix3::outer(&self.a_prime, &sub(&self.b, &self.b_prime))
    }

    pub fn operator(&self) -> ChshOperator {
        ChshOperator { w: self.coefficients(), setting: Some(*self) }
    }

    /// Rotate Alice's vectors by `ra` and Bob's by `rb`.
    pub fn rotated(&self, ra: &RealMatrix3, rb: &RealMatrix3) -> Self {
        Self {
            a: ra.apply(&self.a),
            a_prime: ra.apply(&self.a_prime),
            b: rb.apply(&self.b),
            b_prime: rb.apply(&self.b_prime),
            mix_angle: self.mix_angle,
        }
    }
}

/// CHSH operator `S = Σ w_jk σ_j⊗σ_k`, stored by its Pauli coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshOperator {
    w: RealMatrix3,
    setting: Option<ChshSetting>,
}

impl ChshOperator {
    pub fn from_coefficients(w: RealMatrix3) -> Result<Self> {
        if !w.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(Self { w, setting: None })
    }

    pub fn coefficients(&self) -> &RealMatrix3 {
        &self.w
    }

    pub fn setting(&self) -> Option<&ChshSetting> {
        self.setting.as_ref()
    }

    /// The Hermitian 4x4 operator.
    pub fn to_matrix4(&self) -> Matrix4 {
        let p = pauli();
        let mut m = Matrix4::zeros();
        for j in 0..3 {
            for k in 0..3 {
                m = m + p[j].kron(&p[k]).scale_real(self.w[(j, k)]);
            }
        }
        m
    }

    /// `W' = R_A W R_B^T`, the operator conjugated by the local unitaries
    /// whose Bloch rotations are `ra` and `rb`.
    pub fn rotated(&self, ra: &RealMatrix3, rb: &RealMatrix3) -> Self {
        Self { w: *ra * self.w * rb.transpose(), setting: self.setting.map(|s| s.rotated(ra, rb)) }
    }

    /// `tr(ρ S) = Σ w_jk T_jk` for a given correlation matrix.
    pub fn value_on(&self, t: &RealMatrix3) -> f64 {
        self.w.frobenius_dot(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NonlocalityReport {
    pub value: f64,
    pub lambda1: f64,
    pub lambda2: f64,
    pub operator: ChshOperator,
    pub setting: ChshSetting,
    /// `λ2 ≈ λ3`: the optimal operator is not unique.
    pub degenerate: bool,
    /// `λ2 ≈ 0`: the second measurement pair carries no weight.
    pub rank_deficient: bool,
    /// `T ≈ 0`: every setting gives zero and a canonical z-axis one is returned.
    pub zero_correlation: bool,
    /// Signed decomposition of `T`; `μ1`, `μ2` are its first two right vectors.
    pub svd: SignedSvd3,
}

impl NonlocalityReport {
    pub fn mu(&self, k: usize) -> Vector3 {
        self.svd.right(k)
    }
}

/// `N(ρ) = 2 sqrt(λ1 + λ2)` with the canonical optimal operator.
pub fn nonlocality(rho: &DensityMatrix, tol: &Tolerances) -> NonlocalityReport {
    nonlocality_of_correlation(&correlation_matrix(rho), tol)
}

/// [`nonlocality`] for a given correlation matrix.
pub fn nonlocality_of_correlation(t: &RealMatrix3, tol: &Tolerances) -> NonlocalityReport {
    let svd = svd3(t);
    let [t1, t2, _] = svd.values;
    let (lambda1, lambda2) = (t1 * t1, t2 * t2);
    let value = 2.0 * (lambda1 + lambda2).sqrt();
    let degenerate = svd.degenerate_pairs(tol)[1];

    if lambda1 <= ZERO_CORRELATION {
        let setting = ChshSetting { a: E3, a_prime: E1, b: E3, b_prime: E3, mix_angle: 0.0 };
        return NonlocalityReport {
            value,
            lambda1,
            lambda2,
            operator: setting.operator(),
            setting,
            degenerate,
            rank_deficient: true,
            zero_correlation: true,
            svd,
        };
    }

    let rank_deficient = lambda2 <= ZERO_CORRELATION;
    let (c, c_prime) = (svd.right(0), svd.right(1));
    let a = scale(&svd.left(0), t1.signum());
    // For λ2 = 0 the second branch has zero weight and any unit a' will do.
    let a_prime = if t2 == 0.0 { svd.left(1) } else { scale(&svd.left(1), t2.signum()) };
    let mix_angle = if rank_deficient { 0.0 } else { t2.abs().atan2(t1.abs()) };
    let (s, co) = mix_angle.sin_cos();
    let b = add(&scale(&c, co), &scale(&c_prime, s));
    let b_prime = sub(&scale(&c, co), &scale(&c_prime, s));
    let setting = ChshSetting { a, a_prime, b, b_prime, mix_angle };

    NonlocalityReport {
        value,
        lambda1,
        lambda2,
        operator: setting.operator(),
        setting,
        degenerate,
        rank_deficient,
        zero_correlation: false,
        svd,
    }
}

/// Canonical optimal operator and setting.
pub fn optimal_chsh(rho: &DensityMatrix, tol: &Tolerances) -> Result<(ChshOperator, ChshSetting)> {
    let r = nonlocality(rho, tol);
    if r.zero_correlation {
        return Err(Error::ZeroCorrelation);
    }
    Ok((r.operator, r.setting))
}

/// `tr(ρ S)`.
pub fn chsh_value(rho: &DensityMatrix, op: &ChshOperator) -> f64 {
    op.value_on(&correlation_matrix(rho))
}
