//! When do two states share an optimal CHSH operator?
//!
//! The canonical optimal operator of a state is
//! `W = 2/sqrt(λ1+λ2) T (μ1μ1^T + μ2μ2^T)`. It is unique when `λ2 > λ3`, and two
//! states with unique operators share one exactly when their top two singular
//! pairs coincide (same frames, same order) and the paired singular values
//! are proportional with the common ratio `sqrt((t1²+t2²)/(f1²+f2²))`.

// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::nonlocality::{nonlocality_of_correlation, ChshOperator, NonlocalityReport, ZERO_CORRELATION};
use crate::qmat::{dot, RealMatrix3, Tolerances, Vector3};
use crate::states::{
    correlation_matrix, gamma_state, rotation_from_unitary, DensityMatrix, PureState, StateSampler, Unitary2,
};
use crate::{Error, Result};

/// Operators must reach each state's maximum to within this margin to count
/// as a shared optimum.
pub const CERTIFICATE_TOL: f64 = 1e-7;
/// Sample count along a one-parameter degenerate family.
const FAMILY_ANGLES: usize = 180;
/// Plane normals sampled when all three singular values coincide.
const FAMILY_PLANES: usize = 400;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharedDetails {
    /// Worst `1 - |<x, x'>|` over the paired left and right singular vectors.
    pub frame_residual: f64,
    /// `max_k |t_k - r s_k f_k|` over the top pair.
    pub ratio_residual: f64,
    /// Smallest shortfall `max(N(ρ) - tr(ρS), N(ϱ) - tr(ϱS))` over candidates.
    pub certificate_gap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharedOperatorVerdict {
    pub cond_same_frames: bool,
    pub cond_same_order: bool,
    pub cond_ratio: bool,
    /// A concrete operator attaining both maxima was found.
    pub certificate: bool,
    /// Either spectrum has a tie, so the conditions are not decisive.
    pub degenerate_path: bool,
    pub details: SharedDetails,
    pub witness: Option<ChshOperator>,
}

impl SharedOperatorVerdict {
    pub fn conditions_hold(&self) -> bool {
        self.cond_same_frames && self.cond_same_order && self.cond_ratio
    }

    /// The three conditions, or the certificate when they are not decisive.
    pub fn shared(&self) -> bool {
        if self.degenerate_path {
            self.certificate
        } else {
            self.conditions_hold()
        }
    }
}

pub fn shared_conditions(
    rho: &DensityMatrix,
    sigma: &DensityMatrix,
    tol: &Tolerances,
) -> Result<SharedOperatorVerdict> {
    shared_conditions_of_correlations(&correlation_matrix(rho), &correlation_matrix(sigma), tol)
}

/// [`shared_conditions`] for two correlation matrices.
pub fn shared_conditions_of_correlations(
    t: &RealMatrix3,
    f: &RealMatrix3,
    tol: &Tolerances,
) -> Result<SharedOperatorVerdict> {
    let rt = nonlocality_of_correlation(t, tol);
    let rf = nonlocality_of_correlation(f, tol);
    if rt.zero_correlation || rf.zero_correlation {
        return Err(Error::ZeroCorrelation);
    }
    let degenerate_path = rt.svd.degenerate(tol) || rf.svd.degenerate(tol);

    // Pair every singular direction of T with the best-aligned one of F.
    let mut perm = [0usize; 3];
    let mut frame_residual = 0.0f64;
    let mut signs = [1.0; 3];
    for k in 0..3 {
        let (uk, vk) = (rt.svd.left(k), rt.svd.right(k));
        let best = (0..3)
            .max_by(|&i, &j| {
                let si = dot(&vk, &rf.svd.right(i)).abs() + dot(&uk, &rf.svd.left(i)).abs();
                let sj = dot(&vk, &rf.svd.right(j)).abs() + dot(&uk, &rf.svd.left(j)).abs();
                si.total_cmp(&sj)
            })
            .unwrap_or(k);
        let du = dot(&uk, &rf.svd.left(best));
        let dv = dot(&vk, &rf.svd.right(best));
        frame_residual = frame_residual.max(1.0 - du.abs()).max(1.0 - dv.abs());
        signs[k] = (du * dv).signum();
        perm[k] = best;
    }
    let is_permutation = perm[0] != perm[1] && perm[1] != perm[2] && perm[0] != perm[2];
    let cond_same_frames = is_permutation && frame_residual <= tol.compare_tol;
    let cond_same_order = cond_same_frames && perm[0] < 2 && perm[1] < 2;

    let (tv, fv) = (rt.svd.values, rf.svd.values);
    let r = ((tv[0] * tv[0] + tv[1] * tv[1]) / (fv[0] * fv[0] + fv[1] * fv[1])).sqrt();
    let ratio_residual = (0..2).map(|k| (tv[k] - r * signs[k] * fv[perm[k]]).abs()).fold(0.0, f64::max);
    let cond_ratio = cond_same_order && ratio_residual <= tol.compare_tol;

    let (certificate_gap, witness) = certify_shared(t, f, &rt, &rf, tol);
    Ok(SharedOperatorVerdict {
        cond_same_frames,
        cond_same_order,
        cond_ratio,
        certificate: certificate_gap <= CERTIFICATE_TOL,
        degenerate_path,
        details: SharedDetails { frame_residual, ratio_residual, certificate_gap },
        witness: witness.filter(|_| certificate_gap <= CERTIFICATE_TOL),
    })
}

/// Optimal operators of a state: the canonical one, or a sampled family
/// `2/sqrt(λ1+λ2) T P` over the admissible rank-two projectors `P` when the
/// spectrum is degenerate.
fn candidate_family(t: &RealMatrix3, r: &NonlocalityReport, tol: &Tolerances, mut visit: impl FnMut(ChshOperator)) {
    let k = 2.0 / (r.lambda1 + r.lambda2).sqrt();
    let [top, low] = r.svd.degenerate_pairs(tol);
    visit(r.operator);
    let mut emit = |p: RealMatrix3| {
        if let Ok(op) = ChshOperator::from_coefficients((*t * p).scale(k)) {
            visit(op);
        }
    };
    if !low {
        return;
    }
    let (m1, m2, m3) = (r.svd.right(0), r.svd.right(1), r.svd.right(2));
    if top {
        for n in [m1, m2, m3].into_iter().chain((0..FAMILY_PLANES).map(|i| hemisphere_point(FAMILY_PLANES, i))) {
            emit(RealMatrix3::identity() - RealMatrix3::outer(&n, &n));
        }
    } else {
        let base = RealMatrix3::outer(&m1, &m1);
        for i in 0..FAMILY_ANGLES {
            let (s, c) = (core::f64::consts::PI * i as f64 / FAMILY_ANGLES as f64).sin_cos();
            let m = [0, 1, 2].map(|j| c * m2[j] + s * m3[j]);
            emit(base + RealMatrix3::outer(&m, &m));
        }
    }
}

fn hemisphere_point(n: usize, k: usize) -> Vector3 {
    let golden = core::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let z = 1.0 - (k as f64 + 0.5) / n as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let (s, c) = (golden * k as f64).sin_cos();
    [r * c, r * s, z]
}

fn certify_shared(
    t: &RealMatrix3,
    f: &RealMatrix3,
    rt: &NonlocalityReport,
    rf: &NonlocalityReport,
    tol: &Tolerances,
) -> (f64, Option<ChshOperator>) {
    let mut best: (f64, Option<ChshOperator>) = (f64::INFINITY, None);
    let mut consider = |op: ChshOperator| {
        let gap = (rt.value - op.value_on(t)).max(rf.value - op.value_on(f));
        // Earlier candidates (the canonical operators) win ties.
        if gap < best.0 - 1e-12 {
            best = (gap, Some(op));
        }
    };
    candidate_family(t, rt, tol, &mut consider);
    candidate_family(f, rf, tol, &mut consider);
    best
}

/// A pure-state pair sharing the operators `S_{θ±}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatorSharingPair {
    /// `(U_A⊗U_B)(cos θ|00> + sin θ|11>)`.
    pub psi: PureState,
    /// `(U_A⊗U_B)(sin θ|00> + cos θ|11>)`.
    pub psi_prime: PureState,
    pub s_plus: ChshOperator,
    pub s_minus: ChshOperator,
}

/// Two pure states with a common optimal CHSH operator, and the two
/// operators (conjugated by the local unitaries) that both attain.
///
/// Before conjugation `S_{θ+} = 2/sqrt(1+s²)(s σx⊗σx + σz⊗σz)` and
/// `S_{θ-} = 2/sqrt(1+s²)(-s σy⊗σy + σz⊗σz)` with `s = sin 2θ`.
pub fn operator_sharing_pair(theta: f64, ua: &Unitary2, ub: &Unitary2) -> OperatorSharingPair {
    let s = (2.0 * theta).sin();
    let k = 2.0 / (1.0 + s * s).sqrt();
    let ra = *rotation_from_unitary(ua).matrix();
    let rb = *rotation_from_unitary(ub).matrix();
    let op = |d: Vector3| {
        ChshOperator::from_coefficients(RealMatrix3::diag(d).scale(k))
            .unwrap_or_else(|_| unreachable!("finite coefficients"))
            .rotated(&ra, &rb)
    };
    OperatorSharingPair {
        psi: gamma_state(theta).transform(ua, ub),
        psi_prime: gamma_state(core::f64::consts::FRAC_PI_2 - theta).transform(ua, ub),
        s_plus: op([s, 0.0, 1.0]),
        s_minus: op([0.0, -s, 1.0]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeReport {
    pub trials: usize,
    /// Samples indistinguishable from a pair member (fidelity ≥ 1 - 1e-6).
    pub skipped: usize,
    pub violations: usize,
    /// Smallest `N(χ) - tr(χ S_{θ+})` among the tested states.
    pub min_residual: f64,
}

/// Residual at or below which a sampled state counts as attaining its
/// maximum on `S_{θ+}`.
pub const PROBE_TOL: f64 = 1e-6;
const PROBE_FIDELITY: f64 = 1.0 - 1e-6;

/// Random search for a third pure state whose maximal CHSH value is attained
/// by `S_{θ+}`, beyond the pair `γ(θ)`, `γ(π/2-θ)`.
///
/// Trial `i` draws a Haar-random state from stream `i` of `seed`, so results
/// do not depend on evaluation order.
pub fn probe_no_triple(theta: f64, trials: usize, seed: u64) -> Result<ProbeReport> {
    if (theta - core::f64::consts::FRAC_PI_4).abs() < 1e-6 {
        return Err(Error::DegenerateTheta(theta));
    }
    let id = Unitary2::identity();
    let pair = operator_sharing_pair(theta, &id, &id);
    let tol = Tolerances::DEFAULT;
    let mut report = ProbeReport { trials, skipped: 0, violations: 0, min_residual: f64::INFINITY };
    for i in 0..trials {
        let chi = StateSampler::for_stream(seed, i as u64).pure();
        if chi.fidelity(&pair.psi) >= PROBE_FIDELITY || chi.fidelity(&pair.psi_prime) >= PROBE_FIDELITY {
            report.skipped += 1;
            continue;
        }
        let t = correlation_matrix(&chi.density());
        let n = nonlocality_of_correlation(&t, &tol).value;
        let residual = n - pair.s_plus.value_on(&t);
        if residual <= PROBE_TOL {
            report.violations += 1;
        }
        report.min_residual = report.min_residual.min(residual);
    }
    Ok(report)
}

/// `λ1` of a correlation matrix is below the zero-correlation cutoff.
pub fn is_uncorrelated(t: &RealMatrix3) -> bool {
    let n = t.frobenius_norm();
    n * n <= ZERO_CORRELATION
}
