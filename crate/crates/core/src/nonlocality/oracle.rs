// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::qmat::{add, norm, sub, RealMatrix3, Vector3};
use crate::states::{correlation_matrix, rotation_from_unitary, DensityMatrix, StateSampler};
use crate::{Error, Result};

const STARTS: usize = 4;

/// Golden-angle spiral of `n` nearly uniform points on the unit sphere.
fn fibonacci_sphere(n: usize, k: usize) -> Vector3 {
    let golden = core::f64::consts::PI * (3.0 - 5.0f64.sqrt());
    let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let (s, c) = (golden * k as f64).sin_cos();
    [r * c, r * s, z]
}

/// Rotation by `angle` about coordinate axis `axis`.
fn rotate_about(v: &Vector3, axis: usize, angle: f64) -> Vector3 {
    let (s, c) = angle.sin_cos();
    let (i, j) = ((axis + 1) % 3, (axis + 2) % 3);
    let mut out = *v;
    out[i] = c * v[i] - s * v[j];
    out[j] = s * v[i] + c * v[j];
    out
}

/// `max_{a,a'} <a|T(b+b')> + <a'|T(b-b')>` for fixed Bob directions.
fn objective(t: &RealMatrix3, b: &Vector3, bp: &Vector3) -> f64 {
    norm(&t.apply(&add(b, bp))) + norm(&t.apply(&sub(b, bp)))
}

/// Maximal CHSH value by direct search, independent of the singular-value
/// formula.
///
/// Alice's directions are optimized in closed form, leaving a search over
/// Bob's pair `(b, b')`: every pair from two randomly rotated Fibonacci grids
/// of `grid_steps` points, followed by `refine_iters` sweeps of a
/// coordinate-rotation pattern search from the best few grid pairs. The
/// result never exceeds the true maximum and is deterministic in `seed`.
pub fn brute_force_nonlocality(rho: &DensityMatrix, grid_steps: usize, refine_iters: usize, seed: u64) -> Result<f64> {
    if grid_steps < 8 {
        return Err(Error::BadResolution(grid_steps));
    }
    let t = correlation_matrix(rho);
    let mut sampler = StateSampler::new(seed);
    let rb = *rotation_from_unitary(&sampler.unitary()).matrix();
    let rbp = *rotation_from_unitary(&sampler.unitary()).matrix();
    let grid_b: [_; 2] = [rb, rbp];
    let point = |side: usize, k: usize| grid_b[side].apply(&fibonacci_sphere(grid_steps, k));

    let mut best = [(f64::NEG_INFINITY, 0usize, 0usize); STARTS];
    for i in 0..grid_steps {
        let b = point(0, i);
        for j in 0..grid_steps {
            let f = objective(&t, &b, &point(1, j));
            if f > best[STARTS - 1].0 {
                let mut k = STARTS - 1;
                best[k] = (f, i, j);
                while k > 0 && best[k].0 > best[k - 1].0 {
                    best.swap(k, k - 1);
                    k -= 1;
                }
            }
        }
    }

    let initial_step = (4.0 * core::f64::consts::PI / grid_steps as f64).sqrt();
    let mut overall = best[0].0;
    for &(f0, i, j) in best.iter().filter(|s| s.0.is_finite()) {
        let (mut b, mut bp, mut f) = (point(0, i), point(1, j), f0);
        let mut step = initial_step;
        for _ in 0..refine_iters {
            let mut candidate = None;
            for axis in 0..3 {
                for sign in [-1.0, 1.0] {
                    for side in 0..2 {
                        let (nb, nbp) = if side == 0 {
                            (rotate_about(&b, axis, sign * step), bp)
                        } else {
                            (b, rotate_about(&bp, axis, sign * step))
                        };
                        let g = objective(&t, &nb, &nbp);
                        if g > candidate.map_or(f, |c: (f64, Vector3, Vector3)| c.0) {
                            candidate = Some((g, nb, nbp));
                        }
                    }
                }
            }
            match candidate {
                Some((g, nb, nbp)) => (f, b, bp) = (g, nb, nbp),
                None => step *= 0.5,
            }
        }
        overall = overall.max(f);
    }
    Ok(overall)
}
