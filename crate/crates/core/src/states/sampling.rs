// Inherent f64 math exists only when std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use core::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{DensityMatrix, PureState, Unitary2};
use crate::qmat::{ComplexMatrix, Matrix2, Matrix4};
use crate::{Error, Result};

/// Seeded generator of random states and local unitaries.
///
/// Pure states are Haar distributed (normalized complex Gaussian vectors),
/// mixed states follow the induced Hilbert–Schmidt measure `G G^† / tr`, with
/// `G` a `4 x rank` complex Ginibre matrix, and unitaries are Haar on U(2).
#[derive(Debug, Clone)]
pub struct StateSampler {
    rng: ChaCha8Rng,
}

impl StateSampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Sampler for item `index` of a stream, independent of other indices.
    pub fn for_stream(seed: u64, index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        Self { rng }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    fn gaussian_vector(&mut self) -> [Complex64; 4] {
        core::array::from_fn(|_| {
            let re = self.normal();
            let im = self.normal();
            Complex64::new(re, im)
        })
    }

    pub fn pure(&mut self) -> PureState {
        loop {
            if let Ok(psi) = PureState::normalize(self.gaussian_vector()) {
                return psi;
            }
        }
    }

    pub fn density(&mut self, rank: usize) -> Result<DensityMatrix> {
        if !(1..=4).contains(&rank) {
            return Err(Error::BadRank(rank));
        }
        let mut m = Matrix4::zeros();
        for _ in 0..rank {
            let g = self.gaussian_vector();
            m = m + ComplexMatrix::outer(&g, &g);
        }
        let tr = m.trace().re;
        let mut m = m.scale_real(1.0 / tr);
        for i in 0..4 {
            m.0[i][i].im = 0.0;
            for j in 0..i {
                m.0[i][j] = m.0[j][i].conj();
            }
        }
        Ok(DensityMatrix::from_trusted(m))
    }

    /// Haar-random single-qubit unitary: uniform SU(2) element from a random
    /// unit quaternion, times a uniform global phase.
    pub fn unitary(&mut self) -> Unitary2 {
        let q = loop {
            let q: [f64; 4] = core::array::from_fn(|_| self.normal());
            let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
            if n > 1e-12 {
                break q.map(|x| x / n);
            }
        };
        let [w, x, y, z] = q;
        let su2 = Matrix2::from_parts([[w, -y], [y, w]], [[-z, -x], [-x, z]]);
        let phase = Complex64::from_polar(1.0, TAU * self.uniform());
        Unitary2::from_trusted(su2.scale(phase))
    }
}

/// Haar-random pure state, deterministic in `seed`.
pub fn random_pure(seed: u64) -> PureState {
    StateSampler::new(seed).pure()
}

/// Hilbert–Schmidt random state of the given rank, deterministic in `seed`.
pub fn random_density(seed: u64, rank: usize) -> Result<DensityMatrix> {
    StateSampler::new(seed).density(rank)
}
