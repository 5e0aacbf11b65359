use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{blow_up, is_antiferromagnetic, make_family, Family, WeightedGraph};
use crate::rational::Rational;

/// Generator for instance `index` of a seeded run. Each index gets its own
/// stream, so instances can be regenerated in any order.
pub(crate) fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn random_ratio(rng: &mut impl Rng, num: std::ops::RangeInclusive<i64>) -> Rational {
    let p = rng.gen_range(num);
    let q = rng.gen_range(1..=8i64);
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Entries `p/q` with `p ∈ [0,16]`, `q ∈ [1,8]`.
pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_ratio(rng, 0..=16)).collect()
}

/// Entries `p/q` with `p ∈ [-16,16]`, `q ∈ [1,8]`.
pub fn random_signed_vector(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| random_ratio(rng, -16..=16)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SamplerStrategy {
    /// Blow-up of `K_q` or `K_q°`, rescaled by a positive diagonal congruence.
    Structural,
    /// Random symmetric nonnegative matrices kept only if antiferromagnetic.
    Rejection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AfmSampler {
    pub seed: u64,
    pub n_max: usize,
    pub strategy: SamplerStrategy,
}

const REJECTION_ATTEMPTS: usize = 100_000;

impl AfmSampler {
    pub fn new(seed: u64, n_max: usize) -> Self {
        AfmSampler { seed, n_max, strategy: SamplerStrategy::Structural }
    }

    pub fn with_strategy(mut self, strategy: SamplerStrategy) -> Self {
        self.strategy = strategy;
        self
    }

    /// The `index`-th graph of this run: antiferromagnetic (checked
    /// exactly), with at least one edge, on `min(2, n_max)..=n_max` vertices.
    pub fn sample(&self, index: u64) -> Result<WeightedGraph> {
        if self.n_max == 0 {
            return Err(Error::InvalidParameter("n_max must be positive".into()));
        }
        let mut rng = instance_rng(self.seed, index);
        match self.strategy {
            SamplerStrategy::Structural => loop {
                let g = self.structural(&mut rng)?;
                if g.edge_count() > 0 && is_antiferromagnetic(&g).verdict {
                    return Ok(g);
                }
            },
            SamplerStrategy::Rejection => {
                for _ in 0..REJECTION_ATTEMPTS {
                    let g = self.symmetric(&mut rng)?;
                    if g.edge_count() > 0 && is_antiferromagnetic(&g).verdict {
                        return Ok(g);
                    }
                }
                Err(Error::InvalidParameter(format!(
                    "rejection sampler found no antiferromagnetic graph in {REJECTION_ATTEMPTS} attempts"
                )))
            }
        }
    }

    /// Graphs `0..count` of this run.
    pub fn suite(&self, count: u64) -> Result<Vec<WeightedGraph>> {
        (0..count).map(|i| self.sample(i)).collect()
    }

    fn vertex_count(&self, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(self.n_max.min(2)..=self.n_max)
    }

    fn structural(&self, rng: &mut ChaCha8Rng) -> Result<WeightedGraph> {
        let n = self.vertex_count(rng);
        let q = rng.gen_range(1..=n);
        let looped = q == 1 || rng.gen_bool(0.5);
        let base = make_family(if looped { Family::KqCirc } else { Family::Complete }, &[q])?;
        let mut sizes = vec![0usize; q];
        for _ in 0..n {
            sizes[rng.gen_range(0..q)] += 1;
        }
        let g = blow_up(&base, &sizes)?;
        // S·A·S with positive diagonal S keeps the inertia
        let s: Vec<Rational> = (0..n).map(|_| random_ratio(rng, 1..=16)).collect();
        let weights = (0..n)
            .map(|i| (0..n).map(|j| g.weight(i, j) * &s[i] * &s[j]).collect())
            .collect();
        let g = WeightedGraph::new(weights)?;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(rng);
        Ok(g.permute(&perm))
    }

    fn symmetric(&self, rng: &mut ChaCha8Rng) -> Result<WeightedGraph> {
        let n = self.vertex_count(rng);
        let mut w = vec![vec![Rational::from_integer(0.into()); n]; n];
        for i in 0..n {
            for j in i..n {
                if rng.gen_bool(0.5) {
                    let x = random_ratio(rng, 1..=16);
                    w[i][j] = x.clone();
                    w[j][i] = x;
                }
            }
        }
        WeightedGraph::new(w)
    }
}
