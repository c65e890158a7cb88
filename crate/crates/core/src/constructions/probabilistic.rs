use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::check_size;
use super::kwise::KwiseSampler;
use crate::error::{ensure, Result};
use crate::matrix::BooleanMatrix;
use crate::rng::{seeded, stream2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TargetProperty {
    Regular,
    Disjunct,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbConstructionParams {
    pub n: usize,
    /// Rows per band.
    pub m_prime: usize,
    pub d: usize,
    pub u: usize,
    pub seed: u64,
}

impl ProbConstructionParams {
    pub fn validate(&self) -> Result<()> {
        ensure(self.u >= 1, || "u must be at least 1".into())?;
        ensure(self.u <= self.d && self.d <= self.n, || {
            format!("need u ≤ d ≤ n, got u={} d={} n={}", self.u, self.d, self.n)
        })?;
        ensure(self.m_prime >= 1, || "m′ must be at least 1".into())
    }

    /// `⌈log₂(d/u)⌉`, raised to 1 when `d = u`.
    pub fn bands(&self) -> usize {
        let mut r = 0;
        while self.u << r < self.d {
            r += 1;
        }
        r.max(1)
    }

    pub fn rows(&self) -> usize {
        self.bands() * self.m_prime
    }

    /// Bit probability of band `i ∈ 1..=r`: `1/(2^{i+2}u)`.
    pub fn band_probability(&self, i: usize) -> f64 {
        1.0 / ((1u64 << (i + 2)) as f64 * self.u as f64)
    }
}

/// Suggested rows per band: `⌈c·d·ln(n/d)⌉` for regular matrices and
/// `⌈c·d²·ln(n/d)⌉` for disjunct ones, at least 1.
pub fn recommended_m_prime(n: usize, d: usize, c: f64, target: TargetProperty) -> usize {
    let ln = (n as f64 / d as f64).ln().max(1.0);
    let scale = match target {
        TargetProperty::Regular => d as f64,
        TargetProperty::Disjunct => (d * d) as f64,
    };
    ((c * scale * ln).ceil() as usize).max(1)
}

/// Band `i` (1-based) occupies rows `(i−1)·m′ .. i·m′`; each row is an
/// independent `(u+1)`-wise independent sample drawn from its own stream.
pub fn construct_probabilistic(params: &ProbConstructionParams) -> Result<BooleanMatrix> {
    params.validate()?;
    let rows = params.rows();
    check_size(rows, params.n)?;
    let samplers = (1..=params.bands())
        .map(|i| KwiseSampler::new(params.n, params.band_probability(i), params.u))
        .collect::<Result<Vec<_>>>()?;
    let packed: Vec<Vec<u64>> = (0..rows)
        .into_par_iter()
        .map(|r| {
            let band = r / params.m_prime;
            let mut rng = seeded(
                params.seed,
                stream2(band as u64 + 1, (r % params.m_prime) as u64),
            );
            samplers[band].sample(&mut rng)
        })
        .collect();
    BooleanMatrix::from_packed_rows(params.n, packed)
}
