//! Exactly `(u+1)`-wise independent biased bits from random polynomials.
//!
//! A uniformly random polynomial of degree at most `u` over a prime field
//! `F_q`, evaluated at `u + 1` distinct points, is uniform on `F_q^{u+1}`.
//! Thresholding each evaluation at `⌊p·q⌋` therefore yields bits that are
//! `(u+1)`-wise independent with marginal `⌊p·q⌋/q`.

use rand::Rng;

use crate::bits;
use crate::error::{ensure, Result};

/// Largest field size; keeps `a·b` for `a, b < q` inside `u64`.
pub const MAX_PRIME: u64 = 1 << 32;

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    if x % 2 == 0 {
        return x == 2;
    }
    let mut d = 3;
    while d * d <= x {
        if x % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime `≥ x`.
pub fn next_prime(x: u64) -> u64 {
    let mut c = x.max(2);
    while !is_prime(c) {
        c += 1;
    }
    c
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KwiseSampler {
    n: usize,
    q: u64,
    threshold: u64,
    degree: usize,
}

impl KwiseSampler {
    /// Sampler for `n` bits with marginal close to `bit_prob` and
    /// independence `degree + 1`. The field is the smallest prime
    /// `q ≥ max(n, 64·⌈1/bit_prob⌉)`.
    pub fn new(n: usize, bit_prob: f64, degree: usize) -> Result<Self> {
        ensure(bit_prob > 0.0 && bit_prob < 1.0, || {
            format!("bit probability {bit_prob} outside (0, 1)")
        })?;
        ensure(degree >= 1, || "independence must be at least 2".into())?;
        let floor = 64 * (1.0 / bit_prob).ceil() as u64;
        let q = next_prime((n as u64).max(floor));
        ensure(q < MAX_PRIME, || {
            format!("field size {q} for n = {n} exceeds {MAX_PRIME}")
        })?;
        Ok(Self::with_field(n, q, bit_prob, degree))
    }

    /// Sampler over an explicit prime `q ≥ n`, for tests that enumerate
    /// every polynomial.
    pub fn with_field(n: usize, q: u64, bit_prob: f64, degree: usize) -> Self {
        debug_assert!(is_prime(q) && q >= n as u64);
        KwiseSampler {
            n,
            q,
            threshold: (bit_prob * q as f64).floor() as u64,
            degree,
        }
    }

    pub fn field_size(&self) -> u64 {
        self.q
    }

    /// The realized marginal `⌊p·q⌋/q`.
    pub fn marginal(&self) -> f64 {
        self.threshold as f64 / self.q as f64
    }

    /// Row for explicit coefficients (constant term first), packed.
    pub fn row_from_coeffs(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; bits::words_for(self.n)];
        for j in 0..self.n {
            let x = j as u64;
            let v = coeffs
                .iter()
                .rev()
                .fold(0u64, |acc, &c| (acc * x + c) % self.q);
            if v < self.threshold {
                bits::set(&mut out, j);
            }
        }
        out
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> Vec<u64> {
        let coeffs: Vec<u64> = (0..=self.degree)
            .map(|_| rng.gen_range(0..self.q))
            .collect();
        self.row_from_coeffs(&coeffs)
    }
}

/// One row of `n` bits, `(degree+1)`-wise independent with marginal
/// close to `bit_prob`.
pub fn sample_kwise_row<R: Rng>(
    n: usize,
    bit_prob: f64,
    degree: usize,
    rng: &mut R,
) -> Result<Vec<u64>> {
    Ok(KwiseSampler::new(n, bit_prob, degree)?.sample(rng))
}
