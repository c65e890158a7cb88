//! Linear codes over finite fields: Reed–Solomon codes and random linear
//! codes meeting a target distance, with exact minimum-distance checks.
//!
//! Message `j` (for `0 ≤ j < q^k`) has base-`q` digits `m_0, m_1, …` with
//! `m_0 = j mod q`; its codeword is `Σ_i m_i · G[i]`.

mod field;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::rng::seeded;
pub use field::{prime_power, q_ary_entropy, Field, BINARY_MODULI, MAX_ORDER};

/// Largest `q^k` scanned by [`min_distance`].
pub const DISTANCE_SCAN_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CodeKind {
    ReedSolomon,
    RandomLinearGv,
}

/// A q-ary linear `(length, dimension, min_distance)` code given by its
/// generator matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeSpec {
    pub kind: CodeKind,
    pub q: u64,
    pub length: usize,
    pub dimension: usize,
    pub min_distance: usize,
    /// Reed–Solomon evaluation points.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation_points: Option<Vec<u32>>,
    /// `dimension × length` generator rows.
    pub generator: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CodeSpec {
    pub fn field(&self) -> Result<Field> {
        Field::new(self.q)
    }

    /// `q^k`, saturating.
    pub fn codeword_count(&self) -> u128 {
        (self.q as u128).saturating_pow(self.dimension as u32)
    }

    /// Base-`q` digits of message `index`, least significant first.
    pub fn message_digits(&self, mut index: u128) -> Vec<u32> {
        (0..self.dimension)
            .map(|_| {
                let d = (index % self.q as u128) as u32;
                index /= self.q as u128;
                d
            })
            .collect()
    }

    pub fn encode(&self, field: &Field, message: &[u32]) -> Vec<u32> {
        let mut c = vec![0u32; self.length];
        for (row, &m) in self.generator.iter().zip(message) {
            if m == 0 {
                continue;
            }
            for (ci, &g) in c.iter_mut().zip(row) {
                *ci = field.add(*ci, field.mul(m, g));
            }
        }
        c
    }

    /// Codeword of message `index`.
    pub fn codeword(&self, field: &Field, index: u128) -> Vec<u32> {
        self.encode(field, &self.message_digits(index))
    }

    /// Structural checks: field order, shapes, entry ranges, the Singleton
    /// bound, and for Reed–Solomon codes the generator against the
    /// evaluation points. The distance claim is not rescanned here.
    pub fn validate(&self) -> Result<()> {
        let field = self.field()?;
        ensure(self.length >= 1, || "code length must be positive".into())?;
        ensure(self.dimension >= 1 && self.dimension <= self.length, || {
            format!(
                "need 1 ≤ k ≤ ñ, got k={}, ñ={}",
                self.dimension, self.length
            )
        })?;
        ensure(
            self.min_distance >= 1 && self.min_distance <= self.length - self.dimension + 1,
            || {
                format!(
                    "distance {} violates 1 ≤ d̃ ≤ ñ−k+1 = {}",
                    self.min_distance,
                    self.length - self.dimension + 1
                )
            },
        )?;
        ensure(self.generator.len() == self.dimension, || {
            format!(
                "generator has {} rows, expected {}",
                self.generator.len(),
                self.dimension
            )
        })?;
        for (i, row) in self.generator.iter().enumerate() {
            ensure(row.len() == self.length, || {
                format!(
                    "generator row {i} has length {}, expected {}",
                    row.len(),
                    self.length
                )
            })?;
            ensure(row.iter().all(|&x| (x as u64) < self.q), || {
                format!("generator row {i} has an entry outside GF({})", self.q)
            })?;
        }
        match self.kind {
            CodeKind::ReedSolomon => {
                let pts = self
                    .evaluation_points
                    .as_ref()
                    .ok_or_else(|| Error::invalid("Reed–Solomon code without evaluation points"))?;
                let expected = reed_solomon_with_points(&field, pts, self.dimension)?;
                ensure(expected.generator == self.generator, || {
                    "generator does not match the evaluation points".into()
                })?;
                ensure(self.min_distance == expected.min_distance, || {
                    format!("Reed–Solomon distance must be {}", expected.min_distance)
                })?;
            }
            CodeKind::RandomLinearGv => {
                ensure(self.evaluation_points.is_none(), || {
                    "evaluation points are only meaningful for Reed–Solomon codes".into()
                })?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("CodeSpec serializes")
    }

    /// Parses and validates a JSON code description.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CodeSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }
}

fn reed_solomon_with_points(field: &Field, points: &[u32], k: usize) -> Result<CodeSpec> {
    let q = field.order() as u64;
    let n = points.len();
    ensure(n >= 1 && n as u64 <= q, || {
        format!("need 1 ≤ ñ ≤ q, got ñ={n}, q={q}")
    })?;
    ensure(k >= 1 && k <= n, || {
        format!("need 1 ≤ k ≤ ñ, got k={k}, ñ={n}")
    })?;
    let mut seen = vec![false; q as usize];
    for &a in points {
        ensure((a as u64) < q && !seen[a as usize], || {
            format!("evaluation points must be distinct elements of GF({q})")
        })?;
        seen[a as usize] = true;
    }
    let generator = (0..k)
        .map(|i| points.iter().map(|&a| field.pow(a, i as u64)).collect())
        .collect();
    Ok(CodeSpec {
        kind: CodeKind::ReedSolomon,
        q,
        length: n,
        dimension: k,
        min_distance: n - k + 1,
        evaluation_points: Some(points.to_vec()),
        generator,
        seed: None,
    })
}

/// Reed–Solomon code: evaluations of polynomials of degree `< k` at the
/// points `0, 1, …, ñ−1` of `GF(q)`.
pub fn reed_solomon(q: u64, length: usize, k: usize) -> Result<CodeSpec> {
    let field = Field::new(q)?;
    ensure(length as u64 <= q, || {
        format!("need ñ ≤ q, got ñ={length}, q={q}")
    })?;
    let points: Vec<u32> = (0..length as u32).collect();
    reed_solomon_with_points(&field, &points, k)
}

/// Exact minimum distance, as the least weight of a nonzero codeword.
pub fn min_distance(code: &CodeSpec) -> Result<usize> {
    let count = code.codeword_count();
    if count > DISTANCE_SCAN_CAP {
        return Err(Error::too_large("codeword weight scan", count));
    }
    let field = code.field()?;
    Ok(min_weight(&field, &code.generator, code.length))
}

/// Least nonzero weight of the span of `rows`; `usize::MAX` when the span
/// is `{0}` apart from the zero word. Enumerates messages in odometer order,
/// adding one generator row per step (q additions of a row sum to zero).
fn min_weight(field: &Field, rows: &[Vec<u32>], n: usize) -> usize {
    let q = field.order();
    let k = rows.len();
    let mut digits = vec![0u32; k];
    let mut word = vec![0u32; n];
    let mut best = usize::MAX;
    loop {
        let mut i = 0;
        loop {
            if i == k {
                return best;
            }
            digits[i] += 1;
            for (w, &g) in word.iter_mut().zip(&rows[i]) {
                *w = field.add(*w, g);
            }
            if digits[i] == q {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        let weight = word.iter().filter(|&&x| x != 0).count();
        if weight > 0 {
            best = best.min(weight);
        } else {
            // a nonzero message mapping to zero: the generator is rank-deficient
            best = 0;
        }
    }
}

fn rank(field: &Field, rows: &[Vec<u32>]) -> usize {
    let mut a: Vec<Vec<u32>> = rows.to_vec();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = field.inv(a[r][c]).expect("pivot is nonzero");
        let pivot_row: Vec<u32> = a[r].iter().map(|&x| field.mul(x, inv)).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot_row) {
                    *x = field.sub(*x, field.mul(f, p));
                }
            }
        }
        a[r] = pivot_row;
        r += 1;
        if r == a.len() {
            break;
        }
    }
    r
}

/// Varshamov existence condition for a q-ary linear `[n, k, ≥ dist]` code:
/// `Σ_{i ≤ dist−2} C(n−1, i)(q−1)^i < q^{n−k}`.
pub fn varshamov_feasible(q: u64, n: usize, k: usize, dist: usize) -> bool {
    if dist <= 1 {
        return k <= n;
    }
    if k > n {
        return false;
    }
    let mut lhs = 0f64;
    let mut binom = 1f64;
    for i in 0..=dist - 2 {
        if i > 0 {
            binom *= (n - i) as f64 / i as f64;
        }
        lhs += binom * ((q - 1) as f64).powi(i as i32);
    }
    let rhs = (q as f64).powi((n - k) as i32);
    // values below 2^53 are exact; beyond that the float comparison is an
    // approximation of an inequality that is far from tight.
    lhs < rhs
}

/// Random linear code with minimum distance at least `target`, by rejection
/// sampling of uniform generator matrices. Attempt `a` uses stream `a` of
/// `seed`. The returned spec records the exact measured distance.
pub fn random_linear_gv(
    q: u64,
    length: usize,
    k: usize,
    target: usize,
    seed: u64,
    max_attempts: usize,
) -> Result<CodeSpec> {
    let field = Field::new(q)?;
    ensure(k >= 1 && k <= length, || {
        format!("need 1 ≤ k ≤ ñ, got k={k}, ñ={length}")
    })?;
    ensure(target >= 1 && target <= length - k + 1, || {
        format!("target distance {target} outside 1..={}", length - k + 1)
    })?;
    ensure(varshamov_feasible(q, length, k, target), || {
        format!("no [{length}, {k}, {target}]_{q} code is guaranteed by the Varshamov bound")
    })?;
    let count = (q as u128).saturating_pow(k as u32);
    if count > DISTANCE_SCAN_CAP {
        return Err(Error::too_large("codeword weight scan", count));
    }
    ensure(max_attempts >= 1, || {
        "max_attempts must be at least 1".into()
    })?;
    for attempt in 0..max_attempts {
        let mut rng = seeded(seed, attempt as u64);
        let generator: Vec<Vec<u32>> = (0..k)
            .map(|_| (0..length).map(|_| rng.gen_range(0..q as u32)).collect())
            .collect();
        if rank(&field, &generator) < k {
            continue;
        }
        let dist = min_weight(&field, &generator, length);
        if dist >= target {
            return Ok(CodeSpec {
                kind: CodeKind::RandomLinearGv,
                q,
                length,
                dimension: k,
                min_distance: dist,
                evaluation_points: None,
                generator,
                seed: Some(seed),
            });
        }
    }
    Err(Error::AttemptsExhausted {
        attempts: max_attempts,
        reason: format!("no sampled [{length}, {k}]_{q} code reached distance {target}"),
    })
}
