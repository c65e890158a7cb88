//! Threshold measurement semantics: sparse inputs, tri-state outcomes with
//! a gap wildcard, gap resolution, and outcome noise.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::BooleanMatrix;
use crate::error::{ensure, Error, Result};
use crate::rng::seeded;

/// A Boolean vector of length `len` given by its sorted support.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SparseVector {
    len: usize,
    support: Vec<usize>,
}

impl SparseVector {
    /// Sorts the support; rejects duplicates and out-of-range indices.
    pub fn new(len: usize, mut support: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        for w in support.windows(2) {
            ensure(w[0] != w[1], || format!("duplicate support index {}", w[0]))?;
        }
        if let Some(&last) = support.last() {
            ensure(last < len, || {
                format!("support index {last} out of range for length {len}")
            })?;
        }
        Ok(SparseVector { len, support })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }
}

/// Sparsity `d`, error margin `e`, and thresholds `lower ≤ upper`; the gap
/// is `upper − lower`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdParams {
    pub d: usize,
    pub e: usize,
    pub lower: usize,
    pub upper: usize,
}

impl ThresholdParams {
    pub fn new(d: usize, e: usize, lower: usize, upper: usize) -> Result<Self> {
        let p = ThresholdParams { d, e, lower, upper };
        p.validate()?;
        Ok(p)
    }

    /// Gap-free parameters with `lower = upper = u`.
    pub fn gap_free(d: usize, e: usize, u: usize) -> Result<Self> {
        Self::new(d, e, u, u)
    }

    pub fn validate(&self) -> Result<()> {
        ensure(self.lower >= 1, || {
            "lower threshold must be at least 1".into()
        })?;
        ensure(self.lower <= self.upper, || {
            format!(
                "lower threshold {} exceeds upper {}",
                self.lower, self.upper
            )
        })?;
        ensure(self.upper <= self.d, || {
            format!("upper threshold {} exceeds sparsity {}", self.upper, self.d)
        })
    }

    pub fn gap(&self) -> usize {
        self.upper - self.lower
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    Zero,
    One,
    /// Pool count inside the gap: the outcome is unconstrained.
    Star,
}

impl Outcome {
    pub fn from_count(count: usize, lower: usize, upper: usize) -> Self {
        if count >= upper {
            Outcome::One
        } else if count < lower {
            Outcome::Zero
        } else {
            Outcome::Star
        }
    }
}

/// Per-row tri-state result; the set of consistent outcome vectors is every
/// resolution of the `Star` positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OutcomePattern(pub Vec<Outcome>);

impl OutcomePattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Outcome] {
        &self.0
    }

    pub fn stars(&self) -> usize {
        self.0.iter().filter(|&&o| o == Outcome::Star).count()
    }

    /// Number of flips needed to explain `observed`: rows forced to one that
    /// read zero plus rows forced to zero that read one.
    pub fn disagreements(&self, observed: &[bool]) -> usize {
        self.0
            .iter()
            .zip(observed)
            .filter(|(o, &y)| matches!((o, y), (Outcome::One, false) | (Outcome::Zero, true)))
            .count()
    }
}

/// Per-row pool counts `|supp(M_i) ∩ supp(x)|`.
pub fn measure_counts(m: &BooleanMatrix, x: &SparseVector) -> Result<Vec<usize>> {
    if x.len() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: m.cols(),
            actual: x.len(),
        });
    }
    let mask = m.column_mask(x.support())?;
    Ok((0..m.rows())
        .map(|i| m.row_intersection(i, &mask))
        .collect())
}

/// Threshold measurement of `x` with thresholds `params.lower`/`params.upper`.
pub fn measure(
    m: &BooleanMatrix,
    x: &SparseVector,
    params: &ThresholdParams,
) -> Result<OutcomePattern> {
    ensure(params.lower <= params.upper, || {
        "lower threshold exceeds upper".into()
    })?;
    let counts = measure_counts(m, x)?;
    Ok(OutcomePattern(
        counts
            .into_iter()
            .map(|c| Outcome::from_count(c, params.lower, params.upper))
            .collect(),
    ))
}

/// How gap rows are answered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GapPolicy {
    AllZero,
    AllOne,
    Random(u64),
}

/// Replaces every `Star` according to `policy`.
pub fn resolve(pattern: &OutcomePattern, policy: GapPolicy) -> Vec<bool> {
    let mut rng = match policy {
        GapPolicy::Random(seed) => Some(seeded(seed, 0)),
        _ => None,
    };
    pattern
        .0
        .iter()
        .map(|o| match o {
            Outcome::One => true,
            Outcome::Zero => false,
            Outcome::Star => match policy {
                GapPolicy::AllZero => false,
                GapPolicy::AllOne => true,
                GapPolicy::Random(_) => rng.as_mut().expect("rng present").gen(),
            },
        })
        .collect()
}

/// Flips exactly `flips` distinct, uniformly chosen positions of `y`.
pub fn apply_noise(y: &[bool], flips: usize, seed: u64) -> Result<Vec<bool>> {
    ensure(flips <= y.len(), || {
        format!("flip budget {flips} exceeds {} outcomes", y.len())
    })?;
    let mut out = y.to_vec();
    let mut rng = seeded(seed, 0);
    for i in index::sample(&mut rng, y.len(), flips) {
        out[i] = !out[i];
    }
    Ok(out)
}
