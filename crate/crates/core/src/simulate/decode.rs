use serde::{Deserialize, Serialize};

use crate::bits;
use crate::combinat::binomial;
use crate::error::{ensure, Error, Result, TUPLE_CAP};
use crate::matrix::{BooleanMatrix, ThresholdParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    Exact,
    WithinGapAmbiguity,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Exact => "EXACT",
            Status::WithinGapAmbiguity => "WITHIN_GAP_AMBIGUITY",
            Status::Fail => "FAIL",
        }
    }

    pub fn is_success(&self) -> bool {
        *self != Status::Fail
    }
}

/// Decoder output before it is compared with the truth. Supports are
/// sorted; `flips` is the number of outcomes the candidates must flip
/// (`None` when there is no candidate).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decoding {
    pub candidates: Vec<Vec<usize>>,
    pub flips: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeResult {
    pub candidates: Vec<Vec<usize>>,
    pub flips: Option<usize>,
    pub status: Status,
}

fn sorted_difference(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_err()).count()
}

impl DecodeResult {
    /// `EXACT` when the only candidate is `truth`; `WITHIN_GAP_AMBIGUITY`
    /// when every candidate has at most `g` false positives and `g` false
    /// negatives; `FAIL` otherwise, including when there is no candidate.
    pub fn score(decoding: Decoding, truth: &[usize], g: usize) -> Self {
        let mut truth = truth.to_vec();
        truth.sort_unstable();
        let status = if decoding.candidates.len() == 1 && decoding.candidates[0] == truth {
            Status::Exact
        } else if !decoding.candidates.is_empty()
            && decoding
                .candidates
                .iter()
                .all(|c| sorted_difference(c, &truth) <= g && sorted_difference(&truth, c) <= g)
        {
            Status::WithinGapAmbiguity
        } else {
            Status::Fail
        };
        DecodeResult {
            candidates: decoding.candidates,
            flips: decoding.flips,
            status,
        }
    }
}

/// Number of supports the brute-force decoder enumerates.
pub fn brute_force_candidates(n: usize, lower: usize, d: usize) -> u128 {
    (lower..=d.min(n))
        .map(|s| binomial(n, s))
        .fold(0, u128::saturating_add)
}

struct Search<'a> {
    cols: Vec<Vec<u64>>,
    observed: &'a [u64],
    lower: usize,
    upper: usize,
    d: usize,
    max_flips: usize,
    best: usize,
    found: Vec<Vec<usize>>,
    /// `levels[j]`: rows with at least `j + 1` ones on the current support.
    levels: Vec<Vec<u64>>,
    path: Vec<usize>,
}

impl Search<'_> {
    fn flips(&self) -> usize {
        let y = self.observed;
        let one = &self.levels[self.upper - 1];
        let at_least_lower = &self.levels[self.lower - 1];
        // ONE rows reading 0, plus ZERO rows reading 1.
        bits::count_andnot(one, y) + bits::count_andnot(y, at_least_lower)
    }

    fn visit(&mut self) {
        let f = self.flips();
        if f > self.max_flips {
            return;
        }
        if f < self.best {
            self.best = f;
            self.found.clear();
        }
        if f == self.best {
            self.found.push(self.path.clone());
        }
    }

    fn dfs(&mut self, start: usize) {
        if self.path.len() >= self.upper {
            self.visit();
        }
        if self.path.len() == self.d {
            return;
        }
        for c in start..self.cols.len() {
            let depth = self.path.len();
            let saved: Vec<Vec<u64>> = self.levels[..=depth.min(self.d - 1)].to_vec();
            for j in (1..=depth.min(self.d - 1)).rev() {
                let (lo, hi) = self.levels.split_at_mut(j);
                for ((h, l), col) in hi[0].iter_mut().zip(&lo[j - 1]).zip(&self.cols[c]) {
                    *h |= l & col;
                }
            }
            for (h, col) in self.levels[0].iter_mut().zip(&self.cols[c]) {
                *h |= col;
            }
            self.path.push(c);
            self.dfs(c + 1);
            self.path.pop();
            for (j, s) in saved.into_iter().enumerate() {
                self.levels[j] = s;
            }
        }
    }
}

/// All supports of size `upper..=d` that explain `y` with the fewest flips,
/// provided that number is at most `max_flips`. A flip is charged at each
/// row forced to one that reads 0 and each row forced to zero that reads 1.
pub fn decode_brute_force(
    m: &BooleanMatrix,
    y: &[bool],
    params: &ThresholdParams,
    max_flips: usize,
) -> Result<Decoding> {
    params.validate()?;
    if y.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            actual: y.len(),
        });
    }
    ensure(params.upper <= m.cols(), || {
        "upper threshold exceeds column count".into()
    })?;
    let count = brute_force_candidates(m.cols(), params.upper, params.d);
    if count > TUPLE_CAP {
        return Err(Error::too_large("brute-force candidate supports", count));
    }
    let words = bits::words_for(m.rows());
    let mut observed = vec![0u64; words];
    for (i, &b) in y.iter().enumerate() {
        if b {
            bits::set(&mut observed, i);
        }
    }
    let cols = (0..m.cols()).map(|j| m.column_words(j)).collect();
    let mut s = Search {
        cols,
        observed: &observed,
        lower: params.lower,
        upper: params.upper,
        d: params.d,
        max_flips,
        best: usize::MAX,
        found: Vec::new(),
        levels: vec![vec![0u64; words]; params.d],
        path: Vec::new(),
    };
    s.dfs(0);
    let flips = (!s.found.is_empty()).then_some(s.best);
    Ok(Decoding {
        candidates: s.found,
        flips,
    })
}

/// Classical decoder for `ℓ = u = 1`: item `j` is ruled out when it lies in
/// more than `⌊e/2⌋` pools that read 0. The single candidate is every item
/// not ruled out.
pub fn decode_cover(m: &BooleanMatrix, y: &[bool], e: usize) -> Result<Decoding> {
    if y.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            actual: y.len(),
        });
    }
    let mut zero_hits = vec![0usize; m.cols()];
    for (i, &b) in y.iter().enumerate() {
        if !b {
            for j in m.row_support(i) {
                zero_hits[j] += 1;
            }
        }
    }
    let cand: Vec<usize> = (0..m.cols()).filter(|&j| zero_hits[j] <= e / 2).collect();
    let mask = m.column_mask(&cand)?;
    let flips = y
        .iter()
        .enumerate()
        .filter(|&(i, &b)| (m.row_intersection(i, &mask) > 0) != b)
        .count();
    Ok(Decoding {
        candidates: vec![cand],
        flips: Some(flips),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{measure, resolve, GapPolicy, SparseVector};

    fn y_of(m: &BooleanMatrix, s: &[usize], p: &ThresholdParams) -> Vec<bool> {
        let x = SparseVector::new(m.cols(), s.to_vec()).unwrap();
        resolve(&measure(m, &x, p).unwrap(), GapPolicy::AllZero)
    }

    #[test]
    fn identity_noiseless() {
        let m = BooleanMatrix::identity(5).unwrap();
        let p = ThresholdParams::gap_free(2, 0, 1).unwrap();
        let y = y_of(&m, &[2], &p);
        let d = decode_brute_force(&m, &y, &p, 0).unwrap();
        assert_eq!(d.candidates, vec![vec![2]]);
        assert_eq!(d.flips, Some(0));
        let c = decode_cover(&m, &y, 0).unwrap();
        assert_eq!(c.candidates, vec![vec![2]]);
        assert_eq!(DecodeResult::score(d, &[2], 0).status, Status::Exact);
    }

    #[test]
    fn zero_matrix_is_ambiguous() {
        let m = BooleanMatrix::zeros(3, 4).unwrap();
        let p = ThresholdParams::gap_free(2, 0, 1).unwrap();
        let d = decode_brute_force(&m, &[false; 3], &p, 0).unwrap();
        assert_eq!(d.candidates.len(), 4 + 6);
        assert_eq!(DecodeResult::score(d, &[1], 0).status, Status::Fail);
    }

    #[test]
    fn all_positive_outcomes_cover_everything() {
        let m = BooleanMatrix::identity(4).unwrap();
        let c = decode_cover(&m, &[true; 4], 2).unwrap();
        assert_eq!(c.candidates, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn flips_are_minimized() {
        let m = BooleanMatrix::identity(4).unwrap().repeat_rows(3).unwrap();
        let p = ThresholdParams::gap_free(1, 0, 1).unwrap();
        let mut y = y_of(&m, &[1], &p);
        y[0] = true;
        let d = decode_brute_force(&m, &y, &p, 2).unwrap();
        assert_eq!(d.candidates, vec![vec![1]]);
        assert_eq!(d.flips, Some(1));
        assert!(decode_brute_force(&m, &y, &p, 0)
            .unwrap()
            .candidates
            .is_empty());
    }

    #[test]
    fn gap_scoring() {
        let dec = Decoding {
            candidates: vec![vec![0, 1], vec![0, 2]],
            flips: Some(0),
        };
        assert_eq!(
            DecodeResult::score(dec.clone(), &[0, 1], 1).status,
            Status::WithinGapAmbiguity
        );
        assert_eq!(DecodeResult::score(dec, &[0, 1], 0).status, Status::Fail);
    }
}
