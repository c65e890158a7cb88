//! Distinguishability of sparse vector pairs under threshold measurements.
//!
//! For an ordered pair `(x, x′)` the margin is the number of rows where `x`
//! is guaranteed ONE (count ≥ u) and `x′` guaranteed ZERO (count < ℓ). The
//! admissible pairs are d-sparse with `wgt(x) ≥ u`, `|x \ x′| > g` and
//! `wgt(x) ≥ |x′ \ x|`; nothing is required of `wgt(x′)`.
//!
//! Write `S = supp(x)`, `A = S ∩ supp(x′)` and `B = supp(x′) \ S`. Growing
//! `B` can only remove ZERO rows of `x′`, so only the largest admissible
//! `|B|` matters. For `ℓ = 1` the worst `B` is a maximum coverage problem;
//! for larger `ℓ` it is enumerated.

use super::cover::{CoverScratch, NODE_CAP};
use super::{PropertyKind, PropertyReport, Witness};
use crate::bits;
use crate::combinat::binomial;
use crate::error::{ensure, Error, Result, TUPLE_CAP};
use crate::matrix::BooleanMatrix;

/// Calls `f` on every subset of `items` with size in `min..=max`, in
/// lexicographic order of index sequences. `f` returns `false` to stop.
fn for_each_subset(
    items: &[usize],
    min: usize,
    max: usize,
    f: &mut dyn FnMut(&[usize]) -> Result<bool>,
) -> Result<bool> {
    fn rec(
        items: &[usize],
        start: usize,
        cur: &mut Vec<usize>,
        min: usize,
        max: usize,
        f: &mut dyn FnMut(&[usize]) -> Result<bool>,
    ) -> Result<bool> {
        if cur.len() >= min && !f(cur)? {
            return Ok(false);
        }
        if cur.len() == max {
            return Ok(true);
        }
        for i in start..items.len() {
            if cur.len() + (items.len() - i) < min {
                break;
            }
            cur.push(items[i]);
            let go = rec(items, i + 1, cur, min, max, f)?;
            cur.pop();
            if !go {
                return Ok(false);
            }
        }
        Ok(true)
    }
    rec(items, 0, &mut Vec::with_capacity(max), min, max, f)
}

/// `levels[j]` = rows with at least `j+1` ones among `set`, for `j < depth`.
fn count_levels(cols: &[Vec<u64>], set: &[usize], depth: usize, words: usize) -> Vec<Vec<u64>> {
    let mut levels = vec![vec![0u64; words]; depth];
    for &c in set {
        for j in (0..depth).rev() {
            for w in 0..words {
                let below = if j == 0 { u64::MAX } else { levels[j - 1][w] };
                levels[j][w] |= below & cols[c][w];
            }
        }
    }
    levels
}

fn tuple_estimate(n: usize, d: usize, u: usize, g: usize, lower: usize) -> u128 {
    let mut total: u128 = 0;
    for s in u..=d.min(n) {
        for a in 0..s.saturating_sub(g) {
            let b = s.min(d - a).min(n - s);
            let inner = if lower == 1 { 1 } else { binomial(n - s, b) };
            total = total.saturating_add(
                binomial(n, s)
                    .saturating_mul(binomial(s, a))
                    .saturating_mul(inner),
            );
        }
    }
    total
}

/// Checks that every admissible ordered pair `(x, x′)` of d-sparse vectors
/// has more than `e` rows where `x` reads ONE and `x′` reads ZERO, with
/// thresholds `lower = ℓ` and `upper = u`.
pub fn check_distinguishing(
    m: &BooleanMatrix,
    d: usize,
    e: usize,
    lower: usize,
    upper: usize,
) -> Result<PropertyReport> {
    let n = m.cols();
    ensure(lower >= 1 && lower <= upper, || {
        format!("need 1 ≤ ℓ ≤ u, got ℓ={lower}, u={upper}")
    })?;
    ensure(upper <= d && d <= n, || {
        format!("need u ≤ d ≤ n, got u={upper}, d={d}, n={n}")
    })?;
    let g = upper - lower;
    let tuples = tuple_estimate(n, d, upper, g, lower);
    if tuples > TUPLE_CAP {
        return Err(Error::too_large("distinguishable pair enumeration", tuples));
    }

    let words = bits::words_for(m.rows());
    let cols = m.columns();
    let all: Vec<usize> = (0..n).collect();
    let mut best: Option<(usize, Witness)> = None;
    let mut cover = CoverScratch::default();
    let mut rows_buf = Vec::new();

    for_each_subset(&all, upper, d, &mut |s| {
        let one = count_levels(&cols, s, upper, words)
            .pop()
            .expect("upper ≥ 1");
        let mut s_mask = vec![0u64; bits::words_for(n)];
        for &c in s {
            bits::set(&mut s_mask, c);
        }
        let outside: Vec<usize> = (0..n).filter(|c| !bits::get(&s_mask, *c)).collect();
        let max_a = s.len() - g - 1;
        for_each_subset(s, 0, max_a, &mut |a| {
            let b = s.len().min(d - a.len()).min(n - s.len());
            let dist: Vec<usize> = s.iter().copied().filter(|c| !a.contains(c)).collect();
            let a_levels = count_levels(&cols, a, lower, words);
            if lower == 1 {
                let limit = best.as_ref().map_or(i64::MAX, |(c, _)| *c as i64 - 1);
                let r: Vec<u64> = one.iter().zip(&a_levels[0]).map(|(o, h)| o & !h).collect();
                rows_buf.clear();
                rows_buf.extend(bits::iter_ones(&r));
                let need = rows_buf.len() as i64 - limit;
                cover.load(n, &rows_buf, |row| m.row_words(row), &s_mask);
                if let Some(res) = cover.solve(rows_buf.len(), b, need) {
                    let count = rows_buf.len() - res.covered;
                    best = Some((
                        count,
                        Witness {
                            critical: s.to_vec(),
                            zero: res.columns,
                            distinguished: dist,
                            satisfying_rows: count,
                        },
                    ));
                }
                if cover.nodes > NODE_CAP {
                    return Err(Error::too_large(
                        "zero-set search nodes",
                        cover.nodes as u128,
                    ));
                }
            } else {
                for_each_subset(&outside, b, b, &mut |bs| {
                    let mut both: Vec<usize> = a.to_vec();
                    both.extend_from_slice(bs);
                    let hit = count_levels(&cols, &both, lower, words)
                        .pop()
                        .expect("lower ≥ 1");
                    let count = bits::count_andnot(&one, &hit);
                    let limit = best.as_ref().map_or(i64::MAX, |(c, _)| *c as i64 - 1);
                    if (count as i64) <= limit {
                        best = Some((
                            count,
                            Witness {
                                critical: s.to_vec(),
                                zero: bs.to_vec(),
                                distinguished: dist.clone(),
                                satisfying_rows: count,
                            },
                        ));
                    }
                    Ok(count > 0)
                })?;
            }
            Ok(best.as_ref().is_none_or(|(c, _)| *c > 0))
        })
    })?;

    Ok(PropertyReport::new(
        PropertyKind::Distinguish,
        e,
        best,
        tuples,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_distinguishes_singletons() {
        for n in 2..6 {
            let r = check_distinguishing(&BooleanMatrix::identity(n).unwrap(), 1, 0, 1, 1).unwrap();
            assert!(r.holds, "n={n}");
        }
    }

    #[test]
    fn equal_columns_are_indistinguishable() {
        let m = BooleanMatrix::from_rows(&[[1u8, 1, 0], [0, 0, 1]]).unwrap();
        let r = check_distinguishing(&m, 1, 0, 1, 1).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.satisfying_rows, 0);
        assert!(w.critical == vec![0] || w.critical == vec![1]);
    }

    #[test]
    fn subset_enumeration_order() {
        let mut seen = Vec::new();
        for_each_subset(&[0, 1, 2], 1, 2, &mut |s| {
            seen.push(s.to_vec());
            Ok(true)
        })
        .unwrap();
        assert_eq!(
            seen,
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 2],
                vec![1],
                vec![1, 2],
                vec![2]
            ]
        );
    }
}
