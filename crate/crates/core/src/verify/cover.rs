//! Exact maximum coverage by branch and bound.
//!
//! Given a set `R` of rows and candidate columns, find at most `picks`
//! columns whose ones hit the most rows of `R`. The verifier uses it to find
//! the zero set that kills the most satisfying rows: since adding columns to
//! a zero set can only remove satisfying rows, the worst zero set of size
//! `≤ z` is a maximum coverage of size `min(z, candidates)`.

use crate::bits;

/// Node budget shared by every search of one check.
pub(crate) const NODE_CAP: u64 = 1_000_000_000;

#[derive(Default)]
pub(crate) struct CoverScratch {
    /// Per-candidate coverage bitsets over `R` indices, `rw` words each.
    cov: Vec<u64>,
    counts: Vec<usize>,
    columns: Vec<usize>,
    order: Vec<usize>,
    covered: Vec<Vec<u64>>,
    path: Vec<usize>,
    best_path: Vec<usize>,
    slot_of: Vec<u32>,
    bucket_start: Vec<usize>,
    union: Vec<u64>,
    sorted: Vec<usize>,
    pub nodes: u64,
}

pub(crate) struct CoverResult {
    pub covered: usize,
    pub columns: Vec<usize>,
}

impl CoverScratch {
    /// Loads the coverage instance. `rows` are row indices of `R`;
    /// `row_words(r)` gives the packed column set of row `r`; columns whose
    /// bit is set in `excluded` are not candidates.
    pub fn load<'a>(
        &mut self,
        n: usize,
        rows: &[usize],
        row_words: impl Fn(usize) -> &'a [u64],
        excluded: &[u64],
    ) {
        let rw = bits::words_for(rows.len()).max(1);
        if self.slot_of.len() < n {
            self.slot_of = vec![u32::MAX; n];
        }
        // Slots are assigned in increasing column order.
        self.union.clear();
        self.union.resize(excluded.len(), 0);
        for &r in rows {
            for ((u, &w), &ex) in self.union.iter_mut().zip(row_words(r)).zip(excluded) {
                *u |= w & !ex;
            }
        }
        self.columns.clear();
        self.columns.extend(bits::iter_ones(&self.union));
        for (s, &c) in self.columns.iter().enumerate() {
            self.slot_of[c] = s as u32;
        }
        self.cov.clear();
        self.cov.resize(self.columns.len() * rw, 0);
        for (k, &r) in rows.iter().enumerate() {
            for (wi, (&w, &ex)) in row_words(r).iter().zip(excluded).enumerate() {
                let mut rest = w & !ex;
                while rest != 0 {
                    let c = wi * 64 + rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    let slot = self.slot_of[c] as usize;
                    bits::set(&mut self.cov[slot * rw..(slot + 1) * rw], k);
                }
            }
        }
        for &c in &self.columns {
            self.slot_of[c] = u32::MAX;
        }
        self.counts.clear();
        self.counts
            .extend((0..self.columns.len()).map(|s| bits::count(&self.cov[s * rw..(s + 1) * rw])));
        // Static order: coverage descending, then column index. Counts are at
        // most |R|, so a counting sort over slots pre-sorted by column does it.
        self.order.clear();
        self.order.extend(0..self.columns.len());
        let top = self.counts.iter().copied().max().unwrap_or(0);
        self.bucket_start.clear();
        self.bucket_start.resize(top + 2, 0);
        for &c in &self.counts {
            self.bucket_start[top - c + 1] += 1;
        }
        for i in 1..self.bucket_start.len() {
            self.bucket_start[i] += self.bucket_start[i - 1];
        }
        self.sorted.clear();
        self.sorted.resize(self.order.len(), 0);
        for &s in &self.order {
            let b = &mut self.bucket_start[top - self.counts[s]];
            self.sorted[*b] = s;
            *b += 1;
        }
        std::mem::swap(&mut self.order, &mut self.sorted);
    }

    /// Largest coverage of at most `picks` candidates, returned only if it is
    /// at least `need`. Searches to optimality.
    pub fn solve(&mut self, r_len: usize, picks: usize, need: i64) -> Option<CoverResult> {
        let rw = bits::words_for(r_len).max(1);
        let picks = picks.min(self.order.len());
        let mut best: i64 = need - 1;
        self.best_path.clear();
        let mut found = need <= 0;

        // Root bound from static counts.
        let root_bound: usize = self.order.iter().take(picks).map(|&s| self.counts[s]).sum();
        if (root_bound as i64) <= best {
            return None;
        }
        if need <= 0 && picks == 0 {
            return Some(CoverResult {
                covered: 0,
                columns: Vec::new(),
            });
        }

        if self.covered.len() < picks + 1 {
            self.covered.resize(picks + 1, Vec::new());
        }
        for level in self.covered.iter_mut().take(picks + 1) {
            level.clear();
            level.resize(rw, 0);
        }

        // Greedy warm start.
        self.path.clear();
        {
            let mut cov_now = vec![0u64; rw];
            let mut total = 0usize;
            let mut used = vec![false; self.order.len()];
            for _ in 0..picks {
                let mut pick = None;
                let mut pick_gain = 0usize;
                for (pos, &s) in self.order.iter().enumerate() {
                    if used[pos] {
                        continue;
                    }
                    let g = bits::count_andnot(&self.cov[s * rw..(s + 1) * rw], &cov_now);
                    if g > pick_gain {
                        pick_gain = g;
                        pick = Some(pos);
                    }
                }
                let Some(pos) = pick else { break };
                used[pos] = true;
                let s = self.order[pos];
                for (c, w) in cov_now.iter_mut().zip(&self.cov[s * rw..(s + 1) * rw]) {
                    *c |= w;
                }
                total += pick_gain;
                self.path.push(self.columns[s]);
            }
            if total as i64 > best {
                best = total as i64;
                found = true;
                self.best_path.clone_from(&self.path);
            }
        }
        if best as usize >= r_len || (root_bound as i64) <= best {
            return self.finish(found, best);
        }

        self.path.clear();
        self.dfs(0, 0, 0, picks, rw, r_len, &mut best, &mut found);
        self.finish(found, best)
    }

    fn finish(&mut self, found: bool, best: i64) -> Option<CoverResult> {
        if !found {
            return None;
        }
        let mut columns = self.best_path.clone();
        columns.sort_unstable();
        Some(CoverResult {
            covered: best.max(0) as usize,
            columns,
        })
    }

    /// Candidates are visited in static order (coverage descending), so
    /// `cur + left·count` at the current position bounds every extension.
    #[allow(clippy::too_many_arguments)]
    fn dfs(
        &mut self,
        depth: usize,
        start: usize,
        cur: usize,
        picks: usize,
        rw: usize,
        r_len: usize,
        best: &mut i64,
        found: &mut bool,
    ) {
        self.nodes += 1;
        if cur as i64 > *best {
            *best = cur as i64;
            *found = true;
            self.best_path.clone_from(&self.path);
        }
        let left = picks - depth;
        if left == 0 || *best as usize >= r_len || self.nodes > NODE_CAP {
            return;
        }
        let len = self.order.len();
        for pos in start..len {
            let s = self.order[pos];
            if (cur + left * self.counts[s]) as i64 <= *best {
                break;
            }
            let g = bits::count_andnot(&self.cov[s * rw..(s + 1) * rw], &self.covered[depth]);
            if g == 0 {
                continue;
            }
            if left == 1 {
                if (cur + g) as i64 > *best {
                    *best = (cur + g) as i64;
                    *found = true;
                    self.best_path.clone_from(&self.path);
                    self.best_path.push(self.columns[s]);
                    if *best as usize >= r_len {
                        break;
                    }
                }
                continue;
            }
            let next_cap = if pos + 1 < len {
                self.counts[self.order[pos + 1]]
            } else {
                0
            };
            if (cur + g + (left - 1) * next_cap) as i64 <= *best {
                continue;
            }
            {
                let (lo, hi) = self.covered.split_at_mut(depth + 1);
                let src = &lo[depth];
                let dst = &mut hi[0];
                for ((d, a), b) in dst.iter_mut().zip(src).zip(&self.cov[s * rw..(s + 1) * rw]) {
                    *d = a | b;
                }
            }
            self.path.push(self.columns[s]);
            self.dfs(depth + 1, pos + 1, cur + g, picks, rw, r_len, best, found);
            self.path.pop();
            if *best as usize >= r_len || self.nodes > NODE_CAP {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn brute(sets: &[Vec<usize>], r_len: usize, picks: usize) -> usize {
        let n = sets.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize > picks {
                continue;
            }
            let mut hit = vec![false; r_len];
            for (c, s) in sets.iter().enumerate() {
                if mask >> c & 1 == 1 {
                    for &r in s {
                        hit[r] = true;
                    }
                }
            }
            best = best.max(hit.iter().filter(|&&h| h).count());
        }
        best
    }

    #[test]
    fn matches_brute_force() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let n = rng.gen_range(1..10);
            let r_len = rng.gen_range(1..20);
            let dens = rng.gen_range(0.05..0.6);
            // rows as packed column sets
            let rows: Vec<Vec<u64>> = (0..r_len)
                .map(|_| {
                    let mut w = 0u64;
                    for c in 0..n {
                        if rng.gen_bool(dens) {
                            w |= 1 << c;
                        }
                    }
                    vec![w]
                })
                .collect();
            let sets: Vec<Vec<usize>> = (0..n)
                .map(|c| (0..r_len).filter(|&r| rows[r][0] >> c & 1 == 1).collect())
                .collect();
            let picks = rng.gen_range(0..5);
            let mut s = CoverScratch::default();
            let idx: Vec<usize> = (0..r_len).collect();
            s.load(n, &idx, |r| &rows[r], &[0]);
            let got = s.solve(r_len, picks, 0).map(|r| r.covered).unwrap();
            assert_eq!(got, brute(&sets, r_len, picks));
            let need = got as i64 + 1;
            s.load(n, &idx, |r| &rows[r], &[0]);
            assert!(s.solve(r_len, picks, need).is_none());
        }
    }
}
