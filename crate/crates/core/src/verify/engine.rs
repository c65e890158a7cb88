//! Shared search over critical sets `S`, distinguished sets `I ⊆ S`, and
//! zero sets `Z`, computing the minimum number of rows that satisfy a
//! triple together with a witness attaining it.
//!
//! A row satisfies `(S, I, Z)` when it has exactly `weight` ones on `S`,
//! all ones on `I`, and no ones on `Z`. `S` and `I` are enumerated
//! lexicographically; the worst `Z` for a fixed `(S, I)` is found exactly as
//! a maximum coverage problem (see [`super::cover`]).
//!
//! The `S` space is split into chunks by first element. Each chunk searches
//! sequentially; chunks share only the best `(count, chunk)` pair found so
//! far, and pruning never discards a tuple that could tie the eventual
//! winner within an earlier chunk, so the reported witness does not depend
//! on scheduling.

use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;

use super::cover::{CoverScratch, NODE_CAP};
use super::Witness;
use crate::bits;
use crate::combinat::binomial;
use crate::error::{Error, Result, TUPLE_CAP};
use crate::matrix::BooleanMatrix;

#[derive(Clone, Copy, Debug)]
pub(crate) enum ZeroBudget {
    /// `|Z| ≤ |S| + extra`.
    PlusCritical(usize),
    /// `|Z| ≤ d`.
    Fixed(usize),
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct SearchSpec {
    pub min_size: usize,
    pub max_size: usize,
    pub weight: usize,
    pub distinguished: usize,
    pub zero: ZeroBudget,
}

pub(crate) struct SearchOutcome {
    pub min_count: usize,
    pub witness: Witness,
}

impl SearchSpec {
    pub fn tuple_count(&self, n: usize) -> u128 {
        (self.min_size..=self.max_size.min(n))
            .map(|s| binomial(n, s).saturating_mul(binomial(s, self.distinguished)))
            .fold(0u128, |a, b| a.saturating_add(b))
    }

    fn zero_limit(&self, s: usize, n: usize) -> usize {
        let z = match self.zero {
            ZeroBudget::PlusCritical(extra) => s + extra,
            ZeroBudget::Fixed(d) => d,
        };
        z.min(n - s)
    }
}

struct Shared {
    /// `(count << 32) | chunk` of the best result published so far.
    best: AtomicU64,
}

impl Shared {
    fn get(&self) -> (usize, usize) {
        let v = self.best.load(Ordering::Relaxed);
        ((v >> 32) as usize, (v & 0xFFFF_FFFF) as usize)
    }
}

struct ChunkState<'a> {
    m: &'a BooleanMatrix,
    cols: &'a [Vec<u64>],
    spec: SearchSpec,
    chunk: usize,
    words: usize,
    /// levels[depth][j] = rows with at least j+1 ones among the first
    /// `depth` elements of the current S (j = 0..=weight).
    levels: Vec<Vec<Vec<u64>>>,
    stack: Vec<usize>,
    s_mask: Vec<u64>,
    exact: Vec<u64>,
    rows_buf: Vec<usize>,
    cover: CoverScratch,
    best: Option<(usize, Witness)>,
    shared: &'a Shared,
    done: bool,
}

impl<'a> ChunkState<'a> {
    fn limit(&self) -> i64 {
        let (g, wc) = self.shared.get();
        let global = if self.chunk < wc {
            g as i64
        } else {
            g as i64 - 1
        };
        let local = self.best.as_ref().map_or(i64::MAX, |(c, _)| *c as i64 - 1);
        global.min(local)
    }

    fn push(&mut self, c: usize) {
        let depth = self.stack.len();
        let w = self.spec.weight;
        let col = &self.cols[c];
        let (lo, hi) = self.levels.split_at_mut(depth + 1);
        let prev = &lo[depth];
        let next = &mut hi[0];
        for j in 0..=w {
            let dst = &mut next[j];
            if j == 0 {
                for ((d, p), x) in dst.iter_mut().zip(&prev[0]).zip(col) {
                    *d = p | x;
                }
            } else {
                let below = &prev[j - 1];
                for (((d, p), b), x) in dst.iter_mut().zip(&prev[j]).zip(below).zip(col) {
                    *d = p | (b & x);
                }
            }
        }
        self.stack.push(c);
        bits::set(&mut self.s_mask, c);
    }

    fn pop(&mut self) {
        if let Some(c) = self.stack.pop() {
            bits::clear(&mut self.s_mask, c);
        }
    }

    /// Rows with exactly `weight` ones on the current S, into `self.exact`.
    fn load_exact(&mut self) {
        let depth = self.stack.len();
        let w = self.spec.weight;
        let lv = &self.levels[depth];
        if w == 0 {
            let all = bits::ones(self.m.rows());
            for ((e, a), hi) in self.exact.iter_mut().zip(&all).zip(&lv[0]) {
                *e = a & !hi;
            }
        } else {
            for ((e, lo), hi) in self.exact.iter_mut().zip(&lv[w - 1]).zip(&lv[w]) {
                *e = lo & !hi;
            }
        }
    }

    fn visit_critical(&mut self) -> Result<()> {
        self.load_exact();
        let s: Vec<usize> = self.stack.clone();
        let k = self.spec.distinguished;
        if k == 0 {
            let base = self.exact.clone();
            return self.solve_zero(&s, &[], &base);
        }
        if k > s.len() {
            return Ok(());
        }
        let mut idx: Vec<usize> = (0..k).collect();
        let mut rows = vec![0u64; self.words];
        loop {
            rows.copy_from_slice(&self.exact);
            for &i in &idx {
                for (r, c) in rows.iter_mut().zip(&self.cols[s[i]]) {
                    *r &= c;
                }
            }
            let chosen: Vec<usize> = idx.iter().map(|&i| s[i]).collect();
            self.solve_zero(&s, &chosen, &rows)?;
            if self.done {
                return Ok(());
            }
            // next k-combination of 0..s.len()
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(());
                }
                i -= 1;
                if idx[i] < s.len() - k + i {
                    idx[i] += 1;
                    for j in i + 1..k {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    fn solve_zero(&mut self, s: &[usize], distinguished: &[usize], rows: &[u64]) -> Result<()> {
        let limit = self.limit();
        if limit < 0 {
            self.done = true;
            return Ok(());
        }
        self.rows_buf.clear();
        self.rows_buf.extend(bits::iter_ones(rows));
        let r_len = self.rows_buf.len();
        let n = self.m.cols();
        let picks = self.spec.zero_limit(s.len(), n);
        let need = r_len as i64 - limit;
        let m = self.m;
        self.cover
            .load(n, &self.rows_buf, |r| m.row_words(r), &self.s_mask);
        if let Some(res) = self.cover.solve(r_len, picks, need) {
            let count = r_len - res.covered;
            self.best = Some((
                count,
                Witness {
                    critical: s.to_vec(),
                    zero: res.columns,
                    distinguished: distinguished.to_vec(),
                    satisfying_rows: count,
                },
            ));
            if count == 0 {
                self.done = true;
            }
        }
        if self.cover.nodes > NODE_CAP {
            return Err(Error::too_large(
                "zero-set search nodes",
                self.cover.nodes as u128,
            ));
        }
        Ok(())
    }

    fn dfs(&mut self, next: usize) -> Result<()> {
        let size = self.stack.len();
        if size >= self.spec.min_size && size <= self.spec.max_size {
            self.visit_critical()?;
        }
        if self.done || size == self.spec.max_size {
            return Ok(());
        }
        for c in next..self.m.cols() {
            if size + (self.m.cols() - c) < self.spec.min_size {
                break;
            }
            self.push(c);
            let r = self.dfs(c + 1);
            self.pop();
            r?;
            if self.done {
                break;
            }
        }
        Ok(())
    }
}

/// Runs the search; `Ok(None)` when no triple exists, `Err(TooLarge)` when
/// the enumeration exceeds the cap.
pub(crate) fn search(m: &BooleanMatrix, spec: SearchSpec) -> Result<Option<SearchOutcome>> {
    let n = m.cols();
    let tuples = spec.tuple_count(n);
    if tuples > TUPLE_CAP {
        return Err(Error::too_large(
            "critical/distinguished set enumeration",
            tuples,
        ));
    }
    let cols = m.columns();
    let words = bits::words_for(m.rows());
    let shared = Shared {
        best: AtomicU64::new(u64::MAX),
    };
    // Chunk 0 holds the empty critical set; chunk c + 1 holds sets whose
    // first element is c.
    let run_chunk = |chunk: usize| -> Result<Option<(usize, Witness)>> {
        let mut st = ChunkState {
            m,
            cols: &cols,
            spec,
            chunk,
            words,
            levels: vec![vec![vec![0u64; words]; spec.weight + 1]; spec.max_size + 1],
            stack: Vec::with_capacity(spec.max_size),
            s_mask: vec![0u64; bits::words_for(n)],
            exact: vec![0u64; words],
            rows_buf: Vec::new(),
            cover: CoverScratch::default(),
            best: None,
            shared: &shared,
            done: false,
        };
        if chunk == 0 {
            if spec.min_size == 0 {
                st.visit_critical()?;
            }
        } else {
            let first = chunk - 1;
            st.push(first);
            st.dfs(first + 1)?;
        }
        if let Some((count, _)) = &st.best {
            let packed = ((*count as u64) << 32) | chunk as u64;
            shared.best.fetch_min(packed, Ordering::Relaxed);
        }
        Ok(st.best)
    };

    let chunks: Vec<usize> = (0..=n).collect();
    let results: Vec<Result<Option<(usize, Witness)>>> = if tuples >= 4096 {
        chunks.par_iter().map(|&c| run_chunk(c)).collect()
    } else {
        chunks.iter().map(|&c| run_chunk(c)).collect()
    };
    let mut best: Option<(usize, usize, Witness)> = None;
    for (chunk, r) in results.into_iter().enumerate() {
        if let Some((count, w)) = r? {
            if best
                .as_ref()
                .is_none_or(|(bc, bk, _)| (count, chunk) < (*bc, *bk))
            {
                best = Some((count, chunk, w));
            }
        }
    }
    Ok(best.map(|(min_count, _, witness)| SearchOutcome { min_count, witness }))
}
