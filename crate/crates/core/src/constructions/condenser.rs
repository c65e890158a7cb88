//! Regular matrices from lossless condensers.
//!
//! `G₁` is a bipartite graph from `{0,1}^ℓ̃` to `{0,1}^k` with left degree
//! `8u`. Each right vertex is split into one vertex per `u`-subset of its
//! neighbourhood (`G₂`), and a column `x` is adjacent to row `(y, w, T)`
//! exactly when `f(x, y) ∈ T`.

use rayon::prelude::*;
use serde::Serialize;

use super::check_size;
use crate::bits;
use crate::combinat::binomial;
use crate::condensers::CondenserSpec;
use crate::error::{ensure, Error, Result};
use crate::matrix::BooleanMatrix;

/// Cap on `G₂` right vertices per building block.
pub const G2_CAP: u128 = 1_000_000;

/// Largest `ℓ̃` for which `G₁` is materialized.
pub const MAX_GRAPH_BITS: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiregularGraph {
    pub left_bits: u32,
    pub right_bits: u32,
    pub u: usize,
    /// Some right vertex is hit twice by the same left vertex.
    pub multi_edges: bool,
}

impl BiregularGraph {
    pub fn left_size(&self) -> usize {
        1 << self.left_bits
    }

    pub fn right_size(&self) -> usize {
        1 << self.right_bits
    }

    pub fn left_degree(&self) -> usize {
        8 * self.u
    }

    pub fn right_degree(&self) -> usize {
        (8 * self.u) << (self.left_bits - self.right_bits)
    }

    /// Endpoint of the `j`-th edge of left vertex `v`.
    pub fn neighbor(&self, v: usize, j: usize) -> usize {
        (self.left_degree() * v + j) & (self.right_size() - 1)
    }

    /// Sorted, deduplicated left neighbourhood of every right vertex.
    pub fn right_neighborhoods(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.right_size()];
        for v in 0..self.left_size() {
            for j in 0..self.left_degree() {
                let w = self.neighbor(v, j);
                if out[w].last() != Some(&v) {
                    out[w].push(v);
                }
            }
        }
        out
    }

    /// Right degrees counted with multiplicity.
    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.right_size()];
        for v in 0..self.left_size() {
            for j in 0..self.left_degree() {
                deg[self.neighbor(v, j)] += 1;
            }
        }
        deg
    }
}

pub fn build_biregular_graph(left_bits: u32, right_bits: u32, u: usize) -> Result<BiregularGraph> {
    ensure(u >= 1, || "u must be at least 1".into())?;
    ensure(right_bits >= 1 && left_bits >= right_bits, || {
        format!("need ℓ̃ ≥ k ≥ 1, got ℓ̃={left_bits} k={right_bits}")
    })?;
    ensure(left_bits <= MAX_GRAPH_BITS, || {
        format!("ℓ̃ = {left_bits} exceeds {MAX_GRAPH_BITS}")
    })?;
    Ok(BiregularGraph {
        left_bits,
        right_bits,
        u,
        multi_edges: 8 * u > 1 << right_bits,
    })
}

/// Calls `f` on every `u`-subset of `items` in lexicographic order.
fn for_each_subset(items: &[usize], u: usize, f: &mut impl FnMut(&[usize])) {
    let n = items.len();
    if u > n {
        return;
    }
    let mut idx: Vec<usize> = (0..u).collect();
    let mut buf = vec![0; u];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = items[i];
        }
        f(&buf);
        let Some(pos) = (0..u).rev().find(|&i| idx[i] < n - u + i) else {
            return;
        };
        idx[pos] += 1;
        for i in pos + 1..u {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// Number of rows of the building block for `f`: `2^t · Σ_w C(|Γ₁(w)|, u)`.
pub fn building_block_rows(f: &CondenserSpec, u: usize) -> Result<u128> {
    let g = build_biregular_graph(f.output_bits, f.entropy, u)?;
    let v2: u128 = g
        .right_neighborhoods()
        .iter()
        .map(|nb| binomial(nb.len(), u))
        .sum();
    Ok(v2 << f.seed_bits)
}

/// Building block for condenser `f`; rows ordered by `(y, w, T)` with `T`
/// in lexicographic order.
pub fn construct_building_block(f: &CondenserSpec, u: usize, p: f64) -> Result<BooleanMatrix> {
    building_block(f, u, p, f.seed_bits)
}

/// Same as [`construct_building_block`] but with the seed widened to
/// `seed_bits ≥ t`; the extra high bits are ignored by `f`.
fn building_block(f: &CondenserSpec, u: usize, p: f64, seed_bits: u32) -> Result<BooleanMatrix> {
    let eval = f.evaluator()?;
    ensure((0.0..1.0).contains(&p), || {
        format!("p = {p} outside [0, 1)")
    })?;
    ensure(f.error < (1.0 - p) / 16.0, || {
        format!(
            "condenser error {} is not below (1 − p)/16 = {}",
            f.error,
            (1.0 - p) / 16.0
        )
    })?;
    ensure(f.input_bits <= MAX_GRAPH_BITS, || {
        format!("input length {} exceeds {MAX_GRAPH_BITS}", f.input_bits)
    })?;
    let g = build_biregular_graph(f.output_bits, f.entropy, u)?;
    let hoods = g.right_neighborhoods();
    let v2: u128 = hoods.iter().map(|nb| binomial(nb.len(), u)).sum();
    if v2 > G2_CAP {
        return Err(Error::TooLarge {
            what: "G₂ right vertices".into(),
            estimate: v2,
            cap: G2_CAP,
        });
    }
    let n = 1usize << f.input_bits;
    let rows = (v2 as usize) << seed_bits;
    check_size(rows, n)?;

    let seed_mask = (1u64 << f.seed_bits) - 1;
    let per_seed: Vec<Vec<Vec<u64>>> = (0..1u64 << seed_bits)
        .into_par_iter()
        .map(|y| -> Result<Vec<Vec<u64>>> {
            // Preimage sets of every left vertex of G₁ under f(·, y).
            let mut pre: Vec<Vec<usize>> = vec![Vec::new(); g.left_size()];
            for x in 0..n {
                pre[eval.condense(x as u64, y & seed_mask)? as usize].push(x);
            }
            let mut out = Vec::with_capacity(v2 as usize);
            for nb in &hoods {
                for_each_subset(nb, u, &mut |t| {
                    let mut row = vec![0u64; bits::words_for(n)];
                    for &v in t {
                        for &x in &pre[v] {
                            bits::set(&mut row, x);
                        }
                    }
                    out.push(row);
                });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    BooleanMatrix::from_packed_rows(n, per_seed.into_iter().flatten().collect())
}

/// Entropy required of the `i`-th condenser: `log u′ + i + 1`.
pub fn family_entropy(u: usize, i: usize) -> u32 {
    u.next_power_of_two().trailing_zeros() + i as u32 + 1
}

/// `r = ⌈log₂(d/u′)⌉`; the family has `r + 1` members.
pub fn family_bands(d: usize, u: usize) -> usize {
    let up = u.next_power_of_two();
    let mut r = 0;
    while up << r < d {
        r += 1;
    }
    r
}

/// Stacks the building blocks of `family[0..=r]`, block `i` repeated
/// `2^{r−i}` times. Seeds are padded to the longest in the family.
pub fn construct_regular_from_condensers(
    family: &[CondenserSpec],
    d: usize,
    u: usize,
    p: f64,
) -> Result<BooleanMatrix> {
    ensure(u >= 1 && d >= u, || {
        format!("need d ≥ u ≥ 1, got d={d} u={u}")
    })?;
    let r = family_bands(d, u);
    ensure(family.len() > r, || {
        format!("family has {} condensers, need {}", family.len(), r + 1)
    })?;
    let family = &family[..=r];
    let input = family[0].input_bits;
    for (i, f) in family.iter().enumerate() {
        ensure(f.input_bits == input, || {
            "condensers disagree on input length".into()
        })?;
        ensure(f.entropy == family_entropy(u, i), || {
            format!(
                "condenser {i} has entropy {}, need {}",
                f.entropy,
                family_entropy(u, i)
            )
        })?;
    }
    let t = family.iter().map(|f| f.seed_bits).max().unwrap_or(0);
    let blocks = family
        .iter()
        .enumerate()
        .map(|(i, f)| building_block(f, u, p, t)?.repeat_rows(1 << (r - i)))
        .collect::<Result<Vec<_>>>()?;
    BooleanMatrix::stack(&blocks)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FamilyKind {
    Identity,
    RandomTable { table_seed: u64 },
    Guv { alpha: f64 },
}

/// Condenser family for [`construct_regular_from_condensers`] with error
/// `(1 − p)/32`.
pub fn condenser_family(
    kind: FamilyKind,
    input_bits: u32,
    d: usize,
    u: usize,
    p: f64,
) -> Result<Vec<CondenserSpec>> {
    ensure(u >= 1 && d >= u, || {
        format!("need d ≥ u ≥ 1, got d={d} u={u}")
    })?;
    let eps = (1.0 - p) / 32.0;
    (0..=family_bands(d, u))
        .map(|i| {
            let k = family_entropy(u, i);
            match kind {
                FamilyKind::Identity => CondenserSpec::identity(input_bits, k),
                FamilyKind::RandomTable { table_seed } => CondenserSpec::random_table_optimal(
                    input_bits,
                    k,
                    eps,
                    table_seed.wrapping_add(i as u64),
                ),
                FamilyKind::Guv { alpha } => CondenserSpec::guv(input_bits, k, alpha, eps),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees() {
        let g = build_biregular_graph(3, 2, 1).unwrap();
        assert!(g.multi_edges);
        assert!(g.right_degrees().iter().all(|&x| x == 16));
        for (l, k, u) in [(5, 5, 1), (6, 4, 1), (7, 5, 3), (8, 6, 2), (6, 6, 2)] {
            let g = build_biregular_graph(l, k, u).unwrap();
            let deg = g.right_degrees();
            assert_eq!(deg.iter().sum::<usize>(), (1 << l) * 8 * u);
            assert!(deg.iter().all(|&x| x == g.right_degree()), "{l} {k} {u}");
        }
        assert!(build_biregular_graph(2, 3, 1).is_err());
    }

    #[test]
    fn subsets_in_order() {
        let mut seen = Vec::new();
        for_each_subset(&[4, 6, 9], 2, &mut |t| seen.push(t.to_vec()));
        assert_eq!(seen, vec![vec![4, 6], vec![4, 9], vec![6, 9]]);
    }

    #[test]
    fn family_shape() {
        assert_eq!(family_bands(4, 2), 1);
        assert_eq!(family_bands(2, 2), 0);
        assert_eq!(family_bands(5, 3), 1);
        assert_eq!(family_entropy(3, 1), 4);
        let fam = condenser_family(FamilyKind::Identity, 6, 4, 2, 0.5).unwrap();
        assert_eq!(
            fam.iter().map(|f| f.entropy).collect::<Vec<_>>(),
            vec![2, 3]
        );
    }

    #[test]
    fn error_bound_enforced() {
        let f = CondenserSpec::random_table(4, 1, 4, 2, 0.05, 0).unwrap();
        assert!(construct_building_block(&f, 1, 0.5).is_err());
        assert!(construct_building_block(&f, 1, 0.0).is_ok());
    }
}
