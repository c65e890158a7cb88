//! Empirical losslessness census over flat sources.
//!
//! For a flat source `S` of size `K = 2^k` and a seed `y`, let `n_v` be the
//! number of `x ∈ S` with `f(x, y) = v`. The unique set `T` holds the outputs
//! with `n_v = 1`; the collision excess `Σ_{n_v ≥ 2} (n_v − 1) / K` is the
//! statistical distance from the output distribution to the nearest
//! distribution of min-entropy `k`, and `K − |T| ≤ 2·excess·K`. A seed is
//! good at error `ε` when `|T| ≥ (1 − 2ε)K`.

use rand::seq::index;
use serde::{Deserialize, Serialize};

use super::CondenserSpec;
use crate::combinat::binomial;
use crate::error::{ensure, Error, Result};
use crate::rng::seeded;

/// Sources are enumerated exhaustively when there are at most this many.
pub const EXHAUSTIVE_SOURCES: u128 = 1_000_000;
/// Cap on `sources × seeds × K` condenser evaluations.
pub const WORK_CAP: u128 = 50_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ProbeMode {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeRow {
    pub source: u64,
    pub seed: u64,
    pub unique: u64,
    pub colliding_outputs: u64,
    pub collision_excess: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub mode: ProbeMode,
    pub entropy: u32,
    pub source_size: u64,
    pub sources: u64,
    pub seeds: u64,
    pub epsilon: f64,
    pub worst_unique_fraction: f64,
    pub worst_good_seed_fraction: f64,
    pub mean_good_seed_fraction: f64,
    pub max_collision_excess: f64,
    #[serde(skip)]
    pub rows: Vec<ProbeRow>,
}

impl ProbeReport {
    /// Per-source good-seed fractions at error `eps`.
    pub fn good_seed_fractions(&self, eps: f64) -> Vec<f64> {
        let need = (1.0 - 2.0 * eps) * self.source_size as f64;
        self.rows
            .chunks(self.seeds as usize)
            .map(|chunk| {
                chunk.iter().filter(|r| r.unique as f64 >= need).count() as f64 / self.seeds as f64
            })
            .collect()
    }

    /// `source,seed,unique_fraction,collision_excess` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("source,seed,unique_fraction,collision_excess\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{}\n",
                r.source,
                r.seed,
                r.unique as f64 / self.source_size as f64,
                r.collision_excess
            ));
        }
        out
    }
}

/// Next `K`-subset of `[0, universe)` in lexicographic order.
fn next_combination(c: &mut [u64], universe: u64) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < universe - (k - i) as u64 {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Census of `spec` on flat sources of size `2^k`, judged at `spec.error`.
/// Exhaustive when `C(2^ñ, 2^k) ≤ 10^6`, otherwise `trials` sources sampled
/// from `seed`.
pub fn probe_losslessness(
    spec: &CondenserSpec,
    k: u32,
    trials: usize,
    seed: u64,
) -> Result<ProbeReport> {
    let eval = spec.evaluator()?;
    ensure(k <= spec.input_bits, || {
        format!("entropy {k} exceeds input length {}", spec.input_bits)
    })?;
    ensure(trials >= 1, || "trials must be at least 1".into())?;
    let universe = 1u64 << spec.input_bits;
    let big_k = 1u64 << k;
    let seeds = 1u64 << spec.seed_bits;
    let total_sources = binomial_u128(universe, big_k);
    let (mode, sources) = if total_sources <= EXHAUSTIVE_SOURCES {
        (ProbeMode::Exhaustive, total_sources as u64)
    } else {
        (ProbeMode::Sampled, trials as u64)
    };
    let work = sources as u128 * seeds as u128 * big_k as u128;
    if work > WORK_CAP {
        return Err(Error::TooLarge {
            what: "condenser evaluations".into(),
            estimate: work,
            cap: WORK_CAP,
        });
    }
    let eps = spec.error;
    let need = (1.0 - 2.0 * eps) * big_k as f64;

    let mut rows = Vec::with_capacity((sources * seeds) as usize);
    let mut worst_unique = f64::INFINITY;
    let mut good_fracs = Vec::with_capacity(sources as usize);
    let mut max_excess: f64 = 0.0;
    let mut current: Vec<u64> = (0..big_k).collect();
    let mut outs = Vec::with_capacity(big_k as usize);

    for src in 0..sources {
        let members: Vec<u64> = match mode {
            ProbeMode::Exhaustive => {
                if src > 0 {
                    next_combination(&mut current, universe);
                }
                current.clone()
            }
            ProbeMode::Sampled => {
                let mut rng = seeded(seed, src);
                let mut v: Vec<u64> = index::sample(&mut rng, universe as usize, big_k as usize)
                    .into_iter()
                    .map(|i| i as u64)
                    .collect();
                v.sort_unstable();
                v
            }
        };
        let mut good = 0u64;
        for y in 0..seeds {
            outs.clear();
            for &x in &members {
                outs.push(eval.condense(x, y)?);
            }
            outs.sort_unstable();
            let (mut unique, mut colliding, mut excess) = (0u64, 0u64, 0u64);
            let mut i = 0;
            while i < outs.len() {
                let mut j = i + 1;
                while j < outs.len() && outs[j] == outs[i] {
                    j += 1;
                }
                let run = (j - i) as u64;
                if run == 1 {
                    unique += 1;
                } else {
                    colliding += 1;
                    excess += run - 1;
                }
                i = j;
            }
            let frac = unique as f64 / big_k as f64;
            let ex = excess as f64 / big_k as f64;
            worst_unique = worst_unique.min(frac);
            max_excess = max_excess.max(ex);
            if unique as f64 >= need {
                good += 1;
            }
            rows.push(ProbeRow {
                source: src,
                seed: y,
                unique,
                colliding_outputs: colliding,
                collision_excess: ex,
            });
        }
        good_fracs.push(good as f64 / seeds as f64);
    }

    Ok(ProbeReport {
        mode,
        entropy: k,
        source_size: big_k,
        sources,
        seeds,
        epsilon: eps,
        worst_unique_fraction: worst_unique,
        worst_good_seed_fraction: good_fracs.iter().copied().fold(f64::INFINITY, f64::min),
        mean_good_seed_fraction: good_fracs.iter().sum::<f64>() / good_fracs.len() as f64,
        max_collision_excess: max_excess,
        rows,
    })
}

fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    if k > 64 {
        // far beyond the exhaustive threshold
        return u128::MAX;
    }
    binomial(n as usize, k as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_perfect() {
        let c = CondenserSpec::identity(4, 2).unwrap();
        let r = probe_losslessness(&c, 2, 1, 0).unwrap();
        assert_eq!(r.mode, ProbeMode::Exhaustive);
        assert_eq!(r.sources, 1820);
        assert_eq!(r.worst_unique_fraction, 1.0);
        assert_eq!(r.worst_good_seed_fraction, 1.0);
    }

    #[test]
    fn constant_collapses() {
        let c = CondenserSpec::constant(4, 1, 1).unwrap();
        let r = probe_losslessness(&c, 2, 1, 0).unwrap();
        assert_eq!(r.worst_unique_fraction, 0.0);
        assert!(r.good_seed_fractions(0.49).iter().all(|&f| f == 0.0));
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(all.len(), 6);
        assert_eq!(all[1], vec![0, 2]);
        assert_eq!(all[5], vec![2, 3]);
    }
}
