//! End-to-end trials: plant a sparse vector, take gapped threshold
//! measurements, resolve the gap, flip outcomes, decode, and score.

mod decode;

pub use decode::{
    brute_force_candidates, decode_brute_force, decode_cover, DecodeResult, Decoding, Status,
};

use rand::seq::index;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::matrix::{
    apply_noise, measure, resolve, BooleanMatrix, GapPolicy, SparseVector, ThresholdParams,
};
use crate::rng::{seeded, stream2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecoderKind {
    Brute,
    Cover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub params: ThresholdParams,
    /// Exact number of outcome flips per trial.
    pub flips: usize,
    pub policy: GapPolicy,
    pub trials: usize,
    pub seed: u64,
    pub decoder: DecoderKind,
}

impl TrialConfig {
    pub fn validate(&self, m: &BooleanMatrix) -> Result<()> {
        self.params.validate()?;
        ensure(self.trials >= 1, || "trials must be at least 1".into())?;
        ensure(self.flips <= m.rows(), || {
            format!("flip budget {} exceeds {} rows", self.flips, m.rows())
        })?;
        ensure(self.params.d <= m.cols(), || {
            format!("sparsity {} exceeds {} columns", self.params.d, m.cols())
        })?;
        if self.decoder == DecoderKind::Cover {
            ensure(self.params.lower == 1 && self.params.upper == 1, || {
                "the cover decoder needs lower = upper = 1".into()
            })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: usize,
    pub status: Status,
    pub support_size: usize,
    pub flips: usize,
    pub candidates: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialStats {
    pub trials: usize,
    pub success_rate: f64,
    pub mean_candidates: f64,
    pub exact: usize,
    pub within_gap_ambiguity: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRun {
    pub config: TrialConfig,
    pub stats: TrialStats,
    pub records: Vec<TrialRecord>,
}

impl TrialRun {
    /// `trial,status,support_size,flips,candidates` with a header.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in &self.records {
            w.serialize(r).expect("in-memory CSV write");
        }
        String::from_utf8(w.into_inner().expect("flush to Vec")).expect("CSV is UTF-8")
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&serde_json::json!({
            "config": self.config,
            "stats": self.stats,
        }))
        .expect("summary serializes")
    }
}

/// Decodes `y` with the configured decoder and scores against `truth`.
pub fn decode_and_score(
    m: &BooleanMatrix,
    y: &[bool],
    truth: &[usize],
    config: &TrialConfig,
) -> Result<DecodeResult> {
    let p = &config.params;
    let decoding = match config.decoder {
        DecoderKind::Brute => decode_brute_force(m, y, p, config.flips)?,
        DecoderKind::Cover => decode_cover(m, y, p.e)?,
    };
    Ok(DecodeResult::score(decoding, truth, p.gap()))
}

/// Trial `i` draws its support size uniformly from `upper..=d`, then the
/// support, gap resolution and flips, all from streams of `(seed, i)`.
fn one_trial(m: &BooleanMatrix, config: &TrialConfig, i: usize) -> Result<TrialRecord> {
    let p = &config.params;
    let mut rng = seeded(config.seed, stream2(i as u64, 0));
    let size = rng.gen_range(p.upper..=p.d);
    let support = index::sample(&mut rng, m.cols(), size).into_vec();
    let x = SparseVector::new(m.cols(), support)?;
    let policy = match config.policy {
        GapPolicy::Random(s) => GapPolicy::Random(s ^ rng.gen::<u64>()),
        other => other,
    };
    let y = resolve(&measure(m, &x, p)?, policy);
    let y = apply_noise(&y, config.flips, rng.gen())?;
    let result = decode_and_score(m, &y, x.support(), config)?;
    Ok(TrialRecord {
        trial: i,
        status: result.status,
        support_size: size,
        flips: config.flips,
        candidates: result.candidates.len(),
    })
}

pub fn run_trials(m: &BooleanMatrix, config: &TrialConfig) -> Result<TrialRun> {
    config.validate(m)?;
    let records = (0..config.trials)
        .into_par_iter()
        .map(|i| one_trial(m, config, i))
        .collect::<Result<Vec<_>>>()?;
    let count = |s: Status| records.iter().filter(|r| r.status == s).count();
    let (exact, within, fail) = (
        count(Status::Exact),
        count(Status::WithinGapAmbiguity),
        count(Status::Fail),
    );
    let stats = TrialStats {
        trials: config.trials,
        success_rate: (exact + within) as f64 / config.trials as f64,
        mean_candidates: records.iter().map(|r| r.candidates).sum::<usize>() as f64
            / config.trials as f64,
        exact,
        within_gap_ambiguity: within,
        fail,
    };
    Ok(TrialRun {
        config: *config,
        stats,
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(decoder: DecoderKind) -> TrialConfig {
        TrialConfig {
            params: ThresholdParams::gap_free(2, 0, 1).unwrap(),
            flips: 0,
            policy: GapPolicy::Random(3),
            trials: 20,
            seed: 5,
            decoder,
        }
    }

    #[test]
    fn identity_always_succeeds() {
        let m = BooleanMatrix::identity(8).unwrap();
        for dec in [DecoderKind::Brute, DecoderKind::Cover] {
            let run = run_trials(&m, &config(dec)).unwrap();
            assert_eq!(run.stats.success_rate, 1.0);
            assert_eq!(run.stats.exact, 20);
        }
    }

    #[test]
    fn reproducible() {
        let m = BooleanMatrix::identity(8).unwrap();
        let a = run_trials(&m, &config(DecoderKind::Brute)).unwrap();
        let b = run_trials(&m, &config(DecoderKind::Brute)).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        assert!(a
            .to_csv()
            .starts_with("trial,status,support_size,flips,candidates\n"));
    }

    #[test]
    fn config_checks() {
        let m = BooleanMatrix::identity(8).unwrap();
        let mut c = config(DecoderKind::Cover);
        c.params = ThresholdParams::gap_free(2, 0, 2).unwrap();
        assert!(run_trials(&m, &c).is_err());
        c = config(DecoderKind::Brute);
        c.trials = 0;
        assert!(run_trials(&m, &c).is_err());
    }
}
