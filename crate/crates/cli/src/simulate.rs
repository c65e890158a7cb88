use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::json;
use threshold_gt::simulate::{run_trials, DecoderKind, TrialConfig};
use threshold_gt::{GapPolicy, ThresholdParams};

use crate::manifest::{default_path, FileDigest, RunManifest};
use crate::{read_matrix, CliResult, Failure};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Gap {
    Zero,
    One,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Decoder {
    Brute,
    Cover,
}

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    matrix: PathBuf,
    #[arg(long)]
    d: usize,
    /// Lower threshold ℓ; defaults to u.
    #[arg(long)]
    lower: Option<usize>,
    /// Upper threshold u.
    #[arg(long, default_value_t = 1)]
    u: usize,
    /// Error margin e passed to the cover decoder.
    #[arg(long, default_value_t = 0)]
    e: usize,
    #[arg(long, default_value_t = 0)]
    flips: usize,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    #[arg(long, value_enum, default_value_t = Gap::Random)]
    gap: Gap,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Decoder::Brute)]
    decoder: Decoder,
    /// Per-trial CSV; stdout when absent.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Summary JSON; stderr when absent.
    #[arg(long)]
    summary: Option<PathBuf>,
}

pub fn run(a: Args) -> CliResult<()> {
    if a.trials == 0 {
        return Err(Failure::usage("--trials must be at least 1"));
    }
    let m = read_matrix(&a.matrix)?;
    let config = TrialConfig {
        params: ThresholdParams::new(a.d, a.e, a.lower.unwrap_or(a.u), a.u)?,
        flips: a.flips,
        policy: match a.gap {
            Gap::Zero => GapPolicy::AllZero,
            Gap::One => GapPolicy::AllOne,
            Gap::Random => GapPolicy::Random(a.seed),
        },
        trials: a.trials,
        seed: a.seed,
        decoder: match a.decoder {
            Decoder::Brute => DecoderKind::Brute,
            Decoder::Cover => DecoderKind::Cover,
        },
    };
    let run = run_trials(&m, &config)?;
    let csv = run.to_csv();
    let summary = run.summary_json() + "\n";
    match &a.csv {
        Some(p) => std::fs::write(p, &csv)?,
        None => print!("{csv}"),
    }
    match &a.summary {
        Some(p) => std::fs::write(p, &summary)?,
        None => eprint!("{summary}"),
    }
    if let Some(csv_path) = &a.csv {
        let mut manifest = RunManifest::new("simulate", json!({ "config": config }), Some(a.seed));
        manifest.inputs.push(FileDigest::of(&a.matrix)?);
        manifest.outputs.push(FileDigest::of(csv_path)?);
        if let Some(p) = &a.summary {
            manifest.outputs.push(FileDigest::of(p)?);
        }
        manifest.write(&default_path(csv_path))?;
    }
    Ok(())
}
