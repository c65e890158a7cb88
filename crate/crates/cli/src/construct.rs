use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;
use threshold_gt::codes::{random_linear_gv, reed_solomon, CodeSpec};
use threshold_gt::constructions::{
    condenser_family, construct_kautz_singleton, construct_probabilistic,
    construct_regular_from_condensers, recommended_m_prime, FamilyKind, ProbConstructionParams,
    TargetProperty,
};
use threshold_gt::BooleanMatrix;

use crate::manifest::{default_path, FileDigest, RunManifest};
use crate::{need, read_matrix, CliResult, Failure};

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Prob,
    Condenser,
    KsRs,
    KsGv,
    Product,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Identity,
    RandomTable,
    Guv,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Target {
    Regular,
    Disjunct,
}

#[derive(clap::Args, Debug, Serialize)]
pub struct Args {
    #[arg(long = "type", value_enum)]
    kind: Kind,
    /// Number of columns (prob).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    u: Option<usize>,
    /// Gap; recorded in the manifest only.
    #[arg(long)]
    g: Option<usize>,
    /// Noise fraction p ∈ [0, 1) (condenser).
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Rows per band (prob); defaults to the recommendation from --c.
    #[arg(long)]
    mprime: Option<usize>,
    /// Constant in the recommended rows per band (prob).
    #[arg(long, default_value_t = 2.0)]
    c: f64,
    #[arg(long, value_enum, default_value_t = Target::Regular)]
    target: Target,
    /// Condenser input length ñ; the matrix has 2^ñ columns.
    #[arg(long)]
    input_bits: Option<u32>,
    #[arg(long, value_enum, default_value_t = Family::Identity)]
    family: Family,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    /// Field size.
    #[arg(long)]
    q: Option<u64>,
    /// Code length ñ.
    #[arg(long)]
    nn: Option<usize>,
    /// Code dimension.
    #[arg(long)]
    k: Option<usize>,
    /// Target minimum distance (ks-gv).
    #[arg(long)]
    dist: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    attempts: usize,
    /// First factor (product).
    #[arg(long)]
    left: Option<PathBuf>,
    /// Second factor (product).
    #[arg(long)]
    right: Option<PathBuf>,
    /// Matrix output path; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Manifest path; defaults to `<out>.manifest.json`.
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Also write the code spec as JSON (ks-rs, ks-gv).
    #[arg(long)]
    code_out: Option<PathBuf>,
}

fn kautz(args: &Args, code: CodeSpec) -> CliResult<(BooleanMatrix, serde_json::Value)> {
    let u = need(args.u, "u", "Kautz–Singleton")?;
    let m = construct_kautz_singleton(&code, u)?;
    if let Some(path) = &args.code_out {
        std::fs::write(path, code.to_json() + "\n")?;
    }
    let meta = json!({ "code": code });
    Ok((m, meta))
}

pub fn run(args: Args) -> CliResult<()> {
    let mut inputs = Vec::new();
    let (m, meta) = match args.kind {
        Kind::Prob => {
            let ctx = "--type prob";
            let (n, d, u) = (
                need(args.n, "n", ctx)?,
                need(args.d, "d", ctx)?,
                need(args.u, "u", ctx)?,
            );
            let target = match args.target {
                Target::Regular => TargetProperty::Regular,
                Target::Disjunct => TargetProperty::Disjunct,
            };
            let params = ProbConstructionParams {
                n,
                m_prime: args
                    .mprime
                    .unwrap_or_else(|| recommended_m_prime(n, d, args.c, target)),
                d,
                u,
                seed: args.seed,
            };
            let m = construct_probabilistic(&params)?;
            (
                m,
                json!({ "bands": params.bands(), "m_prime": params.m_prime }),
            )
        }
        Kind::Condenser => {
            let ctx = "--type condenser";
            let bits = need(args.input_bits, "input-bits", ctx)?;
            let (d, u) = (need(args.d, "d", ctx)?, need(args.u, "u", ctx)?);
            let kind = match args.family {
                Family::Identity => FamilyKind::Identity,
                Family::RandomTable => FamilyKind::RandomTable {
                    table_seed: args.seed,
                },
                Family::Guv => FamilyKind::Guv { alpha: args.alpha },
            };
            let family = condenser_family(kind, bits, d, u, args.p)?;
            let m = construct_regular_from_condensers(&family, d, u, args.p)?;
            (m, json!({ "condensers": family }))
        }
        Kind::KsRs => {
            let ctx = "--type ks-rs";
            let q = need(args.q, "q", ctx)?;
            let code = reed_solomon(q, need(args.nn, "nn", ctx)?, need(args.k, "k", ctx)?)?;
            kautz(&args, code)?
        }
        Kind::KsGv => {
            let ctx = "--type ks-gv";
            let code = random_linear_gv(
                need(args.q, "q", ctx)?,
                need(args.nn, "nn", ctx)?,
                need(args.k, "k", ctx)?,
                need(args.dist, "dist", ctx)?,
                args.seed,
                args.attempts,
            )?;
            kautz(&args, code)?
        }
        Kind::Product => {
            let ctx = "--type product";
            let (l, r) = (
                need(args.left.as_ref(), "left", ctx)?,
                need(args.right.as_ref(), "right", ctx)?,
            );
            let m = read_matrix(l)?.direct_product(&read_matrix(r)?)?;
            inputs.push(FileDigest::of(l)?);
            inputs.push(FileDigest::of(r)?);
            (m, json!({}))
        }
    };

    let text = m.to_text();
    let Some(out) = &args.out else {
        print!("{text}");
        return Ok(());
    };
    std::fs::write(out, &text)?;
    let seed = matches!(args.kind, Kind::Prob | Kind::KsGv | Kind::Condenser).then_some(args.seed);
    let params = serde_json::to_value(&args).map_err(|e| Failure::usage(e.to_string()))?;
    let mut manifest = RunManifest::new("construct", params, seed);
    manifest.inputs = inputs;
    manifest.outputs.push(FileDigest::of(out)?);
    manifest.extra = json!({
        "construction": args.kind,
        "m": m.rows(),
        "n": m.cols(),
        "details": meta,
    });
    manifest.write(&args.manifest.clone().unwrap_or_else(|| default_path(out)))
}
