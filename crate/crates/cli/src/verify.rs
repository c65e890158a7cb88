use std::path::PathBuf;

use threshold_gt::verify::{
    check_classical_disjunct, check_distinguishing, check_regular, check_strongly_disjunct,
    check_threshold_disjunct, PropertyKind,
};

use crate::{read_matrix, CliResult, Failure};

#[derive(clap::Args, Debug)]
pub struct Args {
    #[arg(long)]
    matrix: PathBuf,
    /// regular, disjunct, strong, classical or distinguish.
    #[arg(long)]
    property: PropertyKind,
    #[arg(long)]
    d: usize,
    #[arg(long, default_value_t = 0)]
    e: usize,
    #[arg(long, default_value_t = 1)]
    u: usize,
    #[arg(long, default_value_t = 0)]
    g: usize,
}

pub fn run(a: Args) -> CliResult<()> {
    let m = read_matrix(&a.matrix)?;
    let report = match a.property {
        PropertyKind::Regular => check_regular(&m, a.d, a.e, a.u, a.g)?,
        PropertyKind::Disjunct => check_threshold_disjunct(&m, a.d, a.e, a.u, a.g)?,
        PropertyKind::Strong => check_strongly_disjunct(&m, a.d, a.e, a.u)?,
        PropertyKind::Classical => check_classical_disjunct(&m, a.d, a.e)?,
        PropertyKind::Distinguish => {
            if a.g >= a.u {
                return Err(Failure::usage(format!(
                    "need g < u, got g={}, u={}",
                    a.g, a.u
                )));
            }
            check_distinguishing(&m, a.d, a.e, a.u - a.g, a.u)?
        }
    };
    println!(
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    if report.holds {
        Ok(())
    } else {
        Err(Failure {
            code: 1,
            message: String::new(),
        })
    }
}
