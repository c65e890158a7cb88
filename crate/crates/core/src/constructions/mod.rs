//! Matrix constructions: random rows from a `(u+1)`-wise independent
//! sampler, regular matrices from lossless condensers, and concatenation
//! of a q-ary code with the `u`-tuple indicator map.

mod condenser;
mod kautz;
mod kwise;
mod probabilistic;

pub use condenser::{
    build_biregular_graph, building_block_rows, condenser_family, construct_building_block,
    construct_regular_from_condensers, family_bands, family_entropy, BiregularGraph, FamilyKind,
    G2_CAP,
};
pub use kautz::{construct_kautz_singleton, indicator};
pub use kwise::{next_prime, sample_kwise_row, KwiseSampler};
pub use probabilistic::{
    construct_probabilistic, recommended_m_prime, ProbConstructionParams, TargetProperty,
};

use crate::error::{Error, Result};

/// Cap on the number of matrix entries a construction may allocate.
pub const ENTRY_CAP: u128 = 1 << 31;

fn check_size(rows: usize, cols: usize) -> Result<()> {
    let entries = rows as u128 * cols as u128;
    if entries > ENTRY_CAP {
        return Err(Error::TooLarge {
            what: format!("{rows}×{cols} matrix entries"),
            estimate: entries,
            cap: ENTRY_CAP,
        });
    }
    Ok(())
}
