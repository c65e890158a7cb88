//! Non-adaptive threshold group testing.
//!
//! A pool (row of a measurement matrix) answers 1 when it contains at least
//! `u` positives, 0 when it contains fewer than `ℓ`, and arbitrarily in
//! between. This crate builds measurement matrices for that model, checks
//! their combinatorial properties exactly by exhaustive search, and runs
//! end-to-end noisy identification trials.
//!
//! - [`matrix`]: bit-packed matrices, threshold measurement, noise, and the
//!   row combinators (direct product, repetition, stacking).
//! - [`verify`]: exact checks for regular, threshold-disjunct, strongly
//!   disjunct, classical disjunct, and distinguishing matrices.
//! - [`constructions`]: probabilistic, condenser-based, and
//!   Kautz–Singleton style constructions.
//! - [`codes`]: finite fields, Reed–Solomon and random linear codes.
//! - [`condensers`]: lossless condensers and an empirical losslessness probe.
//! - [`simulate`]: decoders and seeded trial runs.

pub mod bits;
pub mod codes;
pub mod combinat;
pub mod condensers;
pub mod constructions;
pub mod error;
pub mod matrix;
pub mod rng;
pub mod simulate;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{
    BooleanMatrix, GapPolicy, Outcome, OutcomePattern, SparseVector, ThresholdParams,
};
