//! Seeded condensers `f: {0,1}^ñ × {0,1}^t → {0,1}^ℓ̃` and an empirical
//! losslessness probe.
//!
//! Bit strings are packed little-endian into `u64`. For the GUV kind the
//! output places the seed in the low `t` bits followed by the evaluation
//! blocks.

mod guv;
mod probe;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::codes::Field;
use crate::error::{ensure, Error, Result};
use crate::rng::seeded;
use guv::PolyRing;
pub use probe::{probe_losslessness, ProbeMode, ProbeReport, ProbeRow};

/// Largest supported input and seed lengths in bits.
pub const MAX_INPUT_BITS: u32 = 40;
pub const MAX_SEED_BITS: u32 = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum CondenserKind {
    Identity,
    /// A fixed random function drawn from `table_seed`.
    RandomTable {
        table_seed: u64,
    },
    /// Seed `y ∈ GF(2^s)`; input packed into `coeffs` coefficients; `blocks`
    /// evaluations of successive `h`-th powers modulo `modulus`.
    Guv {
        field_bits: u32,
        coeffs: u32,
        blocks: u32,
        h: u64,
        modulus: Vec<u32>,
    },
    /// Maps everything to zero. A negative control for the probe.
    Constant,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CondenserSpec {
    pub input_bits: u32,
    pub seed_bits: u32,
    pub output_bits: u32,
    /// Entropy parameter `k`.
    pub entropy: u32,
    /// Claimed error `ε`.
    pub error: f64,
    pub kind: CondenserKind,
}

fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

impl CondenserSpec {
    pub fn identity(input_bits: u32, entropy: u32) -> Result<Self> {
        let s = CondenserSpec {
            input_bits,
            seed_bits: 0,
            output_bits: input_bits,
            entropy,
            error: 0.0,
            kind: CondenserKind::Identity,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn constant(input_bits: u32, seed_bits: u32, output_bits: u32) -> Result<Self> {
        let s = CondenserSpec {
            input_bits,
            seed_bits,
            output_bits,
            entropy: 0,
            error: 1.0,
            kind: CondenserKind::Constant,
        };
        s.validate()?;
        Ok(s)
    }

    pub fn random_table(
        input_bits: u32,
        seed_bits: u32,
        output_bits: u32,
        entropy: u32,
        error: f64,
        table_seed: u64,
    ) -> Result<Self> {
        let s = CondenserSpec {
            input_bits,
            seed_bits,
            output_bits,
            entropy,
            error,
            kind: CondenserKind::RandomTable { table_seed },
        };
        s.validate()?;
        Ok(s)
    }

    /// Random table at the parameters of an optimal lossless condenser:
    /// `t = ⌈log ñ + log(1/ε)⌉ + 1` and `ℓ̃ = k + ⌈log(1/ε)⌉ + 1`.
    pub fn random_table_optimal(
        input_bits: u32,
        entropy: u32,
        error: f64,
        table_seed: u64,
    ) -> Result<Self> {
        ensure(error > 0.0 && error < 1.0, || {
            format!("ε = {error} outside (0, 1)")
        })?;
        let inv = (1.0 / error).log2();
        let t = ((input_bits as f64).log2() + inv).ceil() as u32 + 1;
        let out = entropy + inv.ceil() as u32 + 1;
        Self::random_table(input_bits, t, out, entropy, error, table_seed)
    }

    /// GUV condenser at explicit parameters over `GF(2^field_bits)`. The
    /// modulus is the smallest monic irreducible of degree `coeffs`.
    pub fn guv_explicit(
        input_bits: u32,
        field_bits: u32,
        coeffs: u32,
        blocks: u32,
        h: u64,
        entropy: u32,
        error: f64,
    ) -> Result<Self> {
        ensure((1..=8).contains(&field_bits), || {
            format!("field_bits {field_bits} outside 1..=8")
        })?;
        ensure(coeffs >= 1 && blocks >= 1 && h >= 1, || {
            "coeffs, blocks and h must be positive".into()
        })?;
        let field = Field::new(1 << field_bits)?;
        let modulus = PolyRing { f: &field }.smallest_irreducible(coeffs as usize)?;
        let s = CondenserSpec {
            input_bits,
            seed_bits: field_bits,
            output_bits: field_bits * (1 + blocks),
            entropy,
            error,
            kind: CondenserKind::Guv {
                field_bits,
                coeffs,
                blocks,
                h,
                modulus,
            },
        };
        s.validate()?;
        Ok(s)
    }

    /// GUV condenser for entropy `k` and `α > 0`.
    ///
    /// Pinned parameters: `s` is the largest value in `1..=8` for which some
    /// block count `m` has `|m·s − (1+α)k| ≤ 1`; `t = s`, `ℓ̃ = t + m·s`,
    /// `n′ = ⌈ñ/s⌉` coefficients, and `h` the smallest power of two greater
    /// than the degree bound `n′ − 1`.
    pub fn guv(input_bits: u32, entropy: u32, alpha: f64, error: f64) -> Result<Self> {
        ensure(alpha > 0.0, || format!("α = {alpha} must be positive"))?;
        ensure(entropy >= 1, || "entropy must be at least 1".into())?;
        let target = (1.0 + alpha) * entropy as f64;
        let (s, m) = (1..=8u32)
            .rev()
            .find_map(|s| {
                let m = (target / s as f64).round().max(1.0) as u32;
                ((m as f64 * s as f64 - target).abs() <= 1.0).then_some((s, m))
            })
            .ok_or_else(|| Error::invalid("no block size meets the output length"))?;
        let coeffs = input_bits.div_ceil(s).max(1);
        let h = (coeffs as u64).next_power_of_two();
        Self::guv_explicit(input_bits, s, coeffs, m, h, entropy, error)
    }

    pub fn validate(&self) -> Result<()> {
        ensure((1..=MAX_INPUT_BITS).contains(&self.input_bits), || {
            format!(
                "input_bits {} outside 1..={MAX_INPUT_BITS}",
                self.input_bits
            )
        })?;
        ensure(self.seed_bits <= MAX_SEED_BITS, || {
            format!("seed_bits {} exceeds {MAX_SEED_BITS}", self.seed_bits)
        })?;
        ensure((1..=64).contains(&self.output_bits), || {
            format!("output_bits {} outside 1..=64", self.output_bits)
        })?;
        ensure(
            self.entropy <= self.input_bits && self.entropy <= self.output_bits,
            || {
                format!(
                    "entropy {} must not exceed input ({}) or output ({}) length",
                    self.entropy, self.input_bits, self.output_bits
                )
            },
        )?;
        ensure(
            self.error.is_finite() && (0.0..=1.0).contains(&self.error),
            || format!("error {} outside [0, 1]", self.error),
        )?;
        match &self.kind {
            CondenserKind::Identity => {
                ensure(
                    self.seed_bits == 0 && self.output_bits == self.input_bits,
                    || "identity needs t = 0 and ℓ̃ = ñ".into(),
                )?;
            }
            CondenserKind::RandomTable { .. } | CondenserKind::Constant => {}
            CondenserKind::Guv {
                field_bits,
                coeffs,
                blocks,
                h,
                modulus,
            } => {
                let s = *field_bits;
                ensure((1..=8).contains(&s), || {
                    format!("field_bits {s} outside 1..=8")
                })?;
                ensure(*coeffs >= 1 && *blocks >= 1 && *h >= 1, || {
                    "coeffs, blocks and h must be positive".into()
                })?;
                ensure(*coeffs <= MAX_INPUT_BITS, || {
                    format!("coeffs {coeffs} exceeds {MAX_INPUT_BITS}")
                })?;
                ensure(self.seed_bits == s, || {
                    "GUV seed length must equal field_bits".into()
                })?;
                ensure(
                    coeffs.checked_mul(s).is_some_and(|b| b >= self.input_bits),
                    || "coefficients cannot hold the input".into(),
                )?;
                ensure(
                    blocks.checked_add(1).and_then(|b| b.checked_mul(s)) == Some(self.output_bits),
                    || "GUV output length must be t + blocks·s".into(),
                )?;
                ensure(
                    modulus.len() == *coeffs as usize + 1 && modulus.last() == Some(&1),
                    || "modulus must be monic of degree coeffs".into(),
                )?;
                ensure(modulus.iter().all(|&c| c < (1 << s)), || {
                    "modulus coefficient outside the field".into()
                })?;
                let field = Field::new(1 << s)?;
                ensure(PolyRing { f: &field }.is_irreducible(modulus), || {
                    "modulus is not irreducible".into()
                })?;
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("CondenserSpec serializes")
    }

    /// Parses and validates a JSON condenser description.
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: CondenserSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        spec.validate()?;
        Ok(spec)
    }

    /// A reusable evaluator (caches the field for GUV).
    pub fn evaluator(&self) -> Result<Condenser<'_>> {
        self.validate()?;
        let field = match &self.kind {
            CondenserKind::Guv { field_bits, .. } => Some(Field::new(1 << field_bits)?),
            _ => None,
        };
        Ok(Condenser { spec: self, field })
    }

    /// One-shot evaluation; see [`Condenser::condense`].
    pub fn condense(&self, x: u64, y: u64) -> Result<u64> {
        self.evaluator()?.condense(x, y)
    }
}

pub struct Condenser<'a> {
    spec: &'a CondenserSpec,
    field: Option<Field>,
}

impl Condenser<'_> {
    pub fn spec(&self) -> &CondenserSpec {
        self.spec
    }

    /// `f(x, y)`; errors if `x` or `y` do not fit the declared lengths.
    pub fn condense(&self, x: u64, y: u64) -> Result<u64> {
        let s = self.spec;
        ensure(x <= mask(s.input_bits), || {
            format!("input {x} exceeds {} bits", s.input_bits)
        })?;
        ensure(y <= mask(s.seed_bits), || {
            format!("seed {y} exceeds {} bits", s.seed_bits)
        })?;
        Ok(match &s.kind {
            CondenserKind::Identity => x,
            CondenserKind::Constant => 0,
            CondenserKind::RandomTable { table_seed } => {
                let stream = (x << s.seed_bits) | y;
                seeded(*table_seed, stream).gen::<u64>() & mask(s.output_bits)
            }
            CondenserKind::Guv {
                coeffs,
                blocks,
                h,
                modulus,
                ..
            } => guv::condense(
                self.field.as_ref().expect("field cached"),
                x,
                y as u32,
                *coeffs as usize,
                *blocks as usize,
                *h,
                modulus,
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_returns_input() {
        let c = CondenserSpec::identity(10, 4).unwrap();
        for x in [0u64, 5, 1023] {
            assert_eq!(c.condense(x, 0).unwrap(), x);
        }
        assert!(c.condense(1024, 0).is_err());
        assert!(c.condense(0, 1).is_err());
    }

    #[test]
    fn guv_pinning_meets_output_length() {
        for alpha in [0.5, 1.0] {
            for k in 1..=12u32 {
                let c = CondenserSpec::guv(16, k, alpha, 0.1).unwrap();
                let ideal = c.seed_bits as f64 + (1.0 + alpha) * k as f64;
                assert!(
                    (c.output_bits as f64 - ideal).abs() <= 1.0,
                    "α={alpha} k={k}"
                );
            }
        }
    }

    #[test]
    fn guv_degree_and_h() {
        let c = CondenserSpec::guv_explicit(16, 4, 4, 2, 4, 8, 0.1).unwrap();
        assert_eq!(c.output_bits, 12);
        let c = CondenserSpec::guv(20, 8, 1.0, 0.1).unwrap();
        let CondenserKind::Guv { coeffs, h, .. } = c.kind else {
            panic!()
        };
        assert!(h >= coeffs as u64 && h / 2 < coeffs as u64);
    }

    #[test]
    fn random_table_is_a_fixed_function() {
        let c = CondenserSpec::random_table(10, 4, 7, 3, 0.1, 42).unwrap();
        let e = c.evaluator().unwrap();
        for x in 0..50 {
            for y in 0..16 {
                let a = e.condense(x, y).unwrap();
                assert!(a < 128);
                assert_eq!(a, e.condense(x, y).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let c = CondenserSpec::guv_explicit(16, 4, 4, 2, 4, 8, 0.1).unwrap();
        assert_eq!(CondenserSpec::from_json(&c.to_json()).unwrap(), c);
        let mut bad = c.clone();
        if let CondenserKind::Guv { modulus, .. } = &mut bad.kind {
            modulus[0] = 0;
        }
        assert!(CondenserSpec::from_json(&bad.to_json()).is_err());
        assert!(CondenserSpec::from_json("{}").is_err());
        let mut bad = CondenserSpec::identity(8, 8).unwrap();
        bad.output_bits = 7;
        assert!(bad.validate().is_err());
    }
}
