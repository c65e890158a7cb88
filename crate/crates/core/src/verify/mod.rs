//! Exact checks of the combinatorial matrix properties.
//!
//! Every check computes the minimum, over all admissible tuples, of the
//! number of satisfying rows. `max_e` is that minimum minus one, the
//! property holds for `e` iff `max_e ≥ e`, and the witness is the
//! lexicographically first tuple attaining the minimum.

mod cover;
mod distinguish;
mod engine;

use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};
use crate::matrix::BooleanMatrix;
use engine::{SearchSpec, ZeroBudget};

pub use distinguish::check_distinguishing;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PropertyKind {
    Regular,
    Disjunct,
    Strong,
    Classical,
    Distinguish,
}

impl std::str::FromStr for PropertyKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "regular" => PropertyKind::Regular,
            "disjunct" => PropertyKind::Disjunct,
            "strong" => PropertyKind::Strong,
            "classical" => PropertyKind::Classical,
            "distinguish" => PropertyKind::Distinguish,
            other => return Err(crate::Error::invalid(format!("unknown property {other:?}"))),
        })
    }
}

/// The tuple attaining the minimum satisfying-row count.
///
/// For distinguishing checks `critical` is `supp(x)`, `zero` is
/// `supp(x′) \ supp(x)` and `distinguished` is `supp(x) \ supp(x′)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub critical: Vec<usize>,
    pub zero: Vec<usize>,
    pub distinguished: Vec<usize>,
    pub satisfying_rows: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub property: PropertyKind,
    pub requested_e: usize,
    pub holds: bool,
    /// Largest tolerated `e`; `-1` if none. A vacuous property (no admissible
    /// tuple) reports `i64::MAX` and no witness.
    pub max_e: i64,
    pub witness: Option<Witness>,
    /// Number of outer `(S, I)` tuples enumerated.
    pub tuples: u128,
}

impl PropertyReport {
    pub(crate) fn new(
        property: PropertyKind,
        e: usize,
        found: Option<(usize, Witness)>,
        tuples: u128,
    ) -> Self {
        let (max_e, witness) = match found {
            Some((count, w)) => (count as i64 - 1, Some(w)),
            None => (i64::MAX, None),
        };
        PropertyReport {
            property,
            requested_e: e,
            holds: max_e >= e as i64,
            max_e,
            witness,
            tuples,
        }
    }
}

fn run(
    m: &BooleanMatrix,
    kind: PropertyKind,
    e: usize,
    spec: SearchSpec,
) -> Result<PropertyReport> {
    let tuples = spec.tuple_count(m.cols());
    let out = engine::search(m, spec)?;
    Ok(PropertyReport::new(
        kind,
        e,
        out.map(|o| (o.min_count, o.witness)),
        tuples,
    ))
}

/// `(d,e;u,g)`-regularity: every critical set `S` with `u−g ≤ |S| ≤ d` and
/// every disjoint `Z` with `|Z| ≤ |S|+g` leave more than `e` rows with
/// exactly `u−g` ones on `S` and none on `Z`.
///
/// Requires `1 ≤ u ≤ d ≤ n` and `g ≤ u`.
pub fn check_regular(
    m: &BooleanMatrix,
    d: usize,
    e: usize,
    u: usize,
    g: usize,
) -> Result<PropertyReport> {
    ensure(u >= 1, || "u must be at least 1".into())?;
    ensure(g <= u, || format!("gap {g} exceeds u = {u}"))?;
    ensure(u <= d && d <= m.cols(), || {
        format!("need u ≤ d ≤ n, got u={u}, d={d}, n={}", m.cols())
    })?;
    run(
        m,
        PropertyKind::Regular,
        e,
        SearchSpec {
            min_size: u - g,
            max_size: d,
            weight: u - g,
            distinguished: 0,
            zero: ZeroBudget::PlusCritical(g),
        },
    )
}

/// `(d,e;u,g)`-disjunctness: for every `S` with `u ≤ |S| ≤ d`, disjoint `Z`
/// with `|Z| ≤ |S|`, and `I ⊆ S` with `|I| = g+1`, more than `e` rows have
/// exactly `u` ones on `S`, ones on all of `I`, and none on `Z`.
pub fn check_threshold_disjunct(
    m: &BooleanMatrix,
    d: usize,
    e: usize,
    u: usize,
    g: usize,
) -> Result<PropertyReport> {
    ensure(g < u, || format!("need g < u, got g={g}, u={u}"))?;
    ensure(u <= d && d <= m.cols(), || {
        format!("need u ≤ d ≤ n, got u={u}, d={d}, n={}", m.cols())
    })?;
    run(
        m,
        PropertyKind::Disjunct,
        e,
        SearchSpec {
            min_size: u,
            max_size: d,
            weight: u,
            distinguished: g + 1,
            zero: ZeroBudget::PlusCritical(0),
        },
    )
}

/// Strong `(d,e;u)`-disjunctness: for disjoint `C`, `C′` with `|C| = u` and
/// `|C′| = d`, more than `e` rows contain all of `C` and none of `C′`.
pub fn check_strongly_disjunct(
    m: &BooleanMatrix,
    d: usize,
    e: usize,
    u: usize,
) -> Result<PropertyReport> {
    strong(m, d, e, u, PropertyKind::Strong)
}

/// Classical `(d,e)`-disjunctness, the `u = 1` case of strong disjunctness.
pub fn check_classical_disjunct(m: &BooleanMatrix, d: usize, e: usize) -> Result<PropertyReport> {
    strong(m, d, e, 1, PropertyKind::Classical)
}

fn strong(
    m: &BooleanMatrix,
    d: usize,
    e: usize,
    u: usize,
    kind: PropertyKind,
) -> Result<PropertyReport> {
    ensure(u >= 1 && d >= 1, || {
        format!("need u ≥ 1 and d ≥ 1, got u={u}, d={d}")
    })?;
    ensure(d + u <= m.cols(), || {
        format!("need d + u ≤ n, got d={d}, u={u}, n={}", m.cols())
    })?;
    run(
        m,
        kind,
        e,
        SearchSpec {
            min_size: u,
            max_size: u,
            weight: u,
            distinguished: 0,
            zero: ZeroBudget::Fixed(d),
        },
    )
}

/// Largest `e` for which the property holds (`-1` if none). For
/// `Distinguish` the thresholds are `ℓ = u − g` and `u`; `Strong` ignores
/// `g`, and `Classical` ignores both `u` and `g`.
pub fn max_error_tolerance(
    m: &BooleanMatrix,
    d: usize,
    u: usize,
    g: usize,
    kind: PropertyKind,
) -> Result<i64> {
    let report = match kind {
        PropertyKind::Regular => check_regular(m, d, 0, u, g)?,
        PropertyKind::Disjunct => check_threshold_disjunct(m, d, 0, u, g)?,
        PropertyKind::Strong => check_strongly_disjunct(m, d, 0, u)?,
        PropertyKind::Classical => check_classical_disjunct(m, d, 0)?,
        PropertyKind::Distinguish => {
            ensure(g < u, || format!("need g < u, got g={g}, u={u}"))?;
            check_distinguishing(m, d, 0, u - g, u)?
        }
    };
    Ok(report.max_e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: usize) -> BooleanMatrix {
        BooleanMatrix::identity(n).unwrap()
    }

    #[test]
    fn regular_examples() {
        let r = check_regular(&id(3), 1, 0, 1, 0).unwrap();
        assert!(r.holds);
        let r = check_regular(&BooleanMatrix::zeros(3, 3).unwrap(), 1, 0, 1, 0).unwrap();
        assert!(!r.holds);
        assert_eq!(r.max_e, -1);
        assert_eq!(r.witness.unwrap().critical, vec![0]);
    }

    #[test]
    fn disjunct_examples() {
        for n in 2..6 {
            assert!(check_threshold_disjunct(&id(n), 1, 0, 1, 0).unwrap().holds);
        }
        let dup = BooleanMatrix::from_rows(&[[1u8, 1, 0], [0, 0, 1]]).unwrap();
        let r = check_threshold_disjunct(&dup, 2, 0, 1, 0).unwrap();
        assert!(!r.holds);
        let w = r.witness.unwrap();
        assert_eq!(w.satisfying_rows, 0);
    }

    #[test]
    fn strong_and_classical_examples() {
        assert!(check_strongly_disjunct(&id(4), 1, 0, 1).unwrap().holds);
        assert!(!check_strongly_disjunct(&id(4), 1, 0, 2).unwrap().holds);
        assert!(check_classical_disjunct(&id(5), 4, 0).unwrap().holds);
        assert!(
            !check_classical_disjunct(&BooleanMatrix::ones(3, 3).unwrap(), 1, 0)
                .unwrap()
                .holds
        );
        assert!(check_strongly_disjunct(&id(3), 3, 0, 1).is_err());
    }

    #[test]
    fn tolerance_examples() {
        assert_eq!(
            max_error_tolerance(&id(4), 1, 1, 0, PropertyKind::Classical).unwrap(),
            0
        );
        let rep = id(4).repeat_rows(3).unwrap();
        assert_eq!(
            max_error_tolerance(&rep, 1, 1, 0, PropertyKind::Classical).unwrap(),
            2
        );
    }

    #[test]
    fn parameter_errors() {
        let m = id(4);
        assert!(check_regular(&m, 5, 0, 1, 0).is_err());
        assert!(check_regular(&m, 2, 0, 1, 2).is_err());
        assert!(check_threshold_disjunct(&m, 2, 0, 1, 1).is_err());
        assert!(check_threshold_disjunct(&m, 1, 0, 2, 0).is_err());
    }

    #[test]
    fn oversized_instance_is_refused() {
        let m = BooleanMatrix::identity(200).unwrap();
        let err = check_regular(&m, 8, 0, 1, 0).unwrap_err();
        assert!(err.is_too_large());
    }
}
