mod common;

use std::time::Instant;

use threshold_gt::codes::reed_solomon;
use threshold_gt::condensers::CondenserSpec;
use threshold_gt::constructions::*;
use threshold_gt::verify::{check_regular, check_strongly_disjunct};
use threshold_gt::BooleanMatrix;

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Left neighbourhood of right vertex `w`, recomputed from the edge rule.
fn hood(left_bits: u32, right_bits: u32, u: usize, w: usize) -> Vec<usize> {
    (0..1usize << left_bits)
        .filter(|&v| (0..8 * u).any(|j| (8 * u * v + j) % (1 << right_bits) == w))
        .collect()
}

#[test]
fn building_block_column_weights_match_graph_walk() {
    let f = CondenserSpec::random_table(4, 2, 4, 2, 0.01, 9).unwrap();
    for u in [1, 2] {
        let m = construct_building_block(&f, u, 0.5).unwrap();
        let hoods: Vec<Vec<usize>> = (0..4).map(|w| hood(4, 2, u, w)).collect();
        let rows_expected: usize = 4 * hoods.iter().map(|h| binom(h.len(), u)).sum::<usize>();
        assert_eq!(m.rows(), rows_expected);
        assert_eq!(building_block_rows(&f, u).unwrap(), rows_expected as u128);
        for x in 0..16 {
            let mut weight = 0;
            for y in 0..4 {
                let v = f.condense(x, y).unwrap() as usize;
                for h in &hoods {
                    if h.contains(&v) {
                        weight += binom(h.len() - 1, u - 1);
                    }
                }
            }
            // Rows are sets of outputs, so distinct x with equal f(x, y) share them.
            assert_eq!(m.column_weight(x as usize), weight, "u={u} x={x}");
        }
    }
}

#[test]
fn identity_block_is_the_graph() {
    let f = CondenserSpec::identity(4, 2).unwrap();
    let m = construct_building_block(&f, 1, 0.0).unwrap();
    let mut expect = Vec::new();
    for w in 0..4 {
        for v in hood(4, 2, 1, w) {
            expect.push((0..16).map(|x| (x == v) as u8).collect::<Vec<u8>>());
        }
    }
    assert_eq!(m, BooleanMatrix::from_rows(&expect).unwrap());
}

#[test]
fn stacked_identity_family_is_regular() {
    let fam = condenser_family(FamilyKind::Identity, 6, 4, 2, 0.5).unwrap();
    let m = construct_regular_from_condensers(&fam, 4, 2, 0.5).unwrap();
    let r = family_bands(4, 2);
    let expect: u128 = fam
        .iter()
        .enumerate()
        .map(|(i, f)| building_block_rows(f, 2).unwrap() << (r - i))
        .sum();
    assert_eq!(m.rows() as u128, expect);
    assert_eq!(m.cols(), 64);
    let rep = check_regular(&m, 4, 0, 2, 0).unwrap();
    assert!(rep.holds, "{rep:?}");
}

#[test]
fn seeds_are_padded_to_the_longest() {
    let a = CondenserSpec::random_table(5, 1, 5, 2, 0.01, 3).unwrap();
    let b = CondenserSpec::random_table(5, 3, 5, 3, 0.01, 4).unwrap();
    let m = construct_regular_from_condensers(&[a.clone(), b.clone()], 4, 2, 0.5).unwrap();
    let rows_a = building_block_rows(&a, 2).unwrap() << 2;
    let rows_b = building_block_rows(&b, 2).unwrap();
    assert_eq!(m.rows() as u128, rows_a * 2 + rows_b);
    let short = vec![a];
    assert!(construct_regular_from_condensers(&short, 4, 2, 0.5).is_err());
}

#[test]
fn kautz_singleton_rs_5_is_strongly_disjunct() {
    let code = reed_solomon(5, 5, 2).unwrap();
    assert_eq!(code.min_distance, 4);
    let m = construct_kautz_singleton(&code, 1).unwrap();
    for d in 1..5 {
        assert!(check_strongly_disjunct(&m, d, 0, 1).unwrap().holds, "d={d}");
    }
    // Two codewords agree in at most one place, so five can cover a column.
    assert!(!check_strongly_disjunct(&m, 5, 0, 1).unwrap().holds);
}

#[test]
fn kautz_singleton_larger_code_runs_quickly() {
    let code = reed_solomon(7, 7, 2).unwrap();
    let t = Instant::now();
    let m = construct_kautz_singleton(&code, 2).unwrap();
    // d < 7 / (1·2)
    assert!(check_strongly_disjunct(&m, 3, 0, 2).unwrap().holds);
    eprintln!("strong(3,0,2) on 49 columns: {:?}", t.elapsed());
}

#[test]
fn band_weights_within_five_sigma() {
    let p = ProbConstructionParams {
        n: 200,
        m_prime: 1000,
        d: 8,
        u: 1,
        seed: 11,
    };
    let m = construct_probabilistic(&p).unwrap();
    assert_eq!(m.rows(), 3000);
    for band in 0..3 {
        let s = KwiseSampler::new(200, p.band_probability(band + 1), 1).unwrap();
        let q = s.marginal();
        let total: usize = (band * 1000..(band + 1) * 1000)
            .map(|r| m.row_weight(r))
            .sum();
        let mean = 200.0 * q * 1000.0;
        // Bits in a row are only pairwise independent, which still gives the
        // binomial variance.
        let sd = (200.0 * 1000.0 * q * (1.0 - q)).sqrt();
        assert!(
            (total as f64 - mean).abs() < 5.0 * sd,
            "band {band}: {total} vs {mean}"
        );
    }
}

#[test]
fn kwise_triples_exact_over_small_field() {
    // Degree-2 polynomials over F_5, all 125: every triple of positions is
    // uniform, so each pattern count is a product of marginal counts.
    let s = KwiseSampler::with_field(5, 5, 0.4, 2);
    let mut counts = std::collections::HashMap::new();
    for a in 0..5u64 {
        for b in 0..5u64 {
            for c in 0..5u64 {
                let r = s.row_from_coeffs(&[a, b, c]);
                let bit = |i: usize| r[0] >> i & 1;
                for (i, j, k) in [(0, 1, 2), (1, 3, 4), (0, 2, 4)] {
                    *counts.entry((i, j, k, bit(i), bit(j), bit(k))).or_insert(0) += 1;
                }
            }
        }
    }
    for (&(_, _, _, x, y, z), &c) in &counts {
        let ones = (x + y + z) as u32;
        assert_eq!(c, 2u32.pow(ones) * 3u32.pow(3 - ones));
    }
}
