//! Naive reference implementations used as oracles. They share no code with
//! the library's search beyond `BooleanMatrix::get`.

#![allow(dead_code)]

use rand::Rng;
use threshold_gt::BooleanMatrix;

pub fn subsets(n: usize, min: usize, max: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n)
        .filter(|mask| {
            let c = mask.count_ones() as usize;
            c >= min && c <= max
        })
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

fn subsets_of(items: &[usize], min: usize, max: usize) -> Vec<Vec<usize>> {
    subsets(items.len(), min, max)
        .into_iter()
        .map(|ix| ix.into_iter().map(|i| items[i]).collect())
        .collect()
}

fn weight_on(m: &BooleanMatrix, row: usize, set: &[usize]) -> usize {
    set.iter().filter(|&&c| m.get(row, c)).count()
}

/// Minimum over (S, I, Z) of rows with weight exactly `w` on S, all ones on
/// I, and zero on Z. `None` if there is no admissible triple.
fn min_satisfying(
    m: &BooleanMatrix,
    s_sizes: (usize, usize),
    w: usize,
    i_size: usize,
    z_budget: impl Fn(usize) -> usize,
) -> Option<usize> {
    let n = m.cols();
    let mut best: Option<usize> = None;
    for s in subsets(n, s_sizes.0, s_sizes.1) {
        let rest: Vec<usize> = (0..n).filter(|c| !s.contains(c)).collect();
        let zmax = z_budget(s.len()).min(rest.len());
        for i in subsets_of(&s, i_size, i_size) {
            for z in subsets_of(&rest, 0, zmax) {
                let count = (0..m.rows())
                    .filter(|&r| {
                        weight_on(m, r, &s) == w
                            && i.iter().all(|&c| m.get(r, c))
                            && z.iter().all(|&c| !m.get(r, c))
                    })
                    .count();
                best = Some(best.map_or(count, |b| b.min(count)));
            }
        }
    }
    best
}

fn to_max_e(min: Option<usize>) -> i64 {
    min.map_or(i64::MAX, |c| c as i64 - 1)
}

pub fn regular_max_e(m: &BooleanMatrix, d: usize, u: usize, g: usize) -> i64 {
    to_max_e(min_satisfying(m, (u - g, d), u - g, 0, |s| s + g))
}

pub fn disjunct_max_e(m: &BooleanMatrix, d: usize, u: usize, g: usize) -> i64 {
    to_max_e(min_satisfying(m, (u, d), u, g + 1, |s| s))
}

/// Direct from the definition: |∩_C supp − ∪_{C′} supp| over disjoint C, C′.
pub fn strong_max_e(m: &BooleanMatrix, d: usize, u: usize) -> i64 {
    let n = m.cols();
    let mut best: Option<usize> = None;
    for c in subsets(n, u, u) {
        for c2 in subsets(n, d, d) {
            if c2.iter().any(|x| c.contains(x)) {
                continue;
            }
            let count = (0..m.rows())
                .filter(|&r| c.iter().all(|&j| m.get(r, j)) && c2.iter().all(|&j| !m.get(r, j)))
                .count();
            best = Some(best.map_or(count, |b| b.min(count)));
        }
    }
    to_max_e(best)
}

/// Over explicit pairs of supports.
pub fn distinguishing_max_e(m: &BooleanMatrix, d: usize, lower: usize, upper: usize) -> i64 {
    let n = m.cols();
    let g = upper - lower;
    let all = subsets(n, 0, d);
    let mut best: Option<usize> = None;
    for x in all.iter().filter(|x| x.len() >= upper) {
        for y in &all {
            let x_minus_y = x.iter().filter(|c| !y.contains(c)).count();
            let y_minus_x = y.iter().filter(|c| !x.contains(c)).count();
            if x_minus_y <= g || x.len() < y_minus_x {
                continue;
            }
            let count = (0..m.rows())
                .filter(|&r| weight_on(m, r, x) >= upper && weight_on(m, r, y) < lower)
                .count();
            best = Some(best.map_or(count, |b| b.min(count)));
        }
    }
    to_max_e(best)
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, density: f64) -> BooleanMatrix {
    BooleanMatrix::from_fn(rows, cols, |_, _| rng.gen_bool(density)).unwrap()
}

/// Matrix whose rows are the bits of `code`, row-major.
pub fn matrix_from_code(code: u64, rows: usize, cols: usize) -> BooleanMatrix {
    BooleanMatrix::from_fn(rows, cols, |i, j| code >> (i * cols + j) & 1 == 1).unwrap()
}
