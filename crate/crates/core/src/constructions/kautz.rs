use super::check_size;
use crate::bits;
use crate::codes::CodeSpec;
use crate::error::{ensure, Result};
use crate::matrix::BooleanMatrix;

/// Index of `tuple` among `[q]^u` in lexicographic order (first
/// coordinate most significant).
fn tuple_index(tuple: &[u32], q: u64) -> usize {
    tuple
        .iter()
        .fold(0, |acc, &a| acc * q as usize + a as usize)
}

/// `φ(x) ∈ {0,1}^{q^u}`: coordinate `(a₁, …, a_u)` is set iff some
/// `aᵢ = x`.
pub fn indicator(x: u32, q: u64, u: usize) -> Vec<bool> {
    let size = (q as usize).pow(u as u32);
    let mut out = vec![false; size];
    let mut tuple = vec![0u32; u];
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut rest = idx;
        for a in tuple.iter_mut().rev() {
            *a = (rest % q as usize) as u32;
            rest /= q as usize;
        }
        debug_assert_eq!(tuple_index(&tuple, q), idx);
        *slot = tuple.contains(&x);
    }
    out
}

/// Codewords as columns (column `j` encodes message `j`, digits least
/// significant first), each symbol replaced by its indicator. Rows are
/// ordered by codeword position, then tuple.
pub fn construct_kautz_singleton(code: &CodeSpec, u: usize) -> Result<BooleanMatrix> {
    code.validate()?;
    ensure(u >= 1, || "u must be at least 1".into())?;
    let field = code.field()?;
    let n_big = code.codeword_count();
    let block = (code.q as u128).saturating_pow(u as u32);
    let rows = block.saturating_mul(code.length as u128);
    ensure(
        n_big <= usize::MAX as u128 && rows <= usize::MAX as u128,
        || "dimensions overflow".into(),
    )?;
    let (n, rows, block) = (n_big as usize, rows as usize, block as usize);
    check_size(rows, n)?;

    let phis: Vec<Vec<bool>> = (0..code.q as u32)
        .map(|x| indicator(x, code.q, u))
        .collect();
    let words = bits::words_for(n);
    let mut packed = vec![vec![0u64; words]; rows];
    for j in 0..n {
        let c = code.codeword(&field, j as u128);
        for (pos, &sym) in c.iter().enumerate() {
            for (t, &on) in phis[sym as usize].iter().enumerate() {
                if on {
                    bits::set(&mut packed[pos * block + t], j);
                }
            }
        }
    }
    BooleanMatrix::from_packed_rows(n, packed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::reed_solomon;

    #[test]
    fn indicators() {
        assert_eq!(indicator(0, 2, 1), vec![true, false]);
        assert_eq!(indicator(1, 2, 1), vec![false, true]);
        assert_eq!(indicator(0, 2, 2), vec![true, true, true, false]);
        assert_eq!(indicator(2, 3, 2).iter().filter(|&&b| b).count(), 5);
    }

    #[test]
    fn shape_and_weights() {
        let code = reed_solomon(5, 5, 2).unwrap();
        let m = construct_kautz_singleton(&code, 1).unwrap();
        assert_eq!((m.rows(), m.cols()), (25, 25));
        for j in 0..25 {
            assert_eq!(m.column_weight(j), 5);
        }
        let m2 = construct_kautz_singleton(&code, 2).unwrap();
        assert_eq!(m2.rows(), 125);
        // each symbol appears in 2q − 1 ordered pairs
        assert!((0..25).all(|j| m2.column_weight(j) == 5 * 9));
    }
}
