//! Word-level helpers for packed bitsets stored as `[u64]`, bit `i` at
//! word `i / 64`, position `i % 64`.

#[inline]
pub fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

#[inline]
pub fn get(words: &[u64], i: usize) -> bool {
    (words[i >> 6] >> (i & 63)) & 1 == 1
}

#[inline]
pub fn set(words: &mut [u64], i: usize) {
    words[i >> 6] |= 1u64 << (i & 63);
}

#[inline]
pub fn clear(words: &mut [u64], i: usize) {
    words[i >> 6] &= !(1u64 << (i & 63));
}

#[inline]
pub fn count(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

/// |a & !b|
#[inline]
pub fn count_andnot(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & !y).count_ones() as usize)
        .sum()
}

/// |a & b|
#[inline]
pub fn count_and(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Mask with the low `len` bits set, laid out over `words_for(len)` words.
pub fn ones(len: usize) -> Vec<u64> {
    let mut w = vec![u64::MAX; words_for(len)];
    let tail = len & 63;
    if tail != 0 {
        if let Some(last) = w.last_mut() {
            *last = (1u64 << tail) - 1;
        }
    }
    w
}

/// Iterator over the indices of set bits, ascending.
pub fn iter_ones(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut rest = w;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ones_masks_tail() {
        assert_eq!(ones(0), Vec::<u64>::new());
        assert_eq!(ones(3), vec![0b111]);
        assert_eq!(ones(64), vec![u64::MAX]);
        assert_eq!(ones(65), vec![u64::MAX, 1]);
    }

    #[test]
    fn iter_ones_crosses_words() {
        let mut w = vec![0u64; 3];
        for i in [0, 63, 64, 130] {
            set(&mut w, i);
        }
        assert_eq!(iter_ones(&w).collect::<Vec<_>>(), vec![0, 63, 64, 130]);
        clear(&mut w, 63);
        assert!(!get(&w, 63));
        assert_eq!(count(&w), 3);
    }
}
