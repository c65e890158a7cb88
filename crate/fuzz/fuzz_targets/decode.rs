#![no_main]

//! Layout: rows, cols, d, lower, upper, e, then matrix bits row-major and
//! the observed bits, one per byte (low bit).

use libfuzzer_sys::fuzz_target;
use threshold_gt::simulate::{decode_brute_force, decode_cover};
use threshold_gt::{BooleanMatrix, ThresholdParams};

fuzz_target!(|data: &[u8]| {
    if data.len() < 6 {
        return;
    }
    let rows = (data[0] % 12) as usize + 1;
    let cols = (data[1] % 10) as usize + 1;
    let d = (data[2] % 4) as usize;
    let lower = (data[3] % 3) as usize;
    let upper = (data[4] % 3) as usize;
    let e = (data[5] % 4) as usize;
    let body = &data[6..];
    if body.len() < rows * cols + rows {
        return;
    }
    let m = BooleanMatrix::from_fn(rows, cols, |i, j| body[i * cols + j] & 1 == 1).unwrap();
    let y: Vec<bool> = body[rows * cols..rows * cols + rows].iter().map(|b| b & 1 == 1).collect();
    if let Ok(params) = ThresholdParams::new(d, e, lower, upper) {
        if let Ok(dec) = decode_brute_force(&m, &y, &params, e) {
            assert_eq!(dec.flips.is_some(), !dec.candidates.is_empty());
        }
    }
    let _ = decode_cover(&m, &y, e);
});
