#![no_main]

use libfuzzer_sys::fuzz_target;
use threshold_gt::BooleanMatrix;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = BooleanMatrix::from_text(text) {
        let again = BooleanMatrix::from_text(&m.to_text()).expect("serialized matrix parses");
        assert_eq!(m, again);
    }
});
