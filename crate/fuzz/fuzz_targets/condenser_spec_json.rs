#![no_main]

use libfuzzer_sys::fuzz_target;
use threshold_gt::condensers::CondenserSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = CondenserSpec::from_json(text) {
        if let Ok(eval) = spec.evaluator() {
            let _ = eval.condense(0, 0);
            let _ = eval.condense(u64::MAX, u64::MAX);
        }
    }
});
