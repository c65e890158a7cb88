#![no_main]

use libfuzzer_sys::fuzz_target;
use threshold_gt::codes::CodeSpec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(spec) = CodeSpec::from_json(text) {
        let again = CodeSpec::from_json(&spec.to_json()).expect("serialized spec parses");
        assert_eq!(spec, again);
        if let Ok(field) = spec.field() {
            let _ = spec.codeword(&field, 0);
        }
    }
});
