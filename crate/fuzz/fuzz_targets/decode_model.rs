#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = lamina::model::ModelComplex::from_json(s) {
            let _ = lamina::model::verify_model(&m);
        }
    }
});
