#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(h) = lamina::hier::Hierarchy::from_json(s) {
            let _ = lamina::hier::verify_hierarchy(&h);
        }
    }
});
