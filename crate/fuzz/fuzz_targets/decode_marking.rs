#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = lamina::markings::Marking::from_json(s) {
            assert_eq!(lamina::markings::Marking::from_json(&m.to_json()).unwrap(), m);
        }
    }
});
