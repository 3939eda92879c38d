#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(c) = s.parse::<lamina::surface::NormalCurve>() {
            // printed curves parse back to themselves
            assert_eq!(c.to_string().parse::<lamina::surface::NormalCurve>().unwrap(), c);
        }
    }
});
