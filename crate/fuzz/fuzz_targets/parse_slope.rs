#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(x) = s.parse::<lamina::farey::Slope>() {
            assert_eq!(x.to_string().parse::<lamina::farey::Slope>().unwrap(), x);
        }
    }
});
