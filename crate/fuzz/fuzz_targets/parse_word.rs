#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(w) = lamina::surface::MappingClassWord::parse(s) {
            assert_eq!(lamina::surface::MappingClassWord::parse(&w.to_string()).unwrap(), w);
        }
    }
});
