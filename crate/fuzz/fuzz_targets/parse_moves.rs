#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(m) = lamina::markings::parse_moves(s) {
            let text: Vec<String> = m.iter().map(|x| x.to_string()).collect();
            assert_eq!(lamina::markings::parse_moves(&text.join(" ")).unwrap(), m);
        }
    }
});
