#![no_main]

use libfuzzer_sys::fuzz_target;
use specseq::algebra::poly::parse_poly;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(e) = parse_poly(text) {
            let _ = e.variables();
        }
    }
});
