#![no_main]

use libfuzzer_sys::fuzz_target;
use specseq::complex::fixture::{parse_fixture, write_fixture};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(fx) = parse_fixture(text) else { return };
    let named: Vec<(&str, _)> = fx.filtrations.iter().map(|(n, f)| (n.as_str(), f)).collect();
    let again = parse_fixture(&write_fixture(&fx.complex, &named)).expect("written fixtures parse");
    assert_eq!(again, fx);
});
