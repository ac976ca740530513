#![no_main]

use fdalg::format::{parse_bimodule, write_bimodule};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_bimodule(s) {
        let text = write_bimodule(&m);
        assert_eq!(
            write_bimodule(&parse_bimodule(&text).expect("written bimodule parses")),
            text
        );
    }
});
