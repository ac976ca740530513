#![no_main]

use fdalg::format::{parse_algebra, write_algebra};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(a) = parse_algebra(s) {
        // anything accepted must survive a write/parse cycle unchanged
        let text = write_algebra(&a);
        let b = parse_algebra(&text).expect("written algebra parses");
        assert_eq!(a, b);
        assert_eq!(write_algebra(&b), text);
    }
});
