#![no_main]

use hyperlevel::cli::parse_range;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok((lo, hi)) = parse_range(text) {
        assert!(lo <= hi);
    }
});
