#![no_main]

use hyperlevel::store::parse_line;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rec) = parse_line("fuzz", 1, text) {
        let line = serde_json::to_string(&rec).unwrap();
        assert_eq!(parse_line("fuzz", 1, &line).unwrap(), rec);
        let _ = rec.as_prime_table();
    }
});
