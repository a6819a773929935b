#![no_main]

use hyperlevel::FixedLocusProfile;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(p) = serde_json::from_str::<FixedLocusProfile>(text) else { return };
    let back = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<FixedLocusProfile>(&back).unwrap(), p);
});
