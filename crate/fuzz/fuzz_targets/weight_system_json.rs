#![no_main]

use hyperlevel::{is_admissible, WeightSystem};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Some((&d, rest)) = data.split_first() else { return };
    let Ok(text) = std::str::from_utf8(rest) else { return };
    let Ok(w) = serde_json::from_str::<WeightSystem>(text) else { return };
    if w.p() > 1_000 || w.weights().len() > 12 {
        return;
    }
    let d = 3 + u32::from(d % 8);
    let admissible = is_admissible(d, &w).is_some();
    assert_eq!(is_admissible(d, &w.canonical(d)).is_some(), admissible);
});
