#![no_main]

use hyperlevel::{matrix_order, SquareIntegerMatrix};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(a) = SquareIntegerMatrix::from_json(text) else { return };
    assert_eq!(SquareIntegerMatrix::from_json(&a.to_json()).unwrap(), a);
    if a.dim() <= 6 && hyperlevel::torsion::max_entry(&a) < 1000.into() {
        if let Some(k) = matrix_order(&a) {
            assert!(a.pow(k).is_identity());
        }
    }
});
