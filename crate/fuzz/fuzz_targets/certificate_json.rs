#![no_main]

use hyperlevel::{verify_certificate, AdmissibilityCertificate, Budget};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(cert) = AdmissibilityCertificate::from_json(text) else { return };
    let budget = Budget {
        nodes: 1_000,
        field_points: 5_000,
    };
    let _ = verify_certificate(&cert, &budget);
});
