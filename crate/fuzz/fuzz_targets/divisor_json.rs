#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::FactoredDivisor;

fuzz_target!(|data: &[u8]| {
    if let Ok(d) = serde_json::from_slice::<FactoredDivisor>(data) {
        let _ = d.form();
        let _ = serde_json::to_string(&d).unwrap();
    }
});
