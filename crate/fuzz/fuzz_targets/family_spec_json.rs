#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::families::FamilySpec;

// Generation itself is bounded by the degree budget, so only validation runs here.
fuzz_target!(|data: &[u8]| {
    if let Ok(spec) = serde_json::from_slice::<FamilySpec>(data) {
        let _ = spec.validate();
    }
});
