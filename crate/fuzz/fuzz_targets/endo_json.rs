#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::Endo;

fuzz_target!(|data: &[u8]| {
    if let Ok(phi) = serde_json::from_slice::<Endo>(data) {
        let text = serde_json::to_string(&phi).unwrap();
        assert_eq!(serde_json::from_str::<Endo>(&text).unwrap(), phi);
    }
});
