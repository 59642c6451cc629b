#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::Form;

fuzz_target!(|data: &[u8]| {
    if let Ok(f) = serde_json::from_slice::<Form>(data) {
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(serde_json::from_str::<Form>(&text).unwrap(), f);
    }
});
