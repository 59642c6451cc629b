#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::Pencil;

fuzz_target!(|data: &[u8]| {
    if let Ok(p) = serde_json::from_slice::<Pencil>(data) {
        let _ = serde_json::to_string(&p).unwrap();
    }
});
