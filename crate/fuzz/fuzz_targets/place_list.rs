#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::PlaceSet;

fuzz_target!(|data: &str| {
    let _ = PlaceSet::parse_list(data);
});
