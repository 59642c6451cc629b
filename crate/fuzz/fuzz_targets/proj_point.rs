#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::ProjPoint;

fuzz_target!(|data: &str| {
    if let Ok(p) = data.parse::<ProjPoint>() {
        assert_eq!(p.to_string().parse::<ProjPoint>().unwrap(), p);
    }
});
