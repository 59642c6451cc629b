#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::point::{parse_points_csv, write_points_csv};

fuzz_target!(|data: &str| {
    if let Ok(points) = parse_points_csv(data) {
        assert_eq!(parse_points_csv(&write_points_csv(&points)).unwrap(), points);
    }
});
