#![no_main]
use libfuzzer_sys::fuzz_target;
use plane_integral::forms::expr::parse_form;

fuzz_target!(|data: &str| {
    if let Ok(f) = parse_form(data) {
        if f.is_zero() {
            return;
        }
        let again = parse_form(&f.to_string()).expect("display output parses");
        assert_eq!(again, f);
    }
});
