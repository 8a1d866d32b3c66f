#![no_main]

use dcgevp::io::{format_group, parse_group, parse_group_file};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok((degree, gens)) = parse_group_file(text) {
        let again = parse_group_file(&format_group(degree, &gens)).expect("written group parses");
        assert_eq!(again, (degree, gens));
        if degree <= 8 {
            let _ = parse_group(text, 5040);
        }
    }
});
