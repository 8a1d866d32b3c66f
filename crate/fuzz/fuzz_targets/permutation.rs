#![no_main]

use dcgevp::io::parse_permutation;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(p) = parse_permutation(text) {
        assert!(p.then(&p.inverse()).is_identity());
        assert_eq!(parse_permutation(&p.to_string()).expect("display parses"), p);
    }
});
