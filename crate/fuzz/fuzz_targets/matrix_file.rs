#![no_main]

use dcgevp::io::{format_matrix, parse_matrix};
use dcgevp::HermitianMatrix;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(m) = parse_matrix(text) {
        let again = parse_matrix(&format_matrix(&m)).expect("written matrix parses");
        assert_eq!(again.as_slice(), m.as_slice());
        let _ = HermitianMatrix::new(m);
    }
});
