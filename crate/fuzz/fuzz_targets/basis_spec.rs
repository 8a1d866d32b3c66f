#![no_main]

use dcgevp::io::{load_basis, parse_basis_spec, BasisSpec};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(spec) = parse_basis_spec(text) {
        // File-backed specs would touch the filesystem.
        if matches!(spec, BasisSpec::Standard | BasisSpec::C6Example | BasisSpec::Chirp(_)) {
            let _ = load_basis(&spec, 6);
        }
    }
});
