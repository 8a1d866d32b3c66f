#![no_main]

use dcgevp::io::parse_manifest;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|text: &str| {
    if let Ok(entries) = parse_manifest(text) {
        assert!(entries
            .iter()
            .all(|(label, path)| !label.is_empty() && !path.is_empty()));
    }
});
