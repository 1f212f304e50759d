#![no_main]

use libfuzzer_sys::fuzz_target;
use polygas::profile::Profile;

// Parsing must never panic; successful parses must survive a text round
// trip with identical columns and row counts.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(profile) = Profile::parse(text) {
        let again = Profile::parse(&profile.to_text(&[])).expect("round trip parse");
        assert_eq!(profile.columns, again.columns);
        assert_eq!(profile.rows.len(), again.rows.len());
    }
});
