#![no_main]

use libfuzzer_sys::fuzz_target;
use polygas::config::ConfigFile;

// Parsing must never panic; errors are fine. A successful parse must
// survive a serialization round trip.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(cfg) = ConfigFile::parse(text) {
        // compare serialized forms so admissible non-finite floats (which
        // are not PartialEq-reflexive) do not produce false alarms
        let text = cfg.to_toml();
        let again = ConfigFile::parse(&text).expect("round trip parse");
        assert_eq!(text, again.to_toml());
    }
});
