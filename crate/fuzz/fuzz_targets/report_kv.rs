//! Verification-report parsers (key=value and JSON): must never panic, and
//! an accepted key=value record must round-trip through to_kv/parse_kv.

#![no_main]

use libfuzzer_sys::fuzz_target;
use metricdim::verify::VerificationReport;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(report) = VerificationReport::parse_kv(text) {
        let reparsed = VerificationReport::parse_kv(&report.to_kv()).expect("emitted kv parses");
        assert_eq!(reparsed, report);
    }
    let _ = VerificationReport::from_json(text);
});
