//! Incidence-structure file parser: no panics on arbitrary input; accepted
//! structures survive an emit/parse round trip (warnings aside, the emitted
//! form is canonical).

#![no_main]

use libfuzzer_sys::fuzz_target;
use metricdim::designs::IncidenceStructure;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok((structure, _warnings)) = IncidenceStructure::parse(text) {
        let (reparsed, warnings) =
            IncidenceStructure::parse(&structure.to_file_string()).expect("emitted form parses");
        assert_eq!(reparsed, structure);
        // Duplicates are preserved verbatim, so they warn again; nothing else may.
        assert!(warnings
            .iter()
            .all(|w| matches!(w, metricdim::designs::LoadWarning::DuplicateBlock { .. })));
    }
});
