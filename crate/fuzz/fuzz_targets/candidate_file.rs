//! Candidate-set file parser: must never panic, and any file it accepts must
//! re-emit and re-parse to the same value.

#![no_main]

use libfuzzer_sys::fuzz_target;
use metricdim::verify::CandidateFile;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(file) = CandidateFile::parse(text) {
        let reparsed = CandidateFile::parse(&file.to_file_string()).expect("emitted form parses");
        assert_eq!(reparsed, file);
    }
});
