//! Single-subset text form: the first byte picks the ground-set size, the
//! rest is the line to parse. No panics; accepted subsets round-trip.

#![no_main]

use libfuzzer_sys::fuzz_target;
use metricdim::subsets::KSubset;

fuzz_target!(|data: &[u8]| {
    let Some((&n_byte, rest)) = data.split_first() else {
        return;
    };
    let n = n_byte as usize + 1; // 1..=256, the full capacity range
    let Ok(line) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(subset) = KSubset::parse_with_n(n, line) {
        let reparsed = KSubset::parse_with_n(n, &subset.to_string()).expect("canonical form");
        assert_eq!(reparsed, subset);
        if let Ok(rank) = subset.rank_colex() {
            let back = KSubset::unrank_colex(n, subset.k(), rank).expect("rank in range");
            assert_eq!(back, subset);
        }
    }
});
