#![no_main]
use libfuzzer_sys::fuzz_target;
use tesscensus::analysis::{fit_recurrence, parse_counts};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(counts) = parse_counts(s) {
        if counts.len() <= 64 {
            let _ = fit_recurrence(&counts);
        }
    }
});
