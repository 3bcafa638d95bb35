#![no_main]
use libfuzzer_sys::fuzz_target;
use tesscensus::tessmap::{validate, CombinatorialMap};

fuzz_target!(|data: &[u8]| {
    if let Ok(m) = CombinatorialMap::read_csv(data, None) {
        assert!(validate(&m).is_ok());
        let back = CombinatorialMap::read_csv(m.to_csv_string().as_bytes(), None).expect("round trip");
        assert_eq!(back.to_records(), m.to_records());
    }
});
