#![no_main]
use libfuzzer_sys::fuzz_target;
use tesscensus::tessmap::{validate, CombinatorialMap};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = CombinatorialMap::from_json_str(s, None) {
        assert!(validate(&m).is_ok());
        let back = CombinatorialMap::from_json_str(&m.to_json_string(), None).expect("round trip");
        assert_eq!(back.to_records(), m.to_records());
    }
});
