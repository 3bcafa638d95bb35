#![no_main]
use libfuzzer_sys::fuzz_target;
use tesscensus::tessmap::VertexConfiguration;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(c) = s.parse::<VertexConfiguration>() {
        let _ = c.geometry();
        let back: VertexConfiguration = c.to_string().parse().expect("display parses");
        assert_eq!(back, c);
    }
});
