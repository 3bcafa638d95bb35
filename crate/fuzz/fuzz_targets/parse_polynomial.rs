#![no_main]
use libfuzzer_sys::fuzz_target;
use tesscensus::polyrat::Polynomial;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<Polynomial>() {
        let list: Vec<String> = p.coeffs().iter().map(ToString::to_string).collect();
        let back: Polynomial = format!("[{}]", list.join(",")).parse().expect("list parses");
        assert_eq!(back, p);
        let _ = p.to_string();
    }
});
