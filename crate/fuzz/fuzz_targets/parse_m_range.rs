#![no_main]

use libfuzzer_sys::fuzz_target;
use projroots::field::MAX_M;
use projroots::wire::parse_m_range;

fuzz_target!(|s: &str| {
    if let Ok(ms) = parse_m_range(s) {
        assert!(!ms.is_empty());
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        assert!(ms.iter().all(|&m| (1..=MAX_M).contains(&m)));
    }
});
