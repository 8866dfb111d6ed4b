#![no_main]

use libfuzzer_sys::fuzz_target;
use projroots::{Level, SweepTarget};

fuzz_target!(|s: &str| {
    if let Ok(level) = s.parse::<Level>() {
        assert_eq!(level.name().parse::<Level>().unwrap(), level);
    }
    if let Ok(target) = s.parse::<SweepTarget>() {
        assert_eq!(target.name().parse::<SweepTarget>().unwrap(), target);
    }
});
