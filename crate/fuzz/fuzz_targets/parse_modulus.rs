#![no_main]

use libfuzzer_sys::fuzz_target;
use projroots::wire::parse_modulus_hex;
use projroots::{FieldCtx, FieldParams};

fuzz_target!(|s: &str| {
    let Ok(modulus) = parse_modulus_hex(s) else { return };
    let degree = 127 - modulus.leading_zeros();
    if degree % 6 != 0 || degree > 24 {
        return;
    }
    let m = (degree / 6).max(1);
    if let Ok(ctx) = FieldCtx::new(FieldParams {
        m,
        modulus: Some(modulus),
    }) {
        let w = ctx.omega();
        assert_eq!(ctx.cube(w).bits(), 1);
    }
});
