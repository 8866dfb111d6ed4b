#![no_main]

use std::sync::OnceLock;

use libfuzzer_sys::fuzz_target;
use projroots::wire::{parse_elem, parse_elem_hex};
use projroots::FieldCtx;

static CTXS: OnceLock<Vec<FieldCtx>> = OnceLock::new();

fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let ctxs = CTXS.get_or_init(|| (1..=3).map(|m| FieldCtx::with_m(m).unwrap()).collect());
    let ctx = &ctxs[sel as usize % ctxs.len()];
    if let Ok(x) = parse_elem_hex(ctx, s) {
        assert_eq!(parse_elem_hex(ctx, &x.to_hex()).unwrap(), x);
        assert_eq!(parse_elem(ctx, s).unwrap(), x);
    }
    if let Ok(x) = parse_elem(ctx, s) {
        assert_eq!(ctx.elem(x.bits()).unwrap(), x);
    }
});
