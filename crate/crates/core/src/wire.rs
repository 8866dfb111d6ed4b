//! Text formats accepted from the outside: field elements and moduli as hex,
//! and lists or ranges of `m`.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, Level, MAX_M};

fn strip_hex(s: &str) -> Result<&str> {
    let t = s.trim();
    let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
    if t.is_empty() {
        return Err(Error::Parse(format!("empty hex value {s:?}")));
    }
    if !t.bytes().all(|b| b.is_ascii_hexdigit()) {
        return Err(Error::Parse(format!("{s:?} is not hexadecimal")));
    }
    Ok(t)
}

fn parse_u128_hex(s: &str) -> Result<u128> {
    let t = strip_hex(s)?;
    let t = t.trim_start_matches('0');
    if t.len() > 32 {
        return Err(Error::Parse(format!("{s:?} does not fit in 128 bits")));
    }
    if t.is_empty() {
        return Ok(0);
    }
    u128::from_str_radix(t, 16).map_err(|e| Error::Parse(format!("{s:?}: {e}")))
}

/// A field element in the context's polynomial basis, written as hex with
/// an optional `0x` prefix; the value must be below `2^(6m)`.
pub fn parse_elem_hex(ctx: &FieldCtx, s: &str) -> Result<Elem> {
    ctx.elem(parse_u128_hex(s)?)
}

/// Either the plain wire format of [`parse_elem_hex`], or `LEVEL:HEX` with
/// `LEVEL` one of `q`, `q2`, `q3`, `q6`: the bits of `HEX` are coordinates
/// over that level's stored basis (`q:2` is the second basis element of
/// GF(q), which is omega when m = 2).
pub fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<Elem> {
    let Some((level, coords)) = s.trim().split_once(':') else {
        return parse_elem_hex(ctx, s);
    };
    let level: Level = level.parse()?;
    let index = parse_u128_hex(coords)?;
    if index >= ctx.subfield_size(level) {
        return Err(Error::Parse(format!(
            "{s:?}: coordinate vector longer than the {} basis elements of {level}",
            level.degree(ctx.m())
        )));
    }
    Ok(ctx.subfield_element(level, index))
}

/// A modulus of degree `6m` as hex, including the leading term.
/// Irreducibility is checked when the context is built.
pub fn parse_modulus_hex(s: &str) -> Result<u128> {
    let v = parse_u128_hex(s)?;
    if v < 2 {
        return Err(Error::Parse(format!("modulus {s:?} has degree 0")));
    }
    Ok(v)
}

/// `"3"`, `"1..6"` (inclusive), `"1..=6"`, or a comma list of those
/// (`"1,3,5..7"`). The result is sorted and free of duplicates; every value
/// lies in `1..=MAX_M`.
pub fn parse_m_range(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if part.is_empty() {
            return Err(Error::Parse(format!("empty item in m list {s:?}")));
        }
        let (lo, hi) = match part.split_once("..") {
            Some((lo, hi)) => (parse_m(lo)?, parse_m(hi.strip_prefix('=').unwrap_or(hi))?),
            None => {
                let m = parse_m(part)?;
                (m, m)
            }
        };
        if lo > hi {
            return Err(Error::Parse(format!("empty m range {part:?}")));
        }
        out.extend(lo..=hi);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn parse_m(s: &str) -> Result<u32> {
    let m: u32 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{s:?} is not a valid m")))?;
    if m == 0 || m > MAX_M {
        return Err(Error::Range(m));
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elem_hex() {
        let ctx = FieldCtx::with_m(1).unwrap();
        assert_eq!(parse_elem_hex(&ctx, "0x3f").unwrap().bits(), 0x3f);
        assert_eq!(parse_elem_hex(&ctx, "2").unwrap().bits(), 2);
        assert_eq!(
            parse_elem_hex(&ctx, "000000000000000000000000000000000001")
                .unwrap()
                .bits(),
            1
        );
        assert!(parse_elem_hex(&ctx, "40").is_err());
        assert!(parse_elem_hex(&ctx, "").is_err());
        assert!(parse_elem_hex(&ctx, "0x").is_err());
        assert!(parse_elem_hex(&ctx, "g1").is_err());
        assert!(parse_elem_hex(&ctx, "-1").is_err());
        assert!(parse_elem_hex(&ctx, "+1").is_err());
        assert!(parse_elem_hex(&ctx, &"f".repeat(33)).is_err());
        let big = FieldCtx::with_m(2).unwrap();
        let e = big.elem(0xabc).unwrap();
        assert_eq!(parse_elem_hex(&big, &e.to_hex()).unwrap(), e);
    }

    #[test]
    fn level_coordinates() {
        let ctx = FieldCtx::with_m(2).unwrap();
        assert_eq!(parse_elem(&ctx, "q:2").unwrap(), ctx.omega());
        assert_eq!(parse_elem(&ctx, "q:1").unwrap(), Elem::ONE);
        assert_eq!(parse_elem(&ctx, "q:0").unwrap(), Elem::ZERO);
        assert!(parse_elem(&ctx, "q:4").is_err());
        assert!(parse_elem(&ctx, "q5:1").is_err());
        assert_eq!(parse_elem(&ctx, "q6:2").unwrap(), ctx.basis(Level::Q6)[1]);
        assert_eq!(parse_elem(&ctx, "0x2").unwrap().bits(), 2);
    }

    #[test]
    fn modulus_hex() {
        assert_eq!(parse_modulus_hex("43").unwrap(), 0x43);
        assert!(parse_modulus_hex("1").is_err());
        assert!(FieldCtx::new(crate::FieldParams {
            m: 1,
            modulus: Some(0x41)
        })
        .is_err());
    }

    #[test]
    fn m_ranges() {
        assert_eq!(parse_m_range("3").unwrap(), vec![3]);
        assert_eq!(parse_m_range("1..6").unwrap(), vec![1, 2, 3, 4, 5, 6]);
        assert_eq!(parse_m_range("1..=3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_m_range("5,1,3,3").unwrap(), vec![1, 3, 5]);
        assert_eq!(parse_m_range("1,4..5").unwrap(), vec![1, 4, 5]);
        assert!(parse_m_range("0").is_err());
        assert!(parse_m_range("22").is_err());
        assert!(parse_m_range("6..1").is_err());
        assert!(parse_m_range("1,,2").is_err());
        assert!(parse_m_range("a..b").is_err());
    }
}
