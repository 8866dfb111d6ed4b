//! Carry-less multiplication and modular reduction over GF(2)[x].
//!
//! Polynomials are packed into integers, bit `i` holding the coefficient of
//! `x^i`. Everything here is sized for moduli of degree at most 126, so a
//! reduced value always fits a `u128` and a raw product fits two.

/// 64x64 -> 128 carry-less product.
#[inline]
pub(crate) fn clmul64(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime just above.
            return unsafe { clmul64_pclmul(a, b) };
        }
    }
    clmul64_soft(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul64_pclmul(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::*;
    let x = _mm_set_epi64x(0, a as i64);
    let y = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(x, y, 0x00);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    (lo as u128) | ((hi as u128) << 64)
}

/// Portable fallback: 4-bit windows over `b`.
pub(crate) fn clmul64_soft(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    let a = a as u128;
    for i in 1..16 {
        table[i] = if i & 1 == 1 {
            table[i ^ 1] ^ a
        } else {
            table[i >> 1] << 1
        };
    }
    let mut r = 0u128;
    for i in (0..16).rev() {
        r = (r << 4) ^ table[((b >> (4 * i)) & 0xf) as usize];
    }
    r
}

/// 128x128 -> 256 carry-less product, returned as `(low, high)`.
#[inline]
pub(crate) fn clmul128(a: u128, b: u128) -> (u128, u128) {
    let (a0, a1) = (a as u64, (a >> 64) as u64);
    let (b0, b1) = (b as u64, (b >> 64) as u64);
    let lo = clmul64(a0, b0);
    let hi = if a1 == 0 || b1 == 0 { 0 } else { clmul64(a1, b1) };
    let mid = clmul64(a0, b1) ^ clmul64(a1, b0);
    (lo ^ (mid << 64), hi ^ (mid >> 64))
}

/// Reduction modulo a fixed polynomial `x^n + tail(x)` with `1 <= n <= 126`.
///
/// The modulus need not be irreducible; the irreducibility test uses this
/// same reducer on candidate polynomials.
#[derive(Clone, Debug)]
pub(crate) struct Reducer {
    degree: u32,
    tail: u128,
    mask: u128,
}

impl Reducer {
    pub(crate) fn new(modulus: u128) -> Self {
        let degree = 127 - modulus.leading_zeros();
        debug_assert!((1..=126).contains(&degree));
        let mask = (1u128 << degree) - 1;
        Self {
            degree,
            tail: modulus & mask,
            mask,
        }
    }

    /// Product of two reduced values.
    #[inline]
    pub(crate) fn mul(&self, x: u128, y: u128) -> u128 {
        if self.degree <= 64 {
            self.reduce_narrow(clmul64(x as u64, y as u64))
        } else {
            let (lo, hi) = clmul128(x, y);
            self.reduce_wide(lo, hi)
        }
    }

    // degree <= 64: every partial quotient fits a u64.
    #[inline]
    fn reduce_narrow(&self, mut p: u128) -> u128 {
        loop {
            let h = p >> self.degree;
            if h == 0 {
                return p;
            }
            p = (p & self.mask) ^ clmul64(h as u64, self.tail as u64);
        }
    }

    fn reduce_wide(&self, mut lo: u128, mut hi: u128) -> u128 {
        let n = self.degree;
        loop {
            let h = if hi == 0 {
                lo >> n
            } else {
                (lo >> n) | (hi << (128 - n))
            };
            if h == 0 {
                return lo;
            }
            let (plo, phi) = clmul128(h, self.tail);
            lo = (lo & self.mask) ^ plo;
            hi = phi;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clmul_naive(a: u64, b: u64) -> u128 {
        let mut r = 0u128;
        for i in 0..64 {
            if (b >> i) & 1 == 1 {
                r ^= (a as u128) << i;
            }
        }
        r
    }

    #[test]
    fn soft_and_dispatch_agree_with_naive() {
        let mut x: u64 = 0x9e37_79b9_7f4a_7c15;
        for _ in 0..500 {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let y = x.rotate_left(17) ^ 0xdead_beef;
            assert_eq!(clmul64_soft(x, y), clmul_naive(x, y));
            assert_eq!(clmul64(x, y), clmul_naive(x, y));
        }
    }

    #[test]
    fn wide_reduction_matches_bitwise() {
        // x^126 + x^21 + 1 style modulus, reduce random products bit by bit.
        let modulus = (1u128 << 126) | (1 << 21) | 1;
        let red = Reducer::new(modulus);
        let mut s: u128 = 0x1234_5678_9abc_def0_0fed_cba9_8765_4321;
        for _ in 0..200 {
            s = s.wrapping_mul(0x2545_f491_4f6c_dd1d).wrapping_add(7);
            let x = s & red.mask;
            let y = s.rotate_left(40) & red.mask;
            let mut acc = 0u128;
            for i in (0..126).rev() {
                acc <<= 1;
                if (acc >> 126) & 1 == 1 {
                    acc ^= modulus;
                }
                if (y >> i) & 1 == 1 {
                    acc ^= x;
                }
            }
            assert_eq!(red.mul(x, y), acc);
        }
    }
}
