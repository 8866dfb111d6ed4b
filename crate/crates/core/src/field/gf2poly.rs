//! Dense GF(2)[x] polynomials of degree < 128 packed into a `u128`.

use super::clmul::Reducer;

/// Degree of a nonzero packed polynomial; `None` for zero.
pub fn degree(p: u128) -> Option<u32> {
    (p != 0).then(|| 127 - p.leading_zeros())
}

/// Remainder of `a` modulo nonzero `b`.
pub fn rem(mut a: u128, b: u128) -> u128 {
    let db = degree(b).expect("division by the zero polynomial");
    while let Some(da) = degree(a) {
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

pub fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = rem(a, b);
        a = b;
        b = r;
    }
    a
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test. Supports degrees 1..=126.
pub fn is_irreducible(f: u128) -> bool {
    let n = match degree(f) {
        Some(n) if (1..=126).contains(&n) => n,
        _ => return false,
    };
    if n == 1 {
        return true;
    }
    if f & 1 == 0 {
        return false;
    }
    let red = Reducer::new(f);
    // x^(2^k) mod f for k = 0..=n
    let x = 2u128;
    let mut powers = Vec::with_capacity(n as usize + 1);
    let mut cur = x;
    powers.push(cur);
    for _ in 0..n {
        cur = red.mul(cur, cur);
        powers.push(cur);
    }
    if powers[n as usize] != x {
        return false;
    }
    prime_factors(n)
        .into_iter()
        .all(|p| gcd(f, powers[(n / p) as usize] ^ x) == 1)
}

/// Smallest integer encoding of an irreducible polynomial of degree `n`.
pub fn least_irreducible(n: u32) -> u128 {
    assert!((1..=126).contains(&n));
    if n == 1 {
        return 0b10;
    }
    let mut cand = (1u128 << n) | 1;
    loop {
        if is_irreducible(cand) {
            return cand;
        }
        cand += 2;
    }
}
