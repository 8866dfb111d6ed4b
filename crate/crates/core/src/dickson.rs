//! Dickson polynomials of the first kind with parameter 1, characteristic 2.
//!
//! `D_n` is determined by `D_n(z + 1/z) = z^n + 1/z^n`. For `x` in GF(q) the
//! lift `z` solves `Z^2 + xZ + 1 = 0` and lies in GF(q^2), so `D_n(x)` costs
//! one Artin-Schreier solve and one exponentiation even for `n` near `q/3`.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, Level};

/// `floor((q+1)/3)`, the degree that governs the nine-root case.
pub fn critical_degree(ctx: &FieldCtx) -> u128 {
    (ctx.q() + 1) / 3
}

/// `D_n(x)` for `x` in GF(q).
pub fn dickson_eval(ctx: &FieldCtx, n: u128, x: Elem) -> Result<Elem> {
    if n == 0 {
        return Err(Error::Domain("Dickson degree must be at least 1".into()));
    }
    ctx.require_in(x, Level::Q, "Dickson argument")?;
    if x.is_zero() {
        // z + 1/z = 0 forces z = 1.
        return Ok(Elem::ZERO);
    }
    let zeta = lift(ctx, x)?;
    let zn = ctx.pow(zeta, n);
    Ok(zn + ctx.inv(zn)?)
}

/// A root `z` of `Z^2 + xZ + 1` in GF(q^2), for nonzero `x` in GF(q).
fn lift(ctx: &FieldCtx, x: Elem) -> Result<Elem> {
    // Z = xW turns the equation into W^2 + W = 1/x^2.
    let rhs = ctx.inv(ctx.square(x))?;
    let [w, _] = ctx
        .artin_schreier(rhs, Level::Q2)?
        .ok_or_else(|| Error::Verification(format!("no lift of {x} into GF(q^2)")))?;
    Ok(ctx.mul(x, w))
}

/// `D_n(x)` for any `x` from `D_{k+1} = x D_k + D_{k-1}`, `D_0 = 0`,
/// `D_1 = x`, by powering the 2x2 companion matrix.
pub fn dickson_eval_recurrence(ctx: &FieldCtx, n: u128, x: Elem) -> Elem {
    if n == 0 {
        return Elem::ZERO;
    }
    type Mat = [[Elem; 2]; 2];
    let mul = |a: &Mat, b: &Mat| -> Mat {
        let mut r = [[Elem::ZERO; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                r[i][j] = ctx.mul(a[i][0], b[0][j]) + ctx.mul(a[i][1], b[1][j]);
            }
        }
        r
    };
    let step: Mat = [[x, Elem::ONE], [Elem::ONE, Elem::ZERO]];
    let mut acc: Mat = [[Elem::ONE, Elem::ZERO], [Elem::ZERO, Elem::ONE]];
    let e = n - 1;
    for i in (0..128 - e.leading_zeros()).rev() {
        acc = mul(&acc, &acc);
        if (e >> i) & 1 == 1 {
            acc = mul(&acc, &step);
        }
    }
    // [D_n, D_{n-1}]^T = step^(n-1) [x, 0]^T
    ctx.mul(acc[0][0], x)
}

/// Roots of `D_n` in GF(q) \ GF(2) for `n = floor((q+1)/3)`, as
/// `{z + 1/z : z in GF(q^2), z^n = 1, z != 1}`; requires `3 ∤ m`.
pub fn dickson_root_set(ctx: &FieldCtx) -> Result<Vec<Elem>> {
    if ctx.m().is_multiple_of(3) {
        return Err(Error::Domain(format!("root set needs 3 ∤ m (m = {})", ctx.m())));
    }
    let n = critical_degree(ctx);
    let group = ctx.card().q2_minus_1;
    if !group.is_multiple_of(n) {
        return Err(Error::Verification(format!("n = {n} does not divide q^2-1")));
    }
    let cofactor = group / n;
    let primes = prime_factors(n);
    let has_order_n = |z: Elem| primes.iter().all(|&p| ctx.pow(z, n / p) != Elem::ONE);
    let generator = ctx
        .enumerate(Level::Q2)
        .skip(1)
        .map(|y| ctx.pow(y, cofactor))
        .find(|&z| has_order_n(z))
        .ok_or_else(|| Error::Verification(format!("no element of order {n} in GF(q^2)")))?;

    let mut roots = Vec::new();
    let mut zeta = Elem::ONE;
    for _ in 1..n {
        zeta = ctx.mul(zeta, generator);
        roots.push(zeta + ctx.inv(zeta)?);
    }
    roots.sort();
    roots.dedup();
    for &r in &roots {
        if ctx.is_in_f2(r) || !ctx.is_in(r, Level::Q) {
            return Err(Error::Verification(format!(
                "Dickson root {r} is not in GF(q) \\ GF(2)"
            )));
        }
    }
    Ok(roots)
}

fn prime_factors(mut n: u128) -> Vec<u128> {
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
