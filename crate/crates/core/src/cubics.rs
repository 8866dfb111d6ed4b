//! Cubic machinery: root counts of `X^3 + AX + B`, the closed-form roots of
//! `X^3 + X + a`, the degree-9 system `f = f0 f1 f2`, the map
//! `rho(X) = a/(X^2+1)` and the twist classifier built on it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, Level};
use crate::poly::Poly;

/// The two arbitrary choices the closed forms depend on: which primitive
/// cube root of unity plays omega, and which Artin-Schreier root plays b.
/// Every public result is invariant under both.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct Choices {
    pub swap_omega: bool,
    pub swap_b: bool,
}

impl Choices {
    pub const ALL: [Choices; 4] = [
        Choices {
            swap_omega: false,
            swap_b: false,
        },
        Choices {
            swap_omega: true,
            swap_b: false,
        },
        Choices {
            swap_omega: false,
            swap_b: true,
        },
        Choices {
            swap_omega: true,
            swap_b: true,
        },
    ];

    pub fn omega(self, ctx: &FieldCtx) -> Elem {
        if self.swap_omega {
            ctx.square(ctx.omega())
        } else {
            ctx.omega()
        }
    }
}

/// `c3 X^3 + c2 X^2 + c1 X + c0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cubic {
    pub c3: Elem,
    pub c2: Elem,
    pub c1: Elem,
    pub c0: Elem,
}

impl Cubic {
    pub fn new(c3: Elem, c2: Elem, c1: Elem, c0: Elem) -> Self {
        Self { c3, c2, c1, c0 }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        let mut acc = ctx.mul(self.c3, x) + self.c2;
        acc = ctx.mul(acc, x) + self.c1;
        ctx.mul(acc, x) + self.c0
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(vec![self.c0, self.c1, self.c2, self.c3])
    }
}

/// Outcome of the trace/cube test on `X^3 + AX + B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CubicCount {
    /// Number of distinct roots in the level: 0, 1 or 3.
    pub roots: u8,
    /// Nonzero root of `e^2 + Be + A^3` in the quadratic extension.
    pub witness: Elem,
}

/// Counts the roots of `X^3 + AX + B` (`B != 0`) in a level without
/// enumerating it: one root iff `Tr(A^3/B^2) != Tr(1)`, otherwise three or
/// none according as the witness `e` is a cube in the quadratic extension.
///
/// Only GF(q) and GF(q^3) are accepted, since their quadratic extensions
/// are the levels GF(q^2) and GF(q^6) held by the context.
pub fn cubic_count(ctx: &FieldCtx, a: Elem, b: Elem, level: Level) -> Result<CubicCount> {
    let ext = match level {
        Level::Q => Level::Q2,
        Level::Q3 => Level::Q6,
        _ => {
            return Err(Error::Domain(format!(
                "root counting over {level} needs a quadratic extension outside GF(q^6)"
            )))
        }
    };
    if b.is_zero() {
        return Err(Error::Domain("X^3 + AX + B with B = 0".into()));
    }
    ctx.require_in(a, level, "A")?;
    ctx.require_in(b, level, "B")?;

    let a3 = ctx.cube(a);
    let ratio = ctx.div(a3, ctx.square(b))?;
    // e = B w with w^2 + w = A^3/B^2; the ratio has trace 0 in the extension.
    let [w, w1] = ctx
        .artin_schreier(ratio, ext)?
        .ok_or_else(|| Error::Verification("witness equation unsolvable".into()))?;
    let mut witness = ctx.mul(b, w);
    if witness.is_zero() {
        witness = ctx.mul(b, w1);
    }

    let roots = if ctx.trace_unchecked(ratio, level) != ctx.trace_unchecked(Elem::ONE, level) {
        1
    } else {
        let is_cube = match ext {
            Level::Q2 => ctx.cubic_character(witness)? == 0,
            _ => ctx.is_cube(witness),
        };
        if is_cube {
            3
        } else {
            0
        }
    };
    Ok(CubicCount { roots, witness })
}

/// The roots of `X^3 + X + a` as `{v + 1/v : v^3 = e}` where
/// `e^2 + ae + 1 = 0`. Requires `a != 0` and the roots to lie in GF(q^6),
/// which holds for every `a` in GF(q).
pub fn depressed_cubic_roots(ctx: &FieldCtx, a: Elem) -> Result<[Elem; 3]> {
    if a.is_zero() {
        return Err(Error::Domain("X^3 + X + a needs a != 0".into()));
    }
    let e = quadratic_unit_root(ctx, a)?;
    roots_from_cube(ctx, e).ok_or_else(|| {
        Error::Domain(format!(
            "e = {e} has no cube root in GF(q^6); roots of X^3+X+{a} lie outside"
        ))
    })
}

/// A root of `e^2 + ae + 1` in the whole field (smaller encoding of the
/// two), for nonzero `a`.
pub(crate) fn quadratic_unit_root(ctx: &FieldCtx, a: Elem) -> Result<Elem> {
    // e = aW, W^2 + W = 1/a^2
    let rhs = ctx.inv(ctx.square(a))?;
    let [w, w1] = ctx
        .artin_schreier(rhs, Level::Q6)?
        .ok_or_else(|| Error::Domain(format!("e^2 + {a} e + 1 has no root in GF(q^6)")))?;
    let (e0, e1) = (ctx.mul(a, w), ctx.mul(a, w1));
    Ok(e0.min(e1))
}

/// `{v + 1/v : v^3 = y}` sorted, or `None` when `y` is not a cube.
pub(crate) fn roots_from_cube(ctx: &FieldCtx, y: Elem) -> Option<[Elem; 3]> {
    if y.is_zero() {
        return None;
    }
    let vs = ctx.cube_roots(y);
    if vs.len() != 3 {
        return None;
    }
    let mut out = [Elem::ZERO; 3];
    for (slot, v) in out.iter_mut().zip(vs) {
        *slot = v + ctx.inv(v).ok()?;
    }
    out.sort();
    Some(out)
}

/// `a`, the chosen `b` and omega, `c = (b+omega)/(b+omega^2)`, and the
/// factorization `f = f0 f1 f2` of the degree-9 numerator of `rho^3(X) + X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FSystem {
    pub a: Elem,
    pub b: Elem,
    pub c: Elem,
    pub omega: Elem,
    pub f: Poly,
    pub f0: Cubic,
    pub f1: Cubic,
    pub f2: Cubic,
}

impl FSystem {
    pub fn cubic(&self, i: usize) -> &Cubic {
        match i {
            0 => &self.f0,
            1 => &self.f1,
            _ => &self.f2,
        }
    }
}

/// The `a` in GF(q) \ GF(2) with `Tr(1/a) = Tr(1)`.
pub fn is_admissible(ctx: &FieldCtx, a: Elem) -> bool {
    if ctx.is_in_f2(a) || !ctx.is_in(a, Level::Q) {
        return false;
    }
    let inv = ctx.inv(a).expect("a is nonzero");
    ctx.trace_unchecked(inv, Level::Q) == ctx.trace_unchecked(Elem::ONE, Level::Q)
}

pub fn build_f_system(ctx: &FieldCtx, a: Elem, choices: Choices) -> Result<FSystem> {
    ctx.require_in(a, Level::Q, "a")?;
    if ctx.is_in_f2(a) {
        return Err(Error::Domain(format!("a = {a} lies in GF(2)")));
    }
    let a_inv = ctx.inv(a)?;
    let [b0, b1] = ctx
        .artin_schreier(a_inv + Elem::ONE, Level::Q)?
        .ok_or(Error::TraceCondition)?;
    let b = if choices.swap_b { b1 } else { b0 };
    if ctx.is_in_f4(b) {
        return Err(Error::Verification(format!("b = {b} lies in GF(4)")));
    }
    let omega = choices.omega(ctx);
    let omega2 = ctx.square(omega);
    let c = ctx.div(b + omega, b + omega2)?;

    let sq = |x: Elem| ctx.square(x);
    let mul = |x: Elem, y: Elem| ctx.mul(x, y);
    let b1 = b + Elem::ONE;
    let (a2, b2, b12) = (sq(a), sq(b), sq(b1));
    let f0 = Cubic::new(Elem::ONE, Elem::ZERO, Elem::ONE, a);
    let f1 = Cubic::new(mul(a, b2), Elem::ONE, mul(a, b12), mul(a2, sq(b2)));
    let f2 = Cubic::new(mul(a, b12), Elem::ONE, mul(a, b2), mul(a2, sq(b12)));
    let f = degree_nine_numerator(ctx, a);

    let product = f0.to_poly().mul(ctx, &f1.to_poly()).mul(ctx, &f2.to_poly());
    if product != f {
        return Err(Error::Verification(format!("f0 f1 f2 != f for a = {a}")));
    }
    if !f.is_squarefree(ctx)? {
        return Err(Error::Verification(format!("f has a repeated root for a = {a}")));
    }
    Ok(FSystem {
        a,
        b,
        c,
        omega,
        f,
        f0,
        f1,
        f2,
    })
}

/// `f(X) = (a^2+1)X^9 + aX^8 + (a^4+a^2+1)X + (a^5+a)`.
pub fn degree_nine_numerator(ctx: &FieldCtx, a: Elem) -> Poly {
    let a2 = ctx.square(a);
    let a4 = ctx.square(a2);
    let mut coeffs = vec![Elem::ZERO; 10];
    coeffs[9] = a2 + Elem::ONE;
    coeffs[8] = a;
    coeffs[1] = a4 + a2 + Elem::ONE;
    coeffs[0] = ctx.mul(a4, a) + a;
    Poly::new(coeffs)
}

/// `g(X) = (a^2+1)X^8 + (a^4+a^2+1)`, the denominator of `rho^3(X) + X`.
pub fn degree_eight_denominator(ctx: &FieldCtx, a: Elem) -> Poly {
    let a2 = ctx.square(a);
    let mut coeffs = vec![Elem::ZERO; 9];
    coeffs[8] = a2 + Elem::ONE;
    coeffs[0] = ctx.square(a2) + a2 + Elem::ONE;
    Poly::new(coeffs)
}

/// `rho(x) = a/(x^2+1)`.
pub fn rho_eval(ctx: &FieldCtx, a: Elem, x: Elem) -> Result<Elem> {
    if x == Elem::ONE {
        return Err(Error::Pole);
    }
    ctx.div(a, ctx.square(x) + Elem::ONE)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Twist {
    /// `rho(beta) = beta`
    Fixed,
    /// `rho(beta) = beta^q`
    QTwist,
    /// `rho(beta) = beta^(q^5)`, the `1/q`-th power on GF(q^3)
    InverseQTwist,
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwistReport {
    pub class: Twist,
    /// `f(beta) = 0`
    pub on_f: bool,
    pub in_q3: bool,
}

/// Classifies `beta` by how `rho` acts on it. For roots of `f`: fixed iff
/// `beta` is a root of `X^3+X+a`; q-twist with `beta` in GF(q^3) iff it is a
/// root of `H_2`; inverse-q-twist with `beta` in GF(q^3) iff a root of `H_1`.
pub fn twist_classify(ctx: &FieldCtx, a: Elem, beta: Elem) -> Result<TwistReport> {
    let r = rho_eval(ctx, a, beta)?;
    let class = if r == beta {
        Twist::Fixed
    } else if r == ctx.frobenius_q(beta, 1) {
        Twist::QTwist
    } else if r == ctx.frobenius_q(beta, 5) {
        Twist::InverseQTwist
    } else {
        Twist::None
    };
    let on_f = degree_nine_numerator(ctx, a).eval(ctx, beta).is_zero();
    Ok(TwistReport {
        class,
        on_f,
        in_q3: ctx.is_in(beta, Level::Q3),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reducibility {
    Split3,
    Irreducible,
}

/// `f_i` splits into three distinct linear factors over GF(q) iff
/// `omega^i c` is a cube in GF(q^2); otherwise it is irreducible.
pub fn fi_reducibility(ctx: &FieldCtx, fsys: &FSystem, i: usize) -> Result<Reducibility> {
    if i > 2 {
        return Err(Error::Domain(format!("f_{i} does not exist")));
    }
    let y = ctx.mul(ctx.omega_pow(fsys.omega, i as u32), fsys.c);
    Ok(if ctx.cubic_character_with(y, fsys.omega)? == 0 {
        Reducibility::Split3
    } else {
        Reducibility::Irreducible
    })
}
