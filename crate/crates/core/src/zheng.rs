//! The scaled family `G_l(X) = X^(2q^l+1) + hX + e` with `h, e` in
//! GF(q) \ GF(2) and `h^3 = e^2 + e + 1`.
//!
//! With `u = sqrt(h)`, `b = 1/sqrt(e)` and `a = e/u^3` one has
//! `u^-3 G_l(uX) = H_l(X)`, so every question about `G_l` reduces to the
//! solver. On top of that: the roots lying on the norm-one circle
//! `μ_(q^2+q+1)`, and for `l ≡ 2` the test for all roots lying in GF(q).

use serde::Serialize;

use crate::cubics::{roots_from_cube, Choices, Cubic};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, Level};
use crate::solver::{solve_with, RootSet, SolveRequest};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ZhengRequest {
    pub ell: u64,
    pub h: Elem,
    pub e: Elem,
}

impl ZhengRequest {
    pub fn new(ell: u64, h: Elem, e: Elem) -> Self {
        Self { ell, h, e }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZhengReport {
    pub u: Elem,
    pub b_scaled: Elem,
    pub a_scaled: Elem,
    /// `j` with `(e+omega)^((q^2-1)/3) = omega^j`.
    pub mu_character: u8,
    /// `j ≡ -l (mod 3)`.
    pub mu_criterion: bool,
    pub selected_cubic: Option<Cubic>,
    /// All roots lie in GF(q).
    pub subfield_flag: Option<bool>,
    /// Which of the three explicit root formulas applies (0, 1 or 2).
    pub formula_branch: Option<u8>,
}

/// `G_l(x)`.
pub fn g_eval(ctx: &FieldCtx, ell: u64, h: Elem, e: Elem, x: Elem) -> Elem {
    let xq = ctx.frobenius_q(x, ell % 6);
    ctx.mul(ctx.square(xq), x) + ctx.mul(h, x) + e
}

/// Checks the hypotheses and computes `u`, `b`, `a` and the μ-criterion.
pub fn zheng_validate(ctx: &FieldCtx, req: &ZhengRequest) -> Result<ZhengReport> {
    zheng_validate_with(ctx, req, Choices::default())
}

fn zheng_validate_with(ctx: &FieldCtx, req: &ZhengRequest, choices: Choices) -> Result<ZhengReport> {
    let ZhengRequest { ell, h, e } = *req;
    let fail = |what: &str| Err(Error::Validation(what.to_string()));
    if !ctx.is_in(h, Level::Q) {
        return fail("h must lie in GF(q)");
    }
    if !ctx.is_in(e, Level::Q) {
        return fail("e must lie in GF(q)");
    }
    if ctx.is_in_f2(h) {
        return fail("h must not lie in GF(2)");
    }
    if ctx.is_in_f2(e) {
        return fail("e must not lie in GF(2)");
    }
    if ctx.cube(h) != ctx.square(e) + e + Elem::ONE {
        return fail("h^3 = e^2 + e + 1 does not hold");
    }
    let u = ctx.sqrt(h);
    let b = ctx.inv(ctx.sqrt(e))?;
    let a = ctx.div(e, ctx.cube(u))?;
    if ctx.is_in_f2(a) || !ctx.is_in(a, Level::Q) {
        return fail("a = e/u^3 must lie in GF(q) \\ GF(2)");
    }
    for (x, name) in [(b, "b"), (e, "e"), (u, "u")] {
        if ctx.is_in_f4(x) {
            return fail(&format!("{name} must not lie in GF(4)"));
        }
    }
    if ctx.square(b) + b != ctx.inv(a)? + Elem::ONE {
        return fail("b^2 + b = 1/a + 1 does not hold");
    }
    let omega = choices.omega(ctx);
    let j = ctx.cubic_character_with(e + omega, omega)?;
    Ok(ZhengReport {
        u,
        b_scaled: b,
        a_scaled: a,
        mu_character: j,
        mu_criterion: (j as u64 + ell).is_multiple_of(3),
        selected_cubic: None,
        subfield_flag: None,
        formula_branch: None,
    })
}

/// Roots of `G_l` in GF(q^3): `u` times the roots of `H_l` at the scaled `a`.
pub fn zheng_solve(ctx: &FieldCtx, req: &ZhengRequest) -> Result<RootSet> {
    zheng_solve_with(ctx, req, Choices::default())
}

pub fn zheng_solve_with(ctx: &FieldCtx, req: &ZhengRequest, choices: Choices) -> Result<RootSet> {
    let rep = zheng_validate_with(ctx, req, choices)?;
    let (base, _) = solve_with(ctx, SolveRequest::new(req.ell, rep.a_scaled), choices)?;
    let roots = base.iter().map(|r| ctx.mul(rep.u, r)).collect();
    let set = RootSet::certified(ctx, roots, Level::Q3)?;
    verify_g_roots(ctx, req, &set)?;
    Ok(set)
}

fn verify_g_roots(ctx: &FieldCtx, req: &ZhengRequest, set: &RootSet) -> Result<()> {
    match set.iter().find(|&x| !g_eval(ctx, req.ell, req.h, req.e, x).is_zero()) {
        Some(x) => Err(Error::Verification(format!("{x} is not a root of G_{}", req.ell))),
        None => Ok(()),
    }
}

/// `X^3 + h^2 X^2 + (e+1)h X + 1`.
pub fn mu_cubic(ctx: &FieldCtx, h: Elem, e: Elem) -> Cubic {
    Cubic::new(Elem::ONE, ctx.square(h), ctx.mul(e + Elem::ONE, h), Elem::ONE)
}

/// `(e+1)X^3 + h^2 X^2 + hX + e^2 + 1`.
pub fn outer_cubic(ctx: &FieldCtx, h: Elem, e: Elem) -> Cubic {
    Cubic::new(e + Elem::ONE, ctx.square(h), h, ctx.square(e) + Elem::ONE)
}

/// `{ (h^2 + e sqrt(h)(v + 1/v)) / d : v^3 = y }`.
fn shifted_roots(ctx: &FieldCtx, rep: &ZhengReport, h: Elem, e: Elem, y: Elem, d: Elem) -> Result<Vec<Elem>> {
    let base =
        roots_from_cube(ctx, y).ok_or_else(|| Error::Verification(format!("{y} has no cube root in GF(q^6)")))?;
    let scale = ctx.mul(e, rep.u);
    base.iter()
        .map(|&s| ctx.div(ctx.square(h) + ctx.mul(scale, s), d))
        .collect()
}

fn scaled_c(ctx: &FieldCtx, b: Elem, omega: Elem) -> Result<Elem> {
    ctx.div(b + omega, b + ctx.square(omega))
}

fn ell_one_or_two(ell: u64) -> Result<()> {
    if ell.is_multiple_of(3) {
        return Err(Error::Domain(format!(
            "the μ criterion is stated for l ≢ 0 (mod 3), got l = {ell}"
        )));
    }
    Ok(())
}

/// Roots of `G_l` in `μ_(q^2+q+1)`: none unless the μ-criterion holds, then
/// `{h^2 + e sqrt(h)(v + 1/v) : v^3 = omega c}`, the roots of
/// `X^3 + h^2 X^2 + (e+1)hX + 1`.
pub fn zheng_mu_roots(ctx: &FieldCtx, req: &ZhengRequest) -> Result<RootSet> {
    zheng_mu_roots_with(ctx, req, Choices::default())
}

/// Omega comes from `choices`; `b` is fixed to `1/sqrt(e)` by the closed
/// form, so `swap_b` only affects the cross-check against [`zheng_solve_with`].
pub fn zheng_mu_roots_with(ctx: &FieldCtx, req: &ZhengRequest, choices: Choices) -> Result<RootSet> {
    ell_one_or_two(req.ell)?;
    let rep = zheng_validate_with(ctx, req, choices)?;
    let set = if rep.mu_criterion {
        let omega = choices.omega(ctx);
        let c = scaled_c(ctx, rep.b_scaled, omega)?;
        let roots = shifted_roots(ctx, &rep, req.h, req.e, ctx.mul(omega, c), Elem::ONE)?;
        let set = RootSet::certified(ctx, roots, Level::Q3)?;
        let cubic = mu_cubic(ctx, req.h, req.e);
        for x in set.iter() {
            if !ctx.mu_membership(x) {
                return Err(Error::Verification(format!("{x} is not in μ_(q^2+q+1)")));
            }
            if !cubic.eval(ctx, x).is_zero() {
                return Err(Error::Verification(format!(
                    "{x} is not a root of X^3+h^2X^2+(e+1)hX+1"
                )));
            }
        }
        if set.len() != 3 {
            return Err(Error::Verification(format!("{} μ-roots instead of 3", set.len())));
        }
        verify_g_roots(ctx, req, &set)?;
        set
    } else {
        RootSet::default()
    };
    let all = zheng_solve_with(ctx, req, choices)?;
    let on_circle: Vec<Elem> = all.iter().filter(|&x| ctx.mu_membership(x)).collect();
    if on_circle != set.as_slice() {
        return Err(Error::Verification(format!(
            "μ-roots {:?} disagree with the μ part of the full root set {:?}",
            set.as_slice(),
            on_circle
        )));
    }
    Ok(set)
}

/// For `l ≡ 2` and `m ≢ 1 (mod 3)`: the three roots, whether they lie in
/// GF(q), the cubic they satisfy when they do not, and which explicit
/// formula produces them.
pub fn zheng_case(ctx: &FieldCtx, req: &ZhengRequest) -> Result<(RootSet, ZhengReport)> {
    zheng_case_with(ctx, req, Choices::default())
}

pub fn zheng_case_with(ctx: &FieldCtx, req: &ZhengRequest, choices: Choices) -> Result<(RootSet, ZhengReport)> {
    if req.ell % 3 != 2 {
        return Err(Error::Domain(format!("needs l ≡ 2 (mod 3), got l = {}", req.ell)));
    }
    if ctx.m() % 3 == 1 {
        return Err(Error::Domain(format!("needs m ≢ 1 (mod 3), got m = {}", ctx.m())));
    }
    let mut rep = zheng_validate_with(ctx, req, choices)?;
    let gamma = zheng_solve_with(ctx, req, choices)?;
    if gamma.len() != 3 {
        return Err(Error::Verification(format!("|Γ| = {} instead of 3", gamma.len())));
    }
    let (h, e) = (req.h, req.e);
    let omega = choices.omega(ctx);
    let flag = ctx.cubic_character_with(Elem::ONE + ctx.mul(omega, e), omega)? == 0;
    let in_fq = gamma.iter().all(|x| ctx.is_in(x, Level::Q));
    if flag != in_fq {
        return Err(Error::Verification(format!(
            "1+ωe cube: {flag}, but roots in GF(q): {in_fq}"
        )));
    }
    if !flag && gamma.iter().any(|x| ctx.is_in(x, Level::Q)) {
        return Err(Error::Verification(
            "Γ meets GF(q) without being contained in it".into(),
        ));
    }
    let char_is_omega = rep.mu_character == 1;
    if !flag {
        let cubic = if char_is_omega {
            mu_cubic(ctx, h, e)
        } else {
            outer_cubic(ctx, h, e)
        };
        if let Some(x) = gamma.iter().find(|&x| !cubic.eval(ctx, x).is_zero()) {
            return Err(Error::Verification(format!("{x} is not a root of the selected cubic")));
        }
        rep.selected_cubic = Some(cubic);
    }
    // The first formula is stated under (e+omega)^((q^2-1)/3) = omega^m.
    let first_case = rep.mu_character as u32 == ctx.m() % 3;
    if first_case != flag {
        return Err(Error::Verification(format!(
            "(e+ω) character {} against ω^m disagrees with the cube test on 1+ωe",
            rep.mu_character
        )));
    }

    let c = scaled_c(ctx, rep.b_scaled, omega)?;
    let (branch, formula) = if flag {
        let base =
            roots_from_cube(ctx, c).ok_or_else(|| Error::Verification(format!("{c} has no cube root in GF(q^6)")))?;
        (0, base.iter().map(|&s| ctx.mul(rep.u, s)).collect())
    } else if char_is_omega {
        (1, shifted_roots(ctx, &rep, h, e, ctx.mul(omega, c), Elem::ONE)?)
    } else {
        let y = ctx.mul(ctx.square(omega), c);
        (2, shifted_roots(ctx, &rep, h, e, y, e + Elem::ONE)?)
    };
    let formula = RootSet::certified(ctx, formula, Level::Q6)?;
    if formula != gamma {
        return Err(Error::Verification(format!(
            "explicit formula {branch} gives {:?}, expected {:?}",
            formula.as_slice(),
            gamma.as_slice()
        )));
    }
    rep.subfield_flag = Some(flag);
    rep.formula_branch = Some(branch);
    Ok((gamma, rep))
}

/// All valid `(h, e)` for the context, ordered by `e`: `h` is any cube root of
/// `e^2 + e + 1` inside GF(q).
pub fn valid_pairs(ctx: &FieldCtx) -> Vec<(Elem, Elem)> {
    let mut out = Vec::new();
    for e in ctx.enumerate(Level::Q).filter(|&e| !ctx.is_in_f2(e)) {
        let target = ctx.square(e) + e + Elem::ONE;
        for h in ctx.cube_roots(target) {
            if ctx.is_in(h, Level::Q) && !ctx.is_in_f2(h) {
                out.push((h, e));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf8_generator(ctx: &FieldCtx) -> Elem {
        ctx.enumerate(Level::Q)
            .find(|&t| (ctx.cube(t) + t + Elem::ONE).is_zero())
            .unwrap()
    }

    #[test]
    fn validation_failures() {
        let c2 = FieldCtx::with_m(2).unwrap();
        let w = c2.omega();
        assert!(matches!(
            zheng_validate(&c2, &ZhengRequest::new(1, Elem::ZERO, w)),
            Err(Error::Validation(_))
        ));
        let c3 = FieldCtx::with_m(3).unwrap();
        let t = gf8_generator(&c3);
        assert!(matches!(
            zheng_validate(&c3, &ZhengRequest::new(1, Elem::ONE, t)),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn gf8_example_is_valid() {
        let ctx = FieldCtx::with_m(3).unwrap();
        let t = gf8_generator(&ctx);
        let s = ctx.square(t) + t + Elem::ONE;
        let h = ctx.pow(s, 5);
        assert_eq!(ctx.cube(h), s);
        let rep = zheng_validate(&ctx, &ZhengRequest::new(2, h, t)).unwrap();
        assert_eq!(ctx.square(rep.u), h);
        let req = ZhengRequest::new(2, h, t);
        let gamma = zheng_solve(&ctx, &req).unwrap();
        assert_eq!(gamma.len(), 3);
        let brute: Vec<Elem> = ctx
            .enumerate(Level::Q3)
            .filter(|&x| g_eval(&ctx, 2, h, t, x).is_zero())
            .collect();
        assert_eq!(gamma.as_slice(), brute.as_slice());
        zheng_case(&ctx, &req).unwrap();
    }

    #[test]
    fn mu_roots_small_fields() {
        for m in 1..=4 {
            let ctx = FieldCtx::with_m(m).unwrap();
            for (h, e) in valid_pairs(&ctx) {
                for ell in 1..=2 {
                    let req = ZhengRequest::new(ell, h, e);
                    let got = zheng_mu_roots(&ctx, &req).unwrap();
                    let brute: Vec<Elem> = ctx
                        .enumerate(Level::Q3)
                        .filter(|&x| ctx.mu_membership(x) && g_eval(&ctx, ell, h, e, x).is_zero())
                        .collect();
                    assert_eq!(got.as_slice(), brute.as_slice());
                    let crit = zheng_validate(&ctx, &req).unwrap().mu_criterion;
                    assert_eq!(crit, !got.is_empty());
                    if !got.is_empty() {
                        let prod = got.iter().fold(Elem::ONE, |p, x| ctx.mul(p, x));
                        assert_eq!(prod, Elem::ONE);
                    }
                }
            }
        }
    }

    #[test]
    fn mu_roots_reject_ell_div3() {
        let ctx = FieldCtx::with_m(3).unwrap();
        let (h, e) = valid_pairs(&ctx)[0];
        assert!(matches!(
            zheng_mu_roots(&ctx, &ZhengRequest::new(3, h, e)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn case_hypotheses_enforced() {
        let ctx = FieldCtx::with_m(7).unwrap();
        let (h, e) = valid_pairs(&ctx)[0];
        assert!(matches!(
            zheng_case(&ctx, &ZhengRequest::new(2, h, e)),
            Err(Error::Domain(_))
        ));
        let c3 = FieldCtx::with_m(3).unwrap();
        let (h, e) = valid_pairs(&c3)[0];
        assert!(matches!(
            zheng_case(&c3, &ZhengRequest::new(1, h, e)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn case_and_choices_m2_m3_m5() {
        for m in [2, 3, 5] {
            let ctx = FieldCtx::with_m(m).unwrap();
            for (h, e) in valid_pairs(&ctx) {
                let req = ZhengRequest::new(2, h, e);
                let (gamma, _) = zheng_case(&ctx, &req).unwrap();
                for ch in Choices::ALL {
                    assert_eq!(zheng_case_with(&ctx, &req, ch).unwrap().0, gamma);
                }
            }
        }
    }
}
