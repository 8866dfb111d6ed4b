//! Roots in GF(q^3) of `H_l(X) = X^(2q^l+1) + X + a` for `a` in GF(q).
//!
//! On GF(q^3) the map `x -> x^(q^l)` depends only on `l mod 3`. The dispatch
//! tries, in order: `a = 0`; `l ≡ 0 (mod 3)`; `a = 1`; the trace mismatch
//! `Tr(1/a) != Tr(1)` with its single root; and finally the general case,
//! where the roots are one or all of three explicit sets `Λ0, Λ1, Λ2`.

use serde::Serialize;

use crate::cubics::{self, build_f_system, roots_from_cube, Choices, FSystem};
use crate::dickson::{critical_degree, dickson_eval};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, Level};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SolveRequest {
    pub ell: u64,
    pub a: Elem,
}

impl SolveRequest {
    pub fn new(ell: u64, a: Elem) -> Self {
        Self { ell, a }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    AZero,
    EllDiv3,
    AOne,
    TraceMismatch,
    ThmRoots,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::AZero => "A_ZERO",
            Branch::EllDiv3 => "ELL_DIV3",
            Branch::AOne => "A_ONE",
            Branch::TraceMismatch => "TRACE_MISMATCH",
            Branch::ThmRoots => "THM_ROOTS",
        }
    }
}

/// Which candidate set the dispatch returned.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Selected {
    #[serde(rename = "Λ0")]
    Lambda0,
    #[serde(rename = "Λ1")]
    Lambda1,
    #[serde(rename = "Λ2")]
    Lambda2,
    #[serde(rename = "Λ")]
    LambdaAll,
    #[serde(rename = "∅")]
    Empty,
    #[serde(rename = "explicit-cubic")]
    ExplicitCubic,
    #[serde(rename = "pair01")]
    Pair01,
    #[serde(rename = "singleton")]
    Singleton,
}

impl Selected {
    fn lambda(k: usize) -> Self {
        match k {
            0 => Selected::Lambda0,
            1 => Selected::Lambda1,
            _ => Selected::Lambda2,
        }
    }
}

/// How a request was dispatched. Fields not used by the branch stay `None`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseReport {
    pub branch: Branch,
    pub m_mod3: u32,
    pub ell_mod3: u32,
    pub b: Option<Elem>,
    pub c: Option<Elem>,
    /// `j` with `c^((q^2-1)/3) = omega^j`.
    pub cubic_char_c: Option<u8>,
    /// Index of the selected candidate set in the general case.
    pub k: Option<u8>,
    /// `floor((q+1)/3)`, when the nine-or-none decision is in play.
    pub n: Option<u128>,
    pub dickson_value: Option<Elem>,
    /// Exponent `n` of the single root `e^n + e^-n` under a trace mismatch.
    pub root_exponent: Option<u128>,
    pub selected: Selected,
}

impl CaseReport {
    fn new(ctx: &FieldCtx, ell: u64, branch: Branch, selected: Selected) -> Self {
        Self {
            branch,
            m_mod3: ctx.m() % 3,
            ell_mod3: (ell % 3) as u32,
            b: None,
            c: None,
            cubic_char_c: None,
            k: None,
            n: None,
            dickson_value: None,
            root_exponent: None,
            selected,
        }
    }
}

/// Roots sorted by encoding; every member is certified to lie in GF(q^3).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct RootSet {
    roots: Vec<Elem>,
}

impl RootSet {
    /// Sorts, deduplicates and checks membership in `level`.
    pub fn certified(ctx: &FieldCtx, mut roots: Vec<Elem>, level: Level) -> Result<Self> {
        roots.sort();
        roots.dedup();
        if let Some(&r) = roots.iter().find(|&&r| !ctx.is_in(r, level)) {
            return Err(Error::Verification(format!("root {r} is not in {level}")));
        }
        Ok(Self { roots })
    }

    pub(crate) fn from_sorted(roots: Vec<Elem>) -> Self {
        debug_assert!(roots.windows(2).all(|w| w[0] < w[1]));
        Self { roots }
    }

    pub fn as_slice(&self) -> &[Elem] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.roots.binary_search(&x).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.roots.iter().copied()
    }

    pub fn into_vec(self) -> Vec<Elem> {
        self.roots
    }
}

/// `x^(2q^l+1) + x + a`.
pub fn h_eval(ctx: &FieldCtx, ell: u64, a: Elem, x: Elem) -> Elem {
    let xq = ctx.frobenius_q(x, ell % 6);
    ctx.mul(ctx.square(xq), x) + x + a
}

/// The three candidate sets of the general case together with the f-system
/// they were built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LambdaSets {
    pub fsys: FSystem,
    pub sets: [RootSet; 3],
}

impl LambdaSets {
    pub fn union(&self) -> RootSet {
        let mut all: Vec<Elem> = self.sets.iter().flat_map(|s| s.iter()).collect();
        all.sort();
        RootSet::from_sorted(all)
    }
}

/// `Λ0 = {v + 1/v : v^3 = c}`, `Λ1 = {(1/a + v + 1/v)/b^2 : v^3 = ωc}`,
/// `Λ2 = {(1/a + v + 1/v)/(b^2+1) : v^3 = ω^2 c}`; `Λi` is the root set of `f_i`.
pub fn lambda_sets(ctx: &FieldCtx, a: Elem) -> Result<LambdaSets> {
    lambda_sets_with(ctx, a, Choices::default())
}

pub fn lambda_sets_with(ctx: &FieldCtx, a: Elem, choices: Choices) -> Result<LambdaSets> {
    let fsys = build_f_system(ctx, a, choices)?;
    let a_inv = ctx.inv(a)?;
    let b2 = ctx.square(fsys.b);
    let denominators = [None, Some(b2), Some(b2 + Elem::ONE)];
    let mut sets: [RootSet; 3] = Default::default();
    for (i, denom) in denominators.into_iter().enumerate() {
        let y = ctx.mul(ctx.omega_pow(fsys.omega, i as u32), fsys.c);
        let base =
            roots_from_cube(ctx, y).ok_or_else(|| Error::Verification(format!("{y} has no cube root in GF(q^6)")))?;
        let mut set = Vec::with_capacity(3);
        for s in base {
            let r = match denom {
                None => s,
                Some(d) => ctx.div(a_inv + s, d)?,
            };
            if !fsys.cubic(i).eval(ctx, r).is_zero() {
                return Err(Error::Verification(format!("Λ{i} member {r} is not a root of f{i}")));
            }
            set.push(r);
        }
        sets[i] = RootSet::certified(ctx, set, Level::Q6)?;
        if sets[i].len() != 3 {
            return Err(Error::Verification(format!("Λ{i} has {} elements", sets[i].len())));
        }
    }
    let out = LambdaSets { fsys, sets };
    if out.union().len() != 9 {
        return Err(Error::Verification(format!("Λ sets for a = {a} overlap")));
    }
    Ok(out)
}

pub fn solve(ctx: &FieldCtx, req: SolveRequest) -> Result<(RootSet, CaseReport)> {
    solve_with(ctx, req, Choices::default())
}

/// [`solve`] with explicit omega and b choices; the root set does not depend
/// on them, the report's `b`, `c` and labels may.
pub fn solve_with(ctx: &FieldCtx, req: SolveRequest, choices: Choices) -> Result<(RootSet, CaseReport)> {
    let SolveRequest { ell, a } = req;
    ctx.require_in(a, Level::Q, "a")?;
    let (roots, report) = dispatch(ctx, ell, a, choices)?;
    let set = RootSet::certified(ctx, roots, Level::Q3)?;
    if let Some(r) = set.iter().find(|&r| !h_eval(ctx, ell, a, r).is_zero()) {
        return Err(Error::Verification(format!(
            "{} produced {r}, which is not a root of H_{ell} for a = {a}",
            report.branch.name()
        )));
    }
    Ok((set, report))
}

fn trace_matches(ctx: &FieldCtx, a: Elem) -> Result<bool> {
    let inv = ctx.inv(a)?;
    Ok(ctx.abs_trace(inv, Level::Q)? == ctx.abs_trace(Elem::ONE, Level::Q)?)
}

fn dispatch(ctx: &FieldCtx, ell: u64, a: Elem, choices: Choices) -> Result<(Vec<Elem>, CaseReport)> {
    let l3 = (ell % 3) as u32;
    let m3 = ctx.m() % 3;
    if a.is_zero() {
        let rep = CaseReport::new(ctx, ell, Branch::AZero, Selected::Pair01);
        return Ok((vec![Elem::ZERO, Elem::ONE], rep));
    }
    let matches = trace_matches(ctx, a)?;
    if l3 == 0 && matches {
        let roots = cubics::depressed_cubic_roots(ctx, a)?;
        let rep = CaseReport::new(ctx, ell, Branch::EllDiv3, Selected::ExplicitCubic);
        return Ok((roots.to_vec(), rep));
    }
    if a == Elem::ONE {
        // 3 | m(l - m)
        let three_roots = m3 == 0 || l3 == m3;
        let (roots, selected) = if !three_roots {
            (Vec::new(), Selected::Empty)
        } else {
            // X^3 + X + 1 when 3 | m, else X^3 + X^2 + 1 (the reciprocals).
            let base = cubics::depressed_cubic_roots(ctx, Elem::ONE)?;
            let roots = if m3 == 0 {
                base.to_vec()
            } else {
                base.iter().map(|&r| ctx.inv(r)).collect::<Result<_>>()?
            };
            (roots, Selected::ExplicitCubic)
        };
        return Ok((roots, CaseReport::new(ctx, ell, Branch::AOne, selected)));
    }
    if !matches {
        let e = cubics::quadratic_unit_root(ctx, a)?;
        let q = ctx.q();
        let n = if ctx.m() % 2 == 1 {
            (2 * q - 1) / 3
        } else {
            q.div_ceil(3)
        };
        let en = ctx.pow(e, n);
        let mut rep = CaseReport::new(ctx, ell, Branch::TraceMismatch, Selected::Singleton);
        rep.root_exponent = Some(n);
        return Ok((vec![en + ctx.inv(en)?], rep));
    }

    let lam = lambda_sets_with(ctx, a, choices)?;
    let omega = lam.fsys.omega;
    let j = ctx.cubic_character_with(lam.fsys.c, omega)?;
    let mut rep = CaseReport::new(ctx, ell, Branch::ThmRoots, Selected::Empty);
    rep.b = Some(lam.fsys.b);
    rep.c = Some(lam.fsys.c);
    rep.cubic_char_c = Some(j);

    let pick = |k: usize| lam.sets[k].as_slice().to_vec();
    let roots = if m3 == 0 {
        // j = -k l (mod 3), and l^-1 = l (mod 3)
        let k = ((3 - (j as u32 * l3) % 3) % 3) as usize;
        rep.k = Some(k as u8);
        rep.selected = Selected::lambda(k);
        pick(k)
    } else {
        let mut cube_index = None;
        for k in 0..3u32 {
            let y = ctx.mul(ctx.omega_pow(omega, k), lam.fsys.c);
            if ctx.cubic_character_with(y, omega)? == 0 {
                cube_index = Some(k as usize);
                break;
            }
        }
        let k = cube_index.ok_or_else(|| Error::Verification("no ω^k c is a cube in GF(q^2)".into()))?;
        rep.k = Some(k as u8);
        if l3 == m3 {
            let idx = (3 - k) % 3;
            rep.selected = Selected::lambda(idx);
            pick(idx)
        } else {
            let n = critical_degree(ctx);
            rep.n = Some(n);
            rep.dickson_value = Some(dickson_eval(ctx, n, a)?);
            if k == 0 {
                rep.selected = Selected::LambdaAll;
                lam.union().into_vec()
            } else {
                Vec::new()
            }
        }
    };
    Ok((roots, rep))
}

/// `|Γ_l|` decided without constructing roots; in the nine-or-none case
/// the decision is `D_n(a) = 0` with `n = floor((q+1)/3)`.
pub fn count(ctx: &FieldCtx, req: SolveRequest) -> Result<usize> {
    count_with_branch(ctx, req).map(|(n, _)| n)
}

pub fn count_with_branch(ctx: &FieldCtx, req: SolveRequest) -> Result<(usize, Branch)> {
    let SolveRequest { ell, a } = req;
    ctx.require_in(a, Level::Q, "a")?;
    let l3 = (ell % 3) as u32;
    let m3 = ctx.m() % 3;
    if a.is_zero() {
        return Ok((2, Branch::AZero));
    }
    let matches = trace_matches(ctx, a)?;
    if l3 == 0 && matches {
        return Ok((3, Branch::EllDiv3));
    }
    if a == Elem::ONE {
        let n = if m3 == 0 || l3 == m3 { 3 } else { 0 };
        return Ok((n, Branch::AOne));
    }
    if !matches {
        return Ok((1, Branch::TraceMismatch));
    }
    if !(l3 + m3).is_multiple_of(3) {
        return Ok((3, Branch::ThmRoots));
    }
    let d = dickson_eval(ctx, critical_degree(ctx), a)?;
    Ok((if d.is_zero() { 9 } else { 0 }, Branch::ThmRoots))
}

/// Admissible values of `|Γ_l|` over all nonzero `a` in GF(q^3).
pub fn count_class(ctx: &FieldCtx, ell: u64) -> Result<Vec<usize>> {
    if ell.is_multiple_of(3) {
        return Err(Error::Domain(format!("count class needs 3 ∤ l (l = {ell})")));
    }
    if (ctx.m() as u64 + ell).is_multiple_of(3) {
        Ok(vec![0, 1, 2, 9])
    } else {
        Ok(vec![0, 1, 3])
    }
}
