//! Brute-force ground truth and the exhaustive sweeps that hold every closed
//! form against it.
//!
//! A sweep fixes a target statement and a list of `m`, rebuilds the field
//! for each `m`, and walks the statement's quantifiers in a fixed order.
//! Cases run on a private rayon pool and are collected in input order, so a
//! summary does not depend on the worker count.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cubics::{self, build_f_system, fi_reducibility, is_admissible, rho_eval, Choices, Reducibility};
use crate::dickson::{critical_degree, dickson_eval, dickson_eval_recurrence, dickson_root_set};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx, Level};
use crate::solver::{
    count_class, count_with_branch, h_eval, lambda_sets_with, solve, solve_with, Branch, RootSet, SolveRequest,
};
use crate::zheng::{
    g_eval, mu_cubic, valid_pairs, zheng_case_with, zheng_mu_roots, zheng_mu_roots_with, zheng_solve, zheng_validate,
    ZhengRequest,
};

/// Zeros of `H_l` over GF(q^3), `a` arbitrary.
pub fn brute_roots_h(ctx: &FieldCtx, ell: u64, a: Elem) -> RootSet {
    let roots = ctx
        .enumerate(Level::Q3)
        .filter(|&x| h_eval(ctx, ell, a, x).is_zero())
        .collect();
    RootSet::certified(ctx, roots, Level::Q3).expect("enumeration stays in GF(q^3)")
}

/// Same as [`brute_roots_h`] with `x^(2q^l+1)` computed by plain
/// exponentiation instead of the Frobenius tables. `l` must keep the
/// exponent below `2^127`.
pub fn brute_roots_h_pow(ctx: &FieldCtx, ell: u64, a: Elem) -> RootSet {
    let exp = 2 * ctx.q().pow(ell as u32) + 1;
    let roots = ctx
        .enumerate(Level::Q3)
        .filter(|&x| (ctx.pow(x, exp) + x + a).is_zero())
        .collect();
    RootSet::certified(ctx, roots, Level::Q3).expect("enumeration stays in GF(q^3)")
}

/// Zeros of `G_l = X^(2q^l+1) + hX + e` over GF(q^3), optionally only those
/// in `μ_(q^2+q+1)`.
pub fn brute_roots_g(ctx: &FieldCtx, ell: u64, h: Elem, e: Elem, mu_only: bool) -> RootSet {
    let roots = ctx
        .enumerate(Level::Q3)
        .filter(|&x| g_eval(ctx, ell, h, e, x).is_zero())
        .filter(|&x| !mu_only || ctx.mu_membership(x))
        .collect();
    RootSet::certified(ctx, roots, Level::Q3).expect("enumeration stays in GF(q^3)")
}

/// `|{x in GF(q^3) : x^(2q^l+1) + x = a}|` for every `a` in one pass;
/// values with no preimage are absent.
pub fn fiber_counts(ctx: &FieldCtx, ell: u64) -> BTreeMap<Elem, usize> {
    let size = ctx.subfield_size(Level::Q3);
    let mut values: Vec<Elem> = (0..size)
        .into_par_iter()
        .map(|i| h_eval(ctx, ell, Elem::ZERO, ctx.subfield_element(Level::Q3, i)))
        .collect();
    values.par_sort_unstable();
    let mut out = BTreeMap::new();
    for chunk in values.chunk_by(|x, y| x == y) {
        out.insert(chunk[0], chunk.len());
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SweepTarget {
    /// Count law for admissible `a`, with the Dickson and cubic-character criteria.
    Main,
    /// Size and location of the Dickson root set.
    Supplement,
    /// Solver against the oracle for every `a` in GF(q) and `l` in {1,2,3}.
    Roots,
    /// The `a = 1` case.
    A1,
    /// The single root under a trace mismatch.
    Main2,
    /// `l ≡ 0 (mod 3)` with matching traces.
    Cor3,
    /// Root counts over all nonzero `a` in GF(q^3) lie in the count class.
    Ni,
    /// `f = f0 f1 f2`, squarefreeness, and which `f_i` split.
    Factorization,
    /// Three roots of `G_2` when `m ≢ 1 (mod 3)`.
    Zheng,
    /// Roots of `G_l` on the norm-one circle.
    Zheng2,
    /// Subfield test, cubic selection and explicit formula for `G_2`.
    Zhengprop,
    /// The rho-twist identities of the general-case roots.
    Twist,
    /// Invariance under the omega and b choices.
    Choice,
}

impl SweepTarget {
    pub const ALL: [SweepTarget; 13] = [
        SweepTarget::Main,
        SweepTarget::Supplement,
        SweepTarget::Roots,
        SweepTarget::A1,
        SweepTarget::Main2,
        SweepTarget::Cor3,
        SweepTarget::Ni,
        SweepTarget::Factorization,
        SweepTarget::Zheng,
        SweepTarget::Zheng2,
        SweepTarget::Zhengprop,
        SweepTarget::Twist,
        SweepTarget::Choice,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepTarget::Main => "MAIN",
            SweepTarget::Supplement => "SUPPLEMENT",
            SweepTarget::Roots => "ROOTS",
            SweepTarget::A1 => "A1",
            SweepTarget::Main2 => "MAIN2",
            SweepTarget::Cor3 => "COR3",
            SweepTarget::Ni => "NI",
            SweepTarget::Factorization => "FACTORIZATION",
            SweepTarget::Zheng => "ZHENG",
            SweepTarget::Zheng2 => "ZHENG2",
            SweepTarget::Zhengprop => "ZHENGPROP",
            SweepTarget::Twist => "TWIST",
            SweepTarget::Choice => "CHOICE",
        }
    }

    /// Largest `m` accepted by default and with the override.
    pub fn max_m(self) -> (u32, u32) {
        match self {
            SweepTarget::Main
            | SweepTarget::Supplement
            | SweepTarget::Factorization
            | SweepTarget::Zheng
            | SweepTarget::Choice => (16, 16),
            _ => (6, 8),
        }
    }
}

impl fmt::Display for SweepTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        SweepTarget::ALL
            .into_iter()
            .find(|t| t.name() == up)
            .ok_or_else(|| Error::Parse(format!("unknown sweep target {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSpec {
    pub target: SweepTarget,
    pub m_values: Vec<u32>,
    /// Worker threads; 0 picks the rayon default.
    pub parallelism: usize,
    /// Raise the per-target `m` bound to its override value.
    pub allow_large: bool,
    /// Keep going after the first `m` with a failure.
    pub continue_on_failure: bool,
}

impl SweepSpec {
    pub fn new(target: SweepTarget, m_values: Vec<u32>) -> Self {
        Self {
            target,
            m_values,
            parallelism: 0,
            allow_large: false,
            continue_on_failure: false,
        }
    }

    pub fn check_feasible(&self) -> Result<()> {
        let (default, large) = self.target.max_m();
        let cap = if self.allow_large { large } else { default };
        if self.m_values.is_empty() {
            return Err(Error::Feasibility("empty m range".into()));
        }
        if let Some(&m) = self.m_values.iter().find(|&&m| m == 0 || m > cap) {
            return Err(Error::Feasibility(format!(
                "m = {m} is outside 1..={cap} for {} (override bound {large})",
                self.target
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub m: u32,
    pub input: Value,
    pub detail: String,
    pub report: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PerM {
    pub m: u32,
    pub cases: u64,
    pub failures: u64,
    /// Outside the statement's hypotheses; no cases run.
    pub skipped: bool,
    pub stats: BTreeMap<String, u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub elapsed_ms: u64,
    pub per_m_ms: BTreeMap<u32, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub target: SweepTarget,
    pub m_values: Vec<u32>,
    pub cases: u64,
    pub passed: u64,
    pub failures: u64,
    pub per_m: Vec<PerM>,
    pub first_counterexample: Option<Counterexample>,
    pub stopped_early: bool,
    pub timings: Timings,
}

impl SweepSummary {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    /// The summary with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Self {
        Self {
            timings: Timings::default(),
            ..self.clone()
        }
    }
}

struct Failure {
    detail: String,
    report: Option<Value>,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            detail: format!("{} error: {e}", e.kind()),
            report: None,
        }
    }
}

type Tags = Vec<(String, u64)>;
type Check = std::result::Result<Tags, Failure>;

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), Failure> {
    if cond {
        Ok(())
    } else {
        Err(Failure {
            detail: detail(),
            report: None,
        })
    }
}

fn with_report<T: Serialize>(f: Failure, report: &T) -> Failure {
    Failure {
        report: serde_json::to_value(report).ok(),
        ..f
    }
}

fn tag(name: impl Into<String>) -> Tags {
    vec![(name.into(), 1)]
}

struct CaseResult {
    input: Value,
    check: Check,
}

fn run_cases<I, F>(inputs: Vec<I>, f: F) -> Vec<CaseResult>
where
    I: Serialize + Sync,
    F: Fn(&I) -> Check + Sync,
{
    inputs
        .par_iter()
        .map(|i| CaseResult {
            input: serde_json::to_value(i).unwrap_or(Value::Null),
            check: f(i),
        })
        .collect()
}

pub fn run_sweep(spec: &SweepSpec) -> Result<SweepSummary> {
    spec.check_feasible()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.parallelism)
        .build()
        .map_err(|e| Error::Feasibility(format!("thread pool: {e}")))?;
    let start = Instant::now();
    let mut summary = SweepSummary {
        target: spec.target,
        m_values: spec.m_values.clone(),
        cases: 0,
        passed: 0,
        failures: 0,
        per_m: Vec::new(),
        first_counterexample: None,
        stopped_early: false,
        timings: Timings::default(),
    };
    for (idx, &m) in spec.m_values.iter().enumerate() {
        let t0 = Instant::now();
        let ctx = FieldCtx::with_m(m)?;
        let results = pool.install(|| run_target(spec.target, &ctx))?;
        let mut per = PerM {
            m,
            cases: 0,
            failures: 0,
            skipped: results.is_none(),
            stats: BTreeMap::new(),
        };
        for r in results.unwrap_or_default() {
            per.cases += 1;
            match r.check {
                Ok(tags) => {
                    for (k, v) in tags {
                        *per.stats.entry(k).or_default() += v;
                    }
                }
                Err(f) => {
                    per.failures += 1;
                    if summary.first_counterexample.is_none() {
                        summary.first_counterexample = Some(Counterexample {
                            m,
                            input: r.input,
                            detail: f.detail,
                            report: f.report,
                        });
                    }
                }
            }
        }
        summary.cases += per.cases;
        summary.failures += per.failures;
        summary.passed += per.cases - per.failures;
        summary.timings.per_m_ms.insert(m, t0.elapsed().as_millis() as u64);
        let failed = per.failures > 0;
        summary.per_m.push(per);
        if failed && !spec.continue_on_failure && idx + 1 < spec.m_values.len() {
            summary.stopped_early = true;
            break;
        }
    }
    summary.timings.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(summary)
}

/// `None` when `m` is outside the statement's hypotheses.
fn run_target(target: SweepTarget, ctx: &FieldCtx) -> Result<Option<Vec<CaseResult>>> {
    let m = ctx.m();
    Ok(Some(match target {
        SweepTarget::Roots => sweep_roots(ctx),
        SweepTarget::Main => sweep_main(ctx),
        SweepTarget::Supplement => {
            if m.is_multiple_of(3) {
                return Ok(None);
            }
            sweep_supplement(ctx)?
        }
        SweepTarget::A1 => sweep_a1(ctx),
        SweepTarget::Main2 => sweep_main2(ctx),
        SweepTarget::Cor3 => sweep_cor3(ctx),
        SweepTarget::Ni => sweep_ni(ctx),
        SweepTarget::Factorization => sweep_factorization(ctx),
        SweepTarget::Zheng => {
            if m % 3 == 1 {
                return Ok(None);
            }
            sweep_zheng(ctx)
        }
        SweepTarget::Zheng2 => sweep_zheng2(ctx),
        SweepTarget::Zhengprop => {
            if m % 3 == 1 {
                return Ok(None);
            }
            sweep_zhengprop(ctx)
        }
        SweepTarget::Twist => sweep_twist(ctx),
        SweepTarget::Choice => sweep_choice(ctx),
    }))
}

#[derive(Serialize)]
struct AInput {
    ell: u64,
    a: Elem,
}

#[derive(Serialize)]
struct GInput {
    ell: u64,
    h: Elem,
    e: Elem,
}

fn a_inputs(ctx: &FieldCtx, ells: &[u64], keep: impl Fn(Elem) -> bool) -> Vec<AInput> {
    let mut out = Vec::new();
    for a in ctx.enumerate(Level::Q).filter(|&a| keep(a)) {
        for &ell in ells {
            out.push(AInput { ell, a });
        }
    }
    out
}

fn g_inputs(ctx: &FieldCtx, ells: &[u64]) -> Vec<GInput> {
    let mut out = Vec::new();
    for (h, e) in valid_pairs(ctx) {
        for &ell in ells {
            out.push(GInput { ell, h, e });
        }
    }
    out
}

fn trace_matches(ctx: &FieldCtx, a: Elem) -> bool {
    !a.is_zero() && {
        let inv = ctx.inv(a).expect("nonzero");
        ctx.abs_trace(inv, Level::Q).ok() == ctx.abs_trace(Elem::ONE, Level::Q).ok()
    }
}

fn sweep_roots(ctx: &FieldCtx) -> Vec<CaseResult> {
    run_cases(a_inputs(ctx, &[1, 2, 3], |_| true), |i| {
        let req = SolveRequest::new(i.ell, i.a);
        let (got, rep) = solve(ctx, req)?;
        let want = brute_roots_h(ctx, i.ell, i.a);
        ensure(got == want, || {
            format!("solver {:?} != oracle {:?}", got.as_slice(), want.as_slice())
        })
        .map_err(|f| with_report(f, &rep))?;
        let n = count_with_branch(ctx, req)?.0;
        ensure(n == got.len(), || format!("count {n} != |roots| {}", got.len()))?;
        Ok(tag(format!("{}:{}", rep.branch.name(), got.len())))
    })
}

fn sweep_main(ctx: &FieldCtx) -> Vec<CaseResult> {
    let m3 = ctx.m() % 3;
    let with_oracle = ctx.m() <= 6;
    let n = critical_degree(ctx);
    run_cases(
        a_inputs(ctx, &[1, 2], |a| is_admissible(ctx, a) && a != Elem::ONE),
        |i| {
            let req = SolveRequest::new(i.ell, i.a);
            let (count, branch) = count_with_branch(ctx, req)?;
            ensure(branch == Branch::ThmRoots, || {
                format!("dispatched to {}", branch.name())
            })?;
            let nine_or_none = (i.ell as u32 + m3).is_multiple_of(3);
            let d = dickson_eval(ctx, n, i.a)?;
            if nine_or_none {
                ensure(count == 9 || count == 0, || format!("N = {count}, expected 0 or 9"))?;
                ensure((count == 9) == d.is_zero(), || format!("N = {count} but D_n(a) = {d}"))?;
                let fsys = build_f_system(ctx, i.a, Choices::default())?;
                let j = ctx.cubic_character(fsys.c)?;
                ensure((j == 0) == d.is_zero(), || {
                    format!("cube test on c gives {j}, D_n(a) = {d}")
                })?;
            } else {
                ensure(count == 3, || format!("N = {count}, expected 3"))?;
            }
            let (roots, rep) = solve(ctx, req)?;
            ensure(roots.len() == count, || {
                format!("count {count} != |solve| {}", roots.len())
            })
            .map_err(|f| with_report(f, &rep))?;
            if with_oracle {
                let brute = brute_roots_h(ctx, i.ell, i.a);
                ensure(brute.len() == count, || {
                    format!("count {count} != oracle {}", brute.len())
                })?;
            }
            Ok(tag(format!("N={count}")))
        },
    )
}

#[derive(Serialize)]
struct ChunkInput {
    first: u128,
    end: u128,
}

fn sweep_supplement(ctx: &FieldCtx) -> Result<Vec<CaseResult>> {
    let roots = dickson_root_set(ctx)?;
    let n = critical_degree(ctx);
    let expected = (ctx.q() / 6) as usize;
    let mut out = run_cases(vec![json!({ "n": n.to_string() })], |_| {
        ensure(roots.len() == expected, || {
            format!("{} roots, expected floor(q/6) = {expected}", roots.len())
        })?;
        for &r in &roots {
            ensure(ctx.is_in(r, Level::Q) && !ctx.is_in_f2(r), || {
                format!("{r} not in GF(q) \\ GF(2)")
            })?;
            ensure(dickson_eval(ctx, n, r)?.is_zero(), || format!("D_n({r}) != 0"))?;
        }
        Ok(vec![("roots".into(), roots.len() as u64)])
    });
    if ctx.m() <= 10 {
        let size = ctx.subfield_size(Level::Q2);
        let chunks = 64u128.min(size);
        let inputs: Vec<ChunkInput> = (0..chunks)
            .map(|k| ChunkInput {
                first: size * k / chunks,
                end: size * (k + 1) / chunks,
            })
            .collect();
        out.extend(run_cases(inputs, |c| {
            let mut found = 0;
            for idx in c.first..c.end {
                let x = ctx.subfield_element(Level::Q2, idx);
                if !dickson_eval_recurrence(ctx, n, x).is_zero() {
                    continue;
                }
                if ctx.is_in_f2(x) {
                    continue;
                }
                ensure(ctx.is_in(x, Level::Q), || format!("root {x} of D_n outside GF(q)"))?;
                ensure(roots.binary_search(&x).is_ok(), || {
                    format!("root {x} missing from root set")
                })?;
                found += 1;
            }
            Ok(vec![("exhaustive_roots".into(), found)])
        }));
    }
    Ok(out)
}

fn sweep_a1(ctx: &FieldCtx) -> Vec<CaseResult> {
    let m = ctx.m() as u64;
    run_cases(a_inputs(ctx, &[1, 2], |a| a == Elem::ONE), |i| {
        let brute = brute_roots_h(ctx, i.ell, Elem::ONE);
        // 3 | m(l - m)
        let three = m.is_multiple_of(3) || i.ell % 3 == m % 3;
        ensure(brute.len() == if three { 3 } else { 0 }, || {
            format!("oracle finds {}", brute.len())
        })?;
        let cubic = |x: Elem| {
            if m.is_multiple_of(3) {
                ctx.cube(x) + x + Elem::ONE
            } else {
                ctx.cube(x) + ctx.square(x) + Elem::ONE
            }
        };
        ensure(brute.iter().all(|x| cubic(x).is_zero()), || {
            "oracle root misses the stated cubic".into()
        })?;
        let (got, _) = solve(ctx, SolveRequest::new(i.ell, Elem::ONE))?;
        ensure(got == brute, || {
            format!("solver {:?} != oracle {:?}", got.as_slice(), brute.as_slice())
        })?;
        Ok(tag(format!("N={}", brute.len())))
    })
}

fn sweep_main2(ctx: &FieldCtx) -> Vec<CaseResult> {
    let q = ctx.q();
    let n = if ctx.m() % 2 == 1 {
        (2 * q - 1) / 3
    } else {
        q.div_ceil(3)
    };
    run_cases(
        a_inputs(ctx, &[0, 1, 2], |a| !ctx.is_in_f2(a) && !trace_matches(ctx, a)),
        |i| {
            let brute = brute_roots_h(ctx, i.ell, i.a);
            ensure(brute.len() == 1, || format!("oracle finds {} roots", brute.len()))?;
            let rhs = ctx.inv(ctx.square(i.a))?;
            let [w, _] = ctx.artin_schreier(rhs, Level::Q2)?.ok_or_else(|| Failure {
                detail: "e^2 + ae = 1 unsolvable in GF(q^2)".into(),
                report: None,
            })?;
            let e = ctx.mul(i.a, w);
            let en = ctx.pow(e, n);
            let root = en + ctx.inv(en)?;
            ensure(brute.as_slice() == [root], || {
                format!("oracle {:?} != e^n + e^-n = {root}", brute.as_slice())
            })?;
            let (got, _) = solve(ctx, SolveRequest::new(i.ell, i.a))?;
            ensure(got == brute, || "solver disagrees".into())?;
            Ok(tag("single"))
        },
    )
}

fn sweep_cor3(ctx: &FieldCtx) -> Vec<CaseResult> {
    run_cases(a_inputs(ctx, &[3], |a| trace_matches(ctx, a)), |i| {
        let brute = brute_roots_h(ctx, i.ell, i.a);
        let formula = cubics::depressed_cubic_roots(ctx, i.a)?;
        ensure(brute.as_slice() == formula, || {
            format!("oracle {:?} != explicit {:?}", brute.as_slice(), formula)
        })?;
        Ok(tag("three"))
    })
}

#[derive(Serialize)]
struct EllInput {
    ell: u64,
}

fn sweep_ni(ctx: &FieldCtx) -> Vec<CaseResult> {
    let inputs = [EllInput { ell: 1 }, EllInput { ell: 2 }];
    // Cases run sequentially here; each one fans out over GF(q^3) itself.
    inputs
        .iter()
        .map(|i| {
            let check = (|| -> Check {
                let class = count_class(ctx, i.ell)?;
                let fibers = fiber_counts(ctx, i.ell);
                let mut tags: BTreeMap<String, u64> = BTreeMap::new();
                let nonzero = ctx.subfield_size(Level::Q3) - 1;
                let mut with_roots = 0u64;
                for (&a, &k) in fibers.iter().filter(|(a, _)| !a.is_zero()) {
                    ensure(class.contains(&k), || format!("a = {a} has {k} roots, class {class:?}"))?;
                    *tags.entry(format!("N={k}")).or_default() += 1;
                    with_roots += 1;
                }
                *tags.entry("N=0".into()).or_default() += (nonzero - with_roots as u128) as u64;
                Ok(tags.into_iter().collect())
            })();
            CaseResult {
                input: serde_json::to_value(i).unwrap_or(Value::Null),
                check,
            }
        })
        .collect()
}

fn sweep_factorization(ctx: &FieldCtx) -> Vec<CaseResult> {
    let m3 = ctx.m() % 3;
    let inputs: Vec<Elem> = ctx.enumerate(Level::Q).filter(|&a| is_admissible(ctx, a)).collect();
    run_cases(inputs, |&a| {
        let lam = lambda_sets_with(ctx, a, Choices::default())?;
        let fsys = &lam.fsys;
        let split: Vec<bool> = (0..3)
            .map(|i| fi_reducibility(ctx, fsys, i).map(|r| r == Reducibility::Split3))
            .collect::<Result<_>>()?;
        let n_split = split.iter().filter(|&&s| s).count();
        if m3 == 0 {
            ensure(n_split == 0 || n_split == 3, || {
                format!("split pattern {split:?} with 3 | m")
            })?;
        } else {
            ensure(n_split == 1, || format!("split pattern {split:?} with 3 ∤ m"))?;
        }
        for (i, set) in lam.sets.iter().enumerate() {
            let in_q = set.iter().all(|r| ctx.is_in(r, Level::Q));
            let none_in_q = set.iter().all(|r| !ctx.is_in(r, Level::Q));
            ensure(in_q == split[i] && (in_q || none_in_q), || {
                format!("Λ{i} location vs split = {}", split[i])
            })?;
            for r in set.iter() {
                let img = rho_eval(ctx, a, r)?;
                ensure(set.contains(img), || format!("rho moves {r} out of Λ{i}"))?;
                ensure((img == r) == (i == 0), || {
                    format!("rho fixes {r} in Λ{i}: {}", img == r)
                })?;
            }
        }
        Ok(tag(format!("split={n_split}")))
    })
}

fn sweep_zheng(ctx: &FieldCtx) -> Vec<CaseResult> {
    let with_oracle = ctx.m() <= 6;
    run_cases(g_inputs(ctx, &[2]), |i| {
        let req = ZhengRequest::new(i.ell, i.h, i.e);
        let gamma = zheng_solve(ctx, &req)?;
        ensure(gamma.len() == 3, || format!("|Γ| = {}", gamma.len()))?;
        if with_oracle {
            let brute = brute_roots_g(ctx, i.ell, i.h, i.e, false);
            ensure(brute == gamma, || {
                format!("oracle {:?} != {:?}", brute.as_slice(), gamma.as_slice())
            })?;
        }
        ensure(
            !gamma.iter().any(|x| ctx.is_in(x, Level::Q) && ctx.cube(x) == Elem::ONE),
            || "root on μ ∩ GF(q)".into(),
        )?;
        Ok(tag("three"))
    })
}

fn sweep_zheng2(ctx: &FieldCtx) -> Vec<CaseResult> {
    run_cases(g_inputs(ctx, &[1, 2]), |i| {
        let req = ZhengRequest::new(i.ell, i.h, i.e);
        let rep = zheng_validate(ctx, &req)?;
        let got = zheng_mu_roots(ctx, &req)?;
        let brute = brute_roots_g(ctx, i.ell, i.h, i.e, true);
        ensure(got == brute, || {
            format!("closed form {:?} != oracle {:?}", got.as_slice(), brute.as_slice())
        })
        .map_err(|f| with_report(f, &rep))?;
        ensure(brute.is_empty() || brute.len() == 3, || {
            format!("{} μ-roots", brute.len())
        })?;
        ensure(rep.mu_criterion == !brute.is_empty(), || {
            format!("criterion {} but {} μ-roots", rep.mu_criterion, brute.len())
        })?;
        let cubic = mu_cubic(ctx, i.h, i.e);
        ensure(brute.iter().all(|x| cubic.eval(ctx, x).is_zero()), || {
            "μ-root misses the cubic".into()
        })?;
        let all = brute_roots_g(ctx, i.ell, i.h, i.e, false);
        ensure(
            !all.iter().any(|x| ctx.is_in(x, Level::Q) && ctx.cube(x) == Elem::ONE),
            || "root on μ ∩ GF(q)".into(),
        )?;
        Ok(tag(if brute.is_empty() { "empty" } else { "three" }))
    })
}

fn sweep_zhengprop(ctx: &FieldCtx) -> Vec<CaseResult> {
    run_cases(g_inputs(ctx, &[2]), |i| {
        let req = ZhengRequest::new(i.ell, i.h, i.e);
        let (gamma, rep) = zheng_case_with(ctx, &req, Choices::default())?;
        let brute = brute_roots_g(ctx, i.ell, i.h, i.e, false);
        ensure(brute == gamma, || {
            format!("oracle {:?} != {:?}", brute.as_slice(), gamma.as_slice())
        })
        .map_err(|f| with_report(f, &rep))?;
        let in_q = brute.iter().all(|x| ctx.frobenius_q(x, 1) == x);
        ensure(Some(in_q) == rep.subfield_flag, || {
            "subfield flag disagrees with the oracle".into()
        })?;
        Ok(tag(format!("formula{}", rep.formula_branch.unwrap_or(9))))
    })
}

fn sweep_twist(ctx: &FieldCtx) -> Vec<CaseResult> {
    run_cases(
        a_inputs(ctx, &[1, 2], |a| is_admissible(ctx, a) && a != Elem::ONE),
        |i| {
            let (roots, rep) = solve(ctx, SolveRequest::new(i.ell, i.a))?;
            ensure(rep.branch == Branch::ThmRoots, || {
                format!("dispatched to {}", rep.branch.name())
            })?;
            for b in roots.iter() {
                let r = rho_eval(ctx, i.a, b)?;
                let ok = if i.ell % 3 == 2 {
                    r == ctx.frobenius_q(b, 1)
                } else {
                    ctx.frobenius_q(r, 1) == b
                };
                ensure(ok, || format!("twist identity fails at {b}"))?;
            }
            let fsys = build_f_system(ctx, i.a, Choices::default())?;
            let brute = brute_roots_h(ctx, i.ell, i.a);
            for b in brute.iter().filter(|&b| !ctx.is_in(b, Level::Q)) {
                ensure(!fsys.f0.eval(ctx, b).is_zero(), || {
                    format!("{b} outside GF(q) is a root of f0")
                })?;
                ensure(fsys.f1.eval(ctx, b).is_zero() || fsys.f2.eval(ctx, b).is_zero(), || {
                    format!("{b} outside GF(q) is a root of neither f1 nor f2")
                })?;
            }
            if fi_reducibility(ctx, &fsys, 0)? == Reducibility::Irreducible {
                for r in cubics::depressed_cubic_roots(ctx, i.a)? {
                    for ell in [1, 2] {
                        ensure(!h_eval(ctx, ell, i.a, r).is_zero(), || {
                            format!("root {r} of irreducible f0 solves H_{ell}")
                        })?;
                    }
                }
            }
            Ok(tag(format!("N={}", roots.len())))
        },
    )
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum ChoiceInput {
    Solve { ell: u64, a: Elem },
    Lambda { a: Elem },
    Mu { ell: u64, h: Elem, e: Elem },
    Case { h: Elem, e: Elem },
}

fn sweep_choice(ctx: &FieldCtx) -> Vec<CaseResult> {
    let mut inputs = Vec::new();
    for a in ctx.enumerate(Level::Q) {
        for ell in 1..=3 {
            inputs.push(ChoiceInput::Solve { ell, a });
        }
        if is_admissible(ctx, a) {
            inputs.push(ChoiceInput::Lambda { a });
        }
    }
    for (h, e) in valid_pairs(ctx) {
        for ell in 1..=2 {
            inputs.push(ChoiceInput::Mu { ell, h, e });
        }
        if ctx.m() % 3 != 1 {
            inputs.push(ChoiceInput::Case { h, e });
        }
    }
    run_cases(inputs, |input| {
        match *input {
            ChoiceInput::Solve { ell, a } => {
                let req = SolveRequest::new(ell, a);
                let base = solve(ctx, req)?.0;
                for ch in Choices::ALL {
                    ensure(solve_with(ctx, req, ch)?.0 == base, || {
                        format!("solve differs under {ch:?}")
                    })?;
                }
            }
            ChoiceInput::Lambda { a } => {
                let base = lambda_sets_with(ctx, a, Choices::default())?;
                for ch in Choices::ALL {
                    let other = lambda_sets_with(ctx, a, ch)?;
                    let [s0, s1, s2] = &other.sets;
                    // b -> b+1 exchanges the labels of Λ1 and Λ2.
                    let same = if ch.swap_b {
                        (s0, s2, s1) == (&base.sets[0], &base.sets[1], &base.sets[2])
                    } else {
                        other.sets == base.sets
                    };
                    ensure(same, || format!("Λ sets differ under {ch:?}"))?;
                }
            }
            ChoiceInput::Mu { ell, h, e } => {
                let req = ZhengRequest::new(ell, h, e);
                let base = zheng_mu_roots(ctx, &req)?;
                for ch in Choices::ALL {
                    ensure(zheng_mu_roots_with(ctx, &req, ch)? == base, || {
                        format!("μ-roots differ under {ch:?}")
                    })?;
                }
            }
            ChoiceInput::Case { h, e } => {
                let req = ZhengRequest::new(2, h, e);
                let (base, rep) = zheng_case_with(ctx, &req, Choices::default())?;
                for ch in Choices::ALL {
                    let (g, r) = zheng_case_with(ctx, &req, ch)?;
                    ensure(g == base, || format!("Γ differs under {ch:?}"))?;
                    ensure(
                        r.subfield_flag == rep.subfield_flag && r.selected_cubic == rep.selected_cubic,
                        || format!("subfield flag or selected cubic differs under {ch:?}"),
                    )?;
                }
            }
        }
        Ok(tag(match input {
            ChoiceInput::Solve { .. } => "solve",
            ChoiceInput::Lambda { .. } => "lambda",
            ChoiceInput::Mu { .. } => "mu",
            ChoiceInput::Case { .. } => "case",
        }))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_examples() {
        let ctx = FieldCtx::with_m(1).unwrap();
        let r = brute_roots_h(&ctx, 1, Elem::ONE);
        assert_eq!(r.len(), 3);
        assert!(r.iter().all(|x| (ctx.cube(x) + ctx.square(x) + Elem::ONE).is_zero()));
        for m in 1..=3 {
            let ctx = FieldCtx::with_m(m).unwrap();
            for ell in 1..=3 {
                assert_eq!(
                    brute_roots_h(&ctx, ell, Elem::ZERO).as_slice(),
                    &[Elem::ZERO, Elem::ONE]
                );
            }
        }
    }

    #[test]
    fn pow_oracle_agrees() {
        for m in 1..=2 {
            let ctx = FieldCtx::with_m(m).unwrap();
            for a in ctx.enumerate(Level::Q3).step_by(3) {
                for ell in 0..=3 {
                    assert_eq!(brute_roots_h(&ctx, ell, a), brute_roots_h_pow(&ctx, ell, a));
                }
            }
        }
    }

    #[test]
    fn target_names_round_trip() {
        for t in SweepTarget::ALL {
            assert_eq!(t.name().parse::<SweepTarget>().unwrap(), t);
            assert_eq!(serde_json::to_value(t).unwrap(), json!(t.name()));
        }
        assert!("bogus".parse::<SweepTarget>().is_err());
        assert_eq!("zheng2".parse::<SweepTarget>().unwrap(), SweepTarget::Zheng2);
    }

    #[test]
    fn feasibility_bounds() {
        let mut spec = SweepSpec::new(SweepTarget::Roots, vec![7]);
        assert!(matches!(run_sweep(&spec), Err(Error::Feasibility(_))));
        spec.allow_large = true;
        assert!(spec.check_feasible().is_ok());
        spec.m_values = vec![9];
        assert!(spec.check_feasible().is_err());
        assert!(SweepSpec::new(SweepTarget::Supplement, vec![16])
            .check_feasible()
            .is_ok());
        assert!(SweepSpec::new(SweepTarget::Main, vec![]).check_feasible().is_err());
    }

    #[test]
    fn small_sweeps_pass() {
        for t in SweepTarget::ALL {
            let s = run_sweep(&SweepSpec::new(t, vec![1, 2, 3])).unwrap();
            assert!(s.ok(), "{t}: {:?}", s.first_counterexample);
        }
    }
}
