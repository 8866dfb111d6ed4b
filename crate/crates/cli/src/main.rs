use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use projroots::cubics::cubic_count;
use projroots::dickson::{critical_degree, dickson_eval, dickson_root_set};
use projroots::oracle::{brute_roots_g, brute_roots_h, brute_roots_h_pow, run_sweep, SweepSpec, SweepTarget};
use projroots::solver::{count_with_branch, lambda_sets_with, solve_with, SolveRequest};
use projroots::wire::{parse_elem, parse_m_range, parse_modulus_hex};
use projroots::zheng::{zheng_case_with, zheng_mu_roots_with, zheng_solve_with, zheng_validate, ZhengRequest};
use projroots::{Choices, Elem, Error, FieldCtx, FieldParams, Level};

/// Closed-form roots of X^(2q^l+1) + X + a over GF(q^3), q = 2^m, with a
/// brute-force oracle and exhaustive sweeps. All output is JSON.
#[derive(Parser)]
#[command(name = "projroots", version)]
struct Cli {
    /// Extension degree m (q = 2^m); `sweep` takes a list or range such as 1..6.
    #[arg(long, global = true)]
    m: Option<String>,
    /// Defining polynomial of GF(2^(6m)) as hex; the least irreducible by default.
    #[arg(long, global = true)]
    modulus: Option<String>,
    /// JSON output (always on; accepted for scripts).
    #[arg(long, global = true)]
    json: bool,
    /// Indent the JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for sweeps (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    parallel: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy, Default)]
struct ChoiceArgs {
    /// Use omega^2 in place of omega.
    #[arg(long)]
    swap_omega: bool,
    /// Use b+1 in place of b.
    #[arg(long)]
    swap_b: bool,
}

impl From<ChoiceArgs> for Choices {
    fn from(c: ChoiceArgs) -> Self {
        Choices {
            swap_omega: c.swap_omega,
            swap_b: c.swap_b,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Modulus, omega and subfield bases of the field context.
    Ctx,
    /// Roots of X^(2q^l+1) + X + a in GF(q^3) with the dispatch report.
    Solve {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        a: String,
        #[command(flatten)]
        choices: ChoiceArgs,
    },
    /// Number of roots, decided without constructing them.
    Count {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        a: String,
    },
    /// The three candidate sets of the general case.
    Lambda {
        #[arg(long)]
        a: String,
        #[command(flatten)]
        choices: ChoiceArgs,
    },
    /// Dickson polynomials.
    #[command(subcommand)]
    Dickson(DicksonCmd),
    /// Cubic equations.
    #[command(subcommand)]
    Cubic(CubicCmd),
    /// The scaled family X^(2q^l+1) + hX + e.
    #[command(subcommand)]
    Zheng(ZhengCmd),
    /// Brute-force root enumeration.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Exhaustive check of one statement over a range of m.
    Sweep {
        #[arg(long)]
        target: String,
        /// Allow m beyond the default bound of the target.
        #[arg(long)]
        allow_large: bool,
        /// Continue after the first m with a failure.
        #[arg(long = "continue")]
        continue_on_failure: bool,
        /// Omit timings so that repeated runs print identical output.
        #[arg(long)]
        no_timings: bool,
    },
}

#[derive(Subcommand)]
enum DicksonCmd {
    /// Roots in GF(q) \ GF(2) of D_n, n = floor((q+1)/3).
    Roots,
    /// D_n(x) for x in GF(q).
    Eval {
        #[arg(long)]
        n: u128,
        #[arg(long)]
        x: String,
    },
}

#[derive(Subcommand)]
enum CubicCmd {
    /// Number of roots of X^3 + AX + B in a level.
    Count {
        #[arg(long = "A")]
        a: String,
        #[arg(long = "B")]
        b: String,
        #[arg(long, default_value = "q")]
        level: String,
    },
}

#[derive(Args)]
struct ZhengArgs {
    #[arg(long)]
    h: String,
    #[arg(long)]
    e: String,
    #[arg(long)]
    ell: u64,
    #[command(flatten)]
    choices: ChoiceArgs,
}

#[derive(Subcommand)]
enum ZhengCmd {
    /// All roots in GF(q^3).
    Solve(ZhengArgs),
    /// Roots on the norm-one circle.
    Mu(ZhengArgs),
    /// Subfield test and explicit formula (l ≡ 2, m ≢ 1 mod 3).
    Case(ZhengArgs),
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Zeros of X^(2q^l+1) + X + a over GF(q^3) by enumeration.
    H {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        a: String,
        /// Evaluate with plain exponentiation instead of Frobenius tables.
        #[arg(long)]
        pow: bool,
    },
    /// Zeros of X^(2q^l+1) + hX + e over GF(q^3) by enumeration.
    G {
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        h: String,
        #[arg(long)]
        e: String,
        /// Keep only roots in the (q^2+q+1)-th roots of unity.
        #[arg(long)]
        mu: bool,
    },
}

enum Failure {
    Error(Error),
    Sweep(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output types serialize")
}

fn elems(v: impl IntoIterator<Item = Elem>) -> Value {
    let mut list: Vec<Elem> = v.into_iter().collect();
    list.sort();
    Value::Array(list.into_iter().map(|e| json!(e.to_hex())).collect())
}

fn single_m(cli: &Cli) -> Result<u32, Error> {
    let raw = cli.m.as_deref().ok_or_else(|| Error::Parse("--m is required".into()))?;
    match parse_m_range(raw)?.as_slice() {
        [m] => Ok(*m),
        _ => Err(Error::Parse(format!(
            "--m {raw:?} must be a single value for this command"
        ))),
    }
}

fn context(cli: &Cli) -> Result<FieldCtx, Error> {
    let m = single_m(cli)?;
    let modulus = cli.modulus.as_deref().map(parse_modulus_hex).transpose()?;
    FieldCtx::new(FieldParams { m, modulus })
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    let out = match &cli.command {
        Command::Ctx => {
            let ctx = context(cli)?;
            let bases: serde_json::Map<String, Value> = Level::ALL
                .iter()
                .map(|&l| (l.name().to_string(), elems(ctx.basis(l).iter().copied())))
                .collect();
            json!({
                "m": ctx.m(),
                "q": ctx.q().to_string(),
                "degree": ctx.degree(),
                "modulus": format!("{:x}", ctx.modulus()),
                "omega": ctx.omega(),
                "bases": bases,
            })
        }
        Command::Solve { ell, a, choices } => {
            let ctx = context(cli)?;
            let a = parse_elem(&ctx, a)?;
            let (roots, report) = solve_with(&ctx, SolveRequest::new(*ell, a), (*choices).into())?;
            json!({ "roots": elems(roots.iter()), "case": to_json(&report) })
        }
        Command::Count { ell, a } => {
            let ctx = context(cli)?;
            let a = parse_elem(&ctx, a)?;
            let (n, branch) = count_with_branch(&ctx, SolveRequest::new(*ell, a))?;
            json!({ "n": n, "branch": branch.name() })
        }
        Command::Lambda { a, choices } => {
            let ctx = context(cli)?;
            let a = parse_elem(&ctx, a)?;
            let lam = lambda_sets_with(&ctx, a, (*choices).into())?;
            json!({
                "a": a,
                "b": lam.fsys.b,
                "c": lam.fsys.c,
                "omega": lam.fsys.omega,
                "lambda0": elems(lam.sets[0].iter()),
                "lambda1": elems(lam.sets[1].iter()),
                "lambda2": elems(lam.sets[2].iter()),
            })
        }
        Command::Dickson(DicksonCmd::Roots) => {
            let ctx = context(cli)?;
            let roots = dickson_root_set(&ctx)?;
            json!({ "n": critical_degree(&ctx).to_string(), "count": roots.len(), "roots": elems(roots) })
        }
        Command::Dickson(DicksonCmd::Eval { n, x }) => {
            let ctx = context(cli)?;
            let x = parse_elem(&ctx, x)?;
            json!({ "n": n.to_string(), "x": x, "value": dickson_eval(&ctx, *n, x)? })
        }
        Command::Cubic(CubicCmd::Count { a, b, level }) => {
            let ctx = context(cli)?;
            let level: Level = level.parse()?;
            let (a, b) = (parse_elem(&ctx, a)?, parse_elem(&ctx, b)?);
            let r = cubic_count(&ctx, a, b, level)?;
            json!({ "n": r.roots, "witness": r.witness, "level": level.name() })
        }
        Command::Zheng(cmd) => {
            let ctx = context(cli)?;
            let (args, kind) = match cmd {
                ZhengCmd::Solve(a) => (a, "solve"),
                ZhengCmd::Mu(a) => (a, "mu"),
                ZhengCmd::Case(a) => (a, "case"),
            };
            let req = ZhengRequest::new(args.ell, parse_elem(&ctx, &args.h)?, parse_elem(&ctx, &args.e)?);
            let choices: Choices = args.choices.into();
            match kind {
                "solve" => {
                    let roots = zheng_solve_with(&ctx, &req, choices)?;
                    json!({ "roots": elems(roots.iter()), "report": to_json(&zheng_validate(&ctx, &req)?) })
                }
                "mu" => {
                    let roots = zheng_mu_roots_with(&ctx, &req, choices)?;
                    json!({ "roots": elems(roots.iter()), "report": to_json(&zheng_validate(&ctx, &req)?) })
                }
                _ => {
                    let (roots, report) = zheng_case_with(&ctx, &req, choices)?;
                    json!({ "roots": elems(roots.iter()), "report": to_json(&report) })
                }
            }
        }
        Command::Oracle(OracleCmd::H { ell, a, pow }) => {
            let ctx = context(cli)?;
            let a = parse_elem(&ctx, a)?;
            let roots = if *pow {
                brute_roots_h_pow(&ctx, *ell, a)
            } else {
                brute_roots_h(&ctx, *ell, a)
            };
            json!({ "roots": elems(roots.iter()), "count": roots.len() })
        }
        Command::Oracle(OracleCmd::G { ell, h, e, mu }) => {
            let ctx = context(cli)?;
            let (h, e) = (parse_elem(&ctx, h)?, parse_elem(&ctx, e)?);
            let roots = brute_roots_g(&ctx, *ell, h, e, *mu);
            json!({ "roots": elems(roots.iter()), "count": roots.len() })
        }
        Command::Sweep {
            target,
            allow_large,
            continue_on_failure,
            no_timings,
        } => {
            let raw = cli.m.as_deref().ok_or_else(|| Error::Parse("--m is required".into()))?;
            if cli.modulus.is_some() {
                return Err(Error::Parse("--modulus does not apply to sweeps".into()).into());
            }
            let target: SweepTarget = target.parse()?;
            let spec = SweepSpec {
                target,
                m_values: parse_m_range(raw)?,
                parallelism: cli.parallel,
                allow_large: *allow_large,
                continue_on_failure: *continue_on_failure,
            };
            let summary = run_sweep(&spec)?;
            let summary = if *no_timings {
                summary.without_timings()
            } else {
                summary
            };
            let value = to_json(&summary);
            if !summary.ok() {
                return Err(Failure::Sweep(value));
            }
            value
        }
    };
    Ok(out)
}

fn print(cli_pretty: bool, v: &Value) {
    let text = if cli_pretty {
        serde_json::to_string_pretty(v)
    } else {
        serde_json::to_string(v)
    };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            print(
                false,
                &json!({ "error": { "kind": "usage", "message": e.to_string().trim() } }),
            );
            return ExitCode::from(1);
        }
    };
    match run(&cli) {
        Ok(v) => {
            print(cli.pretty, &v);
            ExitCode::SUCCESS
        }
        Err(Failure::Sweep(v)) => {
            print(cli.pretty, &v);
            ExitCode::from(2)
        }
        Err(Failure::Error(e)) => {
            print(
                cli.pretty,
                &json!({ "error": { "kind": e.kind(), "message": e.to_string() } }),
            );
            ExitCode::from(if matches!(e, Error::Verification(_)) { 2 } else { 1 })
        }
    }
}
