//! Closed-form roots in GF(q^3), q = 2^m, of `X^(2q^l+1) + X + a` for
//! `a` in GF(q), and of the scaled family `X^(2q^l+1) + hX + e`, together
//! with a brute-force oracle and exhaustive sweep drivers that check every
//! closed form against it.
//!
//! All arithmetic happens in one copy of GF(2^(6m)) held by a [`FieldCtx`];
//! GF(q), GF(q^2) and GF(q^3) are its Frobenius-fixed subspaces.
//!
//! ```
//! use projroots::{solve, FieldCtx, SolveRequest};
//!
//! let ctx = FieldCtx::with_m(1).unwrap();
//! let (roots, report) = solve(&ctx, SolveRequest::new(1, ctx.elem(1).unwrap())).unwrap();
//! assert_eq!(roots.len(), 3);
//! assert_eq!(report.branch.name(), "A_ONE");
//! ```

pub mod cubics;
pub mod dickson;
pub mod error;
pub mod field;
pub mod oracle;
pub mod poly;
pub mod solver;
pub mod wire;
pub mod zheng;

pub use cubics::{Choices, Cubic, FSystem};
pub use error::{Error, Result};
pub use field::{Elem, FieldCtx, FieldParams, Level};
pub use oracle::{run_sweep, SweepSpec, SweepSummary, SweepTarget};
pub use solver::{count, solve, CaseReport, RootSet, SolveRequest};
pub use zheng::{ZhengReport, ZhengRequest};
