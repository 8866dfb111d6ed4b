//! Small hand-checkable instances for every public operation.

use projroots::cubics::{
    build_f_system, cubic_count, depressed_cubic_roots, fi_reducibility, rho_eval, twist_classify, Reducibility, Twist,
};
use projroots::dickson::{dickson_eval, dickson_root_set};
use projroots::oracle::{brute_roots_g, brute_roots_h, run_sweep, SweepSpec, SweepTarget};
use projroots::solver::{count_class, count_with_branch, h_eval, lambda_sets, Branch, Selected};
use projroots::zheng::{g_eval, zheng_case, zheng_mu_roots, zheng_solve, zheng_validate};
use projroots::{count, solve, Elem, Error, FieldCtx, FieldParams, Level, SolveRequest, ZhengRequest};

fn ctx(m: u32) -> FieldCtx {
    FieldCtx::with_m(m).unwrap()
}

fn hex(xs: &[Elem]) -> Vec<u128> {
    xs.iter().map(|x| x.bits()).collect()
}

/// The smallest-encoded root of X^3+X+1 in GF(8) when m = 3.
fn t(ctx: &FieldCtx) -> Elem {
    ctx.enumerate(Level::Q)
        .filter(|&t| (ctx.cube(t) + t + Elem::ONE).is_zero())
        .min()
        .unwrap()
}

#[test]
fn construction() {
    let c = ctx(1);
    assert_eq!(c.enumerate(Level::Q6).count(), 64);
    assert_eq!(c.basis(Level::Q), &[Elem::ONE]);
    let w = ctx(2).omega();
    assert!((ctx(2).square(w) + w + Elem::ONE).is_zero());
    // (X^9+X+1)^2 has degree 18 and is reducible.
    let reducible = (1u128 << 18) | (1 << 2) | 1;
    let e = FieldCtx::new(FieldParams {
        m: 3,
        modulus: Some(reducible),
    })
    .unwrap_err();
    assert!(matches!(e, Error::Construction(_)));
    let wrong_degree = FieldCtx::new(FieldParams {
        m: 3,
        modulus: Some(0x43),
    })
    .unwrap_err();
    assert!(matches!(wrong_degree, Error::Construction(_)));
    assert_eq!(FieldCtx::with_m(0).unwrap_err(), Error::Range(0));
    assert_eq!(FieldCtx::with_m(22).unwrap_err(), Error::Range(22));
}

#[test]
fn omega_arithmetic() {
    for m in 1..=4 {
        let c = ctx(m);
        let w = c.omega();
        assert_eq!(c.mul(w, w), w + Elem::ONE);
        assert_eq!(c.inv(w).unwrap(), c.square(w));
        assert_eq!(c.pow(w, 3), Elem::ONE);
        assert_eq!(c.inv(Elem::ZERO), Err(Error::ZeroDivision));
        assert_eq!(c.div(w, Elem::ZERO), Err(Error::ZeroDivision));
    }
}

#[test]
fn frobenius_and_membership() {
    for m in 1..=4 {
        let c = ctx(m);
        let w = c.omega();
        for x in c.enumerate(Level::Q).take(50) {
            assert_eq!(c.frobenius_q(x, 1), x);
        }
        for bits in (0..c.q().pow(2).min(1 << 12)).step_by(7) {
            let x = c.elem_masked(bits * 0x9e37_79b9);
            assert_eq!(c.frobenius_q(x, 6), x);
        }
        if m % 2 == 1 {
            assert_eq!(c.frobenius_q(w, 1), c.square(w));
            assert!(!c.is_in(w, Level::Q));
        }
        assert!(c.is_in(Elem::ZERO, Level::Q));
        assert!(c.is_in(w, Level::Q2));
    }
    assert_eq!(ctx(1).enumerate(Level::Q).count(), 2);
    let lvl = ctx(2).enumerate(Level::Q3).collect::<std::collections::BTreeSet<_>>();
    assert_eq!(lvl.len(), 64);
}

#[test]
fn traces() {
    let c2 = ctx(2);
    assert_eq!(c2.abs_trace(Elem::ONE, Level::Q).unwrap(), 0);
    assert_eq!(c2.abs_trace(c2.omega(), Level::Q).unwrap(), 1);
    assert_eq!(ctx(3).abs_trace(Elem::ONE, Level::Q).unwrap(), 1);
    let c1 = ctx(1);
    assert!(matches!(
        c1.abs_trace(c1.omega(), Level::Q),
        Err(Error::Membership { .. })
    ));
}

#[test]
fn square_roots_and_artin_schreier() {
    for m in 1..=3 {
        let c = ctx(m);
        let w = c.omega();
        assert_eq!(c.sqrt(Elem::ZERO), Elem::ZERO);
        assert_eq!(c.sqrt(Elem::ONE), Elem::ONE);
        assert_eq!(c.sqrt(w), c.square(w));
        for level in Level::ALL {
            assert_eq!(
                c.artin_schreier(Elem::ZERO, level).unwrap(),
                Some([Elem::ZERO, Elem::ONE])
            );
        }
    }
    assert_eq!(ctx(1).artin_schreier(Elem::ONE, Level::Q).unwrap(), None);
    let c2 = ctx(2);
    let w = c2.omega();
    let mut pair = c2.artin_schreier(Elem::ONE, Level::Q).unwrap().unwrap();
    pair.sort();
    let mut expect = [w, c2.square(w)];
    expect.sort();
    assert_eq!(pair, expect);
}

#[test]
fn cube_roots_and_characters() {
    let c = ctx(1);
    let w = c.omega();
    let mut unity = vec![Elem::ONE, w, c.square(w)];
    unity.sort();
    assert_eq!(c.cube_roots(Elem::ONE), unity);
    assert_eq!(c.cube_roots(Elem::ZERO), vec![Elem::ZERO]);
    let empty = c
        .enumerate(Level::Q6)
        .filter(|&y| !y.is_zero() && c.cube_roots(y).is_empty())
        .count();
    assert_eq!(empty, 42);

    assert_eq!(c.cubic_character(Elem::ONE).unwrap(), 0);
    assert_eq!(c.cubic_character(w).unwrap(), 1);
    assert!(matches!(c.cubic_character(Elem::ZERO), Err(Error::Domain(_))));
    let c3 = ctx(3);
    for z in c3.enumerate(Level::Q2).skip(1).take(200) {
        assert_eq!(c3.cubic_character(c3.cube(z)).unwrap(), 0);
    }

    assert!(c.mu_membership(Elem::ONE));
    assert!(!c.mu_membership(Elem::ZERO));
    let c2 = ctx(2);
    assert!(c2.mu_membership(c2.omega()));
}

#[test]
fn dickson() {
    for m in 1..=4 {
        let c = ctx(m);
        for x in c.enumerate(Level::Q) {
            assert_eq!(dickson_eval(&c, 1, x).unwrap(), x);
        }
        assert_eq!(dickson_eval(&c, 3, Elem::ONE).unwrap(), Elem::ZERO);
        assert_eq!(dickson_eval(&c, 5, Elem::ONE).unwrap(), Elem::ONE);
    }
    assert!(dickson_root_set(&ctx(1)).unwrap().is_empty());
    assert!(dickson_root_set(&ctx(2)).unwrap().is_empty());
    assert!(matches!(dickson_root_set(&ctx(3)), Err(Error::Domain(_))));
    let roots = dickson_root_set(&ctx(4)).unwrap();
    assert_eq!(roots.len(), 16 / 6);
    assert_eq!(hex(&roots), vec![0x104e, 0x104f]);
}

#[test]
fn cubic_counts() {
    let c1 = ctx(1);
    let n = cubic_count(&c1, Elem::ONE, Elem::ONE, Level::Q).unwrap();
    assert_eq!(n.roots, 0);
    assert!(c1.cube_roots(n.witness).is_empty() || c1.cubic_character(n.witness).unwrap() != 0);
    assert_eq!(cubic_count(&ctx(3), Elem::ONE, Elem::ONE, Level::Q).unwrap().roots, 3);
    assert_eq!(cubic_count(&ctx(2), Elem::ZERO, Elem::ONE, Level::Q).unwrap().roots, 3);
    assert!(matches!(
        cubic_count(&c1, Elem::ONE, Elem::ZERO, Level::Q),
        Err(Error::Domain(_))
    ));
}

#[test]
fn depressed_cubic() {
    let c = ctx(3);
    let a = t(&c);
    let roots = depressed_cubic_roots(&c, a).unwrap();
    for r in roots {
        assert!((c.cube(r) + r + a).is_zero());
    }
    assert!(roots[0] != roots[1] && roots[1] != roots[2] && roots[0] != roots[2]);
    // X^3+X+t has no root in GF(8) itself; its roots lie in GF(512).
    assert!(roots.iter().all(|&r| !c.is_in(r, Level::Q) && c.is_in(r, Level::Q3)));
    assert!(matches!(depressed_cubic_roots(&c, Elem::ZERO), Err(Error::Domain(_))));
}

#[test]
fn f_system() {
    let c = ctx(3);
    let a = t(&c);
    let fs = build_f_system(&c, a, Default::default()).unwrap();
    let prod = fs.f0.to_poly().mul(&c, &fs.f1.to_poly()).mul(&c, &fs.f2.to_poly());
    assert_eq!(prod, fs.f);
    let b = c.square(a) + a;
    assert_eq!(c.square(b) + b, c.inv(a).unwrap() + Elem::ONE);
    assert!(fs.b == b || fs.b == b + Elem::ONE);
    assert_eq!(rho_eval(&c, a, Elem::ZERO).unwrap(), a);
    assert_eq!(rho_eval(&c, a, Elem::ONE), Err(Error::Pole));
    assert_eq!(
        build_f_system(&c, Elem::ONE, Default::default()).unwrap_err().kind(),
        "domain"
    );

    let kinds: Vec<_> = (0..3).map(|i| fi_reducibility(&c, &fs, i).unwrap()).collect();
    assert!(kinds.iter().all(|&k| k == kinds[0]));
    let c4 = ctx(4);
    for a in c4
        .enumerate(Level::Q)
        .filter(|&a| projroots::cubics::is_admissible(&c4, a))
    {
        let fs = build_f_system(&c4, a, Default::default()).unwrap();
        let split = (0..3)
            .filter(|&i| fi_reducibility(&c4, &fs, i).unwrap() == Reducibility::Split3)
            .count();
        assert_eq!(split, 1);
    }
}

#[test]
fn twists_at_m3() {
    let c = ctx(3);
    let a = t(&c);
    for beta in depressed_cubic_roots(&c, a).unwrap() {
        assert_eq!(twist_classify(&c, a, beta).unwrap().class, Twist::Fixed);
    }
    for (ell, expect) in [(1, Twist::InverseQTwist), (2, Twist::QTwist)] {
        let gamma = brute_roots_h(&c, ell, a);
        assert_eq!(gamma.len(), 3);
        for beta in gamma.iter() {
            assert_eq!(twist_classify(&c, a, beta).unwrap().class, expect);
        }
    }
    assert_eq!(twist_classify(&c, a, Elem::ONE).unwrap_err(), Error::Pole);
}

#[test]
fn lambda_sets_shape() {
    let c = ctx(4);
    let a = c
        .enumerate(Level::Q)
        .find(|&a| projroots::cubics::is_admissible(&c, a))
        .unwrap();
    let ls = lambda_sets(&c, a).unwrap();
    assert!(ls.sets.iter().all(|s| s.len() == 3));
    assert_eq!(ls.union().len(), 9);
    for (i, s) in ls.sets.iter().enumerate() {
        for r in s.iter() {
            assert!(ls.fsys.cubic(i).eval(&c, r).is_zero());
        }
    }
}

#[test]
fn solve_examples() {
    for m in 1..=4 {
        let (roots, report) = solve(&ctx(m), SolveRequest::new(1, Elem::ZERO)).unwrap();
        assert_eq!(roots.as_slice(), &[Elem::ZERO, Elem::ONE]);
        assert_eq!(report.branch, Branch::AZero);
    }

    let c1 = ctx(1);
    let (roots, report) = solve(&c1, SolveRequest::new(1, Elem::ONE)).unwrap();
    assert_eq!(report.branch, Branch::AOne);
    assert_eq!(hex(roots.as_slice()), vec![0xf, 0x16, 0x18]);
    for r in roots.iter() {
        assert!((c1.cube(r) + c1.square(r) + Elem::ONE).is_zero());
    }

    let c3 = ctx(3);
    let (roots, report) = solve(&c3, SolveRequest::new(1, t(&c3))).unwrap();
    assert_eq!(report.branch, Branch::ThmRoots);
    assert_eq!(report.selected, Selected::Lambda2);
    assert_eq!(hex(roots.as_slice()), vec![0x3726, 0x21600, 0x23326]);
    assert_eq!(roots, brute_roots_h(&c3, 1, t(&c3)));

    let c2 = ctx(2);
    let (roots, report) = solve(&c2, SolveRequest::new(1, c2.omega())).unwrap();
    assert_eq!(report.branch, Branch::TraceMismatch);
    assert_eq!(report.root_exponent, Some(2));
    assert_eq!(hex(roots.as_slice()), vec![0x49]);
    let e = c2
        .enumerate(Level::Q2)
        .filter(|&e| (c2.square(e) + c2.mul(c2.omega(), e)) == Elem::ONE)
        .min()
        .unwrap();
    assert_eq!(roots.as_slice(), &[c2.square(e) + c2.inv(c2.square(e)).unwrap()]);

    let e = solve(&c1, SolveRequest::new(1, c1.omega())).unwrap_err();
    assert!(matches!(e, Error::Membership { .. }));
}

#[test]
fn count_examples() {
    let c3 = ctx(3);
    for a in c3
        .enumerate(Level::Q)
        .filter(|&a| projroots::cubics::is_admissible(&c3, a))
    {
        for ell in [1, 2] {
            assert_eq!(count(&c3, SolveRequest::new(ell, a)).unwrap(), 3);
        }
    }
    let c4 = ctx(4);
    let special = dickson_root_set(&c4).unwrap();
    for a in c4
        .enumerate(Level::Q)
        .filter(|&a| projroots::cubics::is_admissible(&c4, a))
    {
        let (n, branch) = count_with_branch(&c4, SolveRequest::new(2, a)).unwrap();
        assert_eq!(branch, Branch::ThmRoots);
        assert_eq!(n, if special.contains(&a) { 9 } else { 0 });
    }
    assert_eq!(count_class(&ctx(1), 2).unwrap(), vec![0, 1, 2, 9]);
    assert_eq!(count_class(&ctx(1), 1).unwrap(), vec![0, 1, 3]);
    assert_eq!(count_class(&ctx(3), 1).unwrap(), vec![0, 1, 3]);
    assert!(matches!(count_class(&ctx(1), 3), Err(Error::Domain(_))));
    let a = c4.subfield_element(Level::Q, 5);
    for ell in 0..4 {
        assert_eq!(h_eval(&c4, ell, a, Elem::ZERO), a);
        assert_eq!(h_eval(&c4, ell, Elem::ZERO, Elem::ONE), Elem::ZERO);
    }
}

#[test]
fn zheng_examples() {
    let c2 = ctx(2);
    let w = c2.omega();
    let e = zheng_validate(&c2, &ZhengRequest::new(2, Elem::ZERO, w)).unwrap_err();
    assert!(matches!(e, Error::Validation(_)));
    let e = zheng_validate(&c2, &ZhengRequest::new(2, Elem::ONE, w)).unwrap_err();
    assert!(matches!(e, Error::Validation(_)));

    let c3 = ctx(3);
    let t = t(&c3);
    let h = c3.pow(c3.square(t) + t + Elem::ONE, 5);
    let req = ZhengRequest::new(2, h, t);
    let report = zheng_validate(&c3, &req).unwrap();
    let mut x = Elem::ONE;
    for _ in 0..50 {
        x = c3.elem_masked(
            x.bits()
                .wrapping_mul(0x5851_f42d_4c95_7f2d)
                .wrapping_add(0x1405_7b7e_f767_814f),
        );
        let lhs = c3.mul(
            c3.inv(c3.cube(report.u)).unwrap(),
            g_eval(&c3, 2, h, t, c3.mul(report.u, x)),
        );
        assert_eq!(lhs, h_eval(&c3, 2, report.a_scaled, x));
    }

    let roots = zheng_solve(&c3, &req).unwrap();
    assert_eq!(roots.len(), 3);
    assert_eq!(hex(roots.as_slice()), vec![0x102e8, 0x2475c, 0x347fc]);
    assert_eq!(roots, brute_roots_g(&c3, 2, h, t, false));

    let (case_roots, case) = zheng_case(&c3, &req).unwrap();
    assert_eq!(case_roots, roots);
    let fixed = roots.iter().all(|r| c3.frobenius_q(r, 1) == r);
    assert_eq!(case.subfield_flag, Some(fixed));

    for ell in [1, 2] {
        let req = ZhengRequest::new(ell, h, t);
        let mu = zheng_mu_roots(&c3, &req).unwrap();
        assert_eq!(mu, brute_roots_g(&c3, ell, h, t, true));
        assert!(mu.is_empty() || mu.len() == 3);
        if !mu.is_empty() {
            let prod = mu.iter().fold(Elem::ONE, |p, r| c3.mul(p, r));
            assert_eq!(prod, Elem::ONE);
        }
    }
    assert!(matches!(
        zheng_mu_roots(&c3, &ZhengRequest::new(3, h, t)),
        Err(Error::Domain(_))
    ));
    let c4 = ctx(4);
    let (h4, e4) = (c4.subfield_element(Level::Q, 2), c4.subfield_element(Level::Q, 3));
    assert!(matches!(
        zheng_case(&c4, &ZhengRequest::new(2, h4, e4)),
        Err(Error::Domain(_))
    ));
}

#[test]
fn oracle_examples() {
    let c1 = ctx(1);
    assert_eq!(hex(brute_roots_h(&c1, 1, Elem::ONE).as_slice()), vec![0xf, 0x16, 0x18]);
    for m in 1..=3 {
        for ell in 0..3 {
            assert_eq!(
                brute_roots_h(&ctx(m), ell, Elem::ZERO).as_slice(),
                &[Elem::ZERO, Elem::ONE]
            );
        }
    }
}

#[test]
fn sweep_examples() {
    let main = run_sweep(&SweepSpec::new(SweepTarget::Main, (1..=6).collect())).unwrap();
    assert!(main.ok(), "{main:?}");
    let supp = run_sweep(&SweepSpec::new(SweepTarget::Supplement, (1..=16).collect())).unwrap();
    assert!(supp.ok(), "{supp:?}");
    let ni = run_sweep(&SweepSpec::new(SweepTarget::Ni, (1..=4).collect())).unwrap();
    assert!(ni.ok(), "{ni:?}");
    let e = run_sweep(&SweepSpec::new(SweepTarget::Roots, vec![12])).unwrap_err();
    assert!(matches!(e, Error::Feasibility(_)));
}
