//! Cube roots in the whole field by descent through the 3-Sylow subgroup.
//!
//! Write `2^(6m) - 1 = 3^s * t` with `3 ∤ t`. For a cube `y`, `y^u` with
//! `3u ≡ 1 (mod t)` is a cube root up to an error in the 3-Sylow subgroup;
//! the error's discrete log in base `g = z^t` (`z` a fixed non-cube) is
//! recovered one base-3 digit at a time and divided out.

use super::{Elem, FieldCtx, Level};

#[derive(Clone, Debug)]
pub struct CubeRootData {
    /// 3-adic valuation of the group order.
    pub s: u32,
    /// Group order with all factors of 3 removed.
    pub t: u128,
    /// Inverse of 3 modulo `t`.
    pub t_inv3: u128,
    /// First non-cube of the whole field in enumeration order.
    pub non_cube: Elem,
    /// Generator of the 3-Sylow subgroup.
    pub sylow_gen: Elem,
}

impl CubeRootData {
    pub(super) fn placeholder() -> Self {
        Self {
            s: 0,
            t: 1,
            t_inv3: 0,
            non_cube: Elem::ZERO,
            sylow_gen: Elem::ONE,
        }
    }

    pub(super) fn compute(ctx: &FieldCtx) -> Self {
        let order = ctx.card.q6_minus_1;
        let mut s = 0;
        let mut t = order;
        while t.is_multiple_of(3) {
            t /= 3;
            s += 1;
        }
        let t_inv3 = match t % 3 {
            1 => (2 * t + 1) / 3,
            _ => (t + 1) / 3,
        };
        let non_cube = ctx
            .enumerate(Level::Q6)
            .find(|&z| !z.is_zero() && ctx.pow(z, ctx.card.q6_minus_1_over_3) != Elem::ONE)
            .expect("3 divides 2^(6m)-1, so non-cubes exist");
        let sylow_gen = ctx.pow(non_cube, t);
        Self {
            s,
            t,
            t_inv3,
            non_cube,
            sylow_gen,
        }
    }
}

impl FieldCtx {
    /// Whether `y` is a cube in the whole field.
    pub fn is_cube(&self, y: Elem) -> bool {
        y.is_zero() || self.pow(y, self.card.q6_minus_1_over_3) == Elem::ONE
    }

    /// One cube root of `y` in the whole field, if any.
    pub fn cube_root(&self, y: Elem) -> Option<Elem> {
        if y.is_zero() {
            return Some(Elem::ZERO);
        }
        if !self.is_cube(y) {
            return None;
        }
        let d = &self.cube;
        let x0 = self.pow(y, d.t_inv3);
        // err = x0^3 / y lies in the 3-Sylow subgroup.
        let y_inv = self.inv(y).ok()?;
        let err = self.mul(self.cube(x0), y_inv);
        let e = self.sylow_log(err)?;
        debug_assert_eq!(e % 3, 0);
        let sylow_order = 3u128.pow(d.s);
        let h = self.pow(d.sylow_gen, (sylow_order - e / 3) % sylow_order);
        let x = self.mul(x0, h);
        debug_assert_eq!(self.cube(x), y);
        Some(x)
    }

    /// All `v` with `v^3 = y`: `{0}` for `y = 0`, otherwise empty or three
    /// elements, sorted by encoding.
    pub fn cube_roots(&self, y: Elem) -> Vec<Elem> {
        if y.is_zero() {
            return vec![Elem::ZERO];
        }
        match self.cube_root(y) {
            None => Vec::new(),
            Some(x) => {
                let w = self.omega;
                let mut out = vec![x, self.mul(x, w), self.mul(x, self.square(w))];
                out.sort();
                out
            }
        }
    }

    // Discrete log base sylow_gen, digit by digit.
    fn sylow_log(&self, target: Elem) -> Option<u128> {
        let d = &self.cube;
        if d.s == 0 {
            return (target == Elem::ONE).then_some(0);
        }
        let pow3 = |k: u32| 3u128.pow(k);
        let gamma = self.pow(d.sylow_gen, pow3(d.s - 1));
        let gamma2 = self.square(gamma);
        let mut acc = target;
        let mut e = 0u128;
        for j in 0..d.s {
            let probe = self.pow(acc, pow3(d.s - 1 - j));
            let digit = if probe == Elem::ONE {
                0
            } else if probe == gamma {
                1
            } else if probe == gamma2 {
                2
            } else {
                return None;
            };
            if digit != 0 {
                let step = digit * pow3(j);
                e += step;
                let order = pow3(d.s);
                acc = self.mul(acc, self.pow(d.sylow_gen, order - step));
            }
        }
        (acc == Elem::ONE).then_some(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldCtx;

    #[test]
    fn roots_of_one_and_zero() {
        for m in 1..=5 {
            let ctx = FieldCtx::with_m(m).unwrap();
            let w = ctx.omega();
            let mut expect = vec![Elem::ONE, w, ctx.square(w)];
            expect.sort();
            assert_eq!(ctx.cube_roots(Elem::ONE), expect);
            assert_eq!(ctx.cube_roots(Elem::ZERO), vec![Elem::ZERO]);
        }
    }

    // Exhaustive at m = 1 (GF(64)): cubing is 3-to-1 on the 63 units, so 42
    // units are non-cubes and each of the 21 cubes has exactly 3 roots.
    #[test]
    fn exhaustive_m1() {
        let ctx = FieldCtx::with_m(1).unwrap();
        let mut non_cubes = 0;
        for y in ctx.enumerate(Level::Q6).skip(1) {
            let brute: Vec<Elem> = ctx.enumerate(Level::Q6).filter(|&v| ctx.cube(v) == y).collect();
            let got = ctx.cube_roots(y);
            assert_eq!(got, brute, "y = {y}");
            if got.is_empty() {
                non_cubes += 1;
            }
        }
        assert_eq!(non_cubes, 42);
    }

    #[test]
    fn sylow_depth_varies_with_m() {
        // v3(2^(6m) - 1) = 2 + v3(m)
        for (m, s) in [(1, 2), (3, 3), (9, 4), (5, 2)] {
            let ctx = FieldCtx::with_m(m).unwrap();
            assert_eq!(ctx.cube.s, s, "m = {m}");
            let mut x = Elem(0x1234567);
            x = ctx.elem_masked(x.bits());
            for _ in 0..50 {
                x = ctx.mul(x, x) + Elem(0b1011);
                let y = ctx.cube(x);
                let roots = ctx.cube_roots(y);
                assert_eq!(roots.len(), if y.is_zero() { 1 } else { 3 });
                assert!(roots.contains(&x));
                assert!(roots.iter().all(|&r| ctx.cube(r) == y));
            }
        }
    }
}
