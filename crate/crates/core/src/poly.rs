//! Dense univariate polynomials with coefficients in the field.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// Coefficients in ascending order, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: Elem) -> Self {
        Self::new(vec![c])
    }

    /// `x^k`
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![Elem::ZERO; k + 1];
        coeffs[k] = Elem::ONE;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn eval(&self, ctx: &FieldCtx, x: Elem) -> Elem {
        self.coeffs.iter().rev().fold(Elem::ZERO, |acc, &c| ctx.mul(acc, x) + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] += ctx.mul(a, b);
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, ctx: &FieldCtx, c: Elem) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| ctx.mul(a, c)).collect())
    }

    /// Formal derivative (characteristic 2: only odd-degree terms survive).
    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| if i % 2 == 1 { c } else { Elem::ZERO })
                .collect(),
        )
    }

    pub fn rem(&self, ctx: &FieldCtx, divisor: &Poly) -> Result<Poly> {
        let dd = divisor.degree().ok_or(Error::ZeroDivision)?;
        let lead_inv = ctx.inv(divisor.lead())?;
        let mut r = self.coeffs.clone();
        while r.len() > dd && !r.is_empty() {
            let top = *r.last().unwrap();
            if top.is_zero() {
                r.pop();
                continue;
            }
            let factor = ctx.mul(top, lead_inv);
            let shift = r.len() - 1 - dd;
            for (j, &c) in divisor.coeffs.iter().enumerate() {
                r[shift + j] += ctx.mul(factor, c);
            }
            r.pop();
        }
        Ok(Poly::new(r))
    }

    pub fn monic(&self, ctx: &FieldCtx) -> Result<Poly> {
        let inv = ctx.inv(self.lead())?;
        Ok(self.scale(ctx, inv))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(ctx: &FieldCtx, a: &Poly, b: &Poly) -> Result<Poly> {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(ctx, &b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            Ok(a)
        } else {
            a.monic(ctx)
        }
    }

    /// No repeated roots in the algebraic closure.
    pub fn is_squarefree(&self, ctx: &FieldCtx) -> Result<bool> {
        let g = Poly::gcd(ctx, self, &self.derivative())?;
        Ok(g.degree() == Some(0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Level;

    #[test]
    fn product_evaluates_pointwise() {
        let ctx = FieldCtx::with_m(2).unwrap();
        let w = ctx.omega();
        let p = Poly::new(vec![w, Elem::ONE, Elem::ZERO, w]);
        let q = Poly::new(vec![Elem::ONE, w, Elem::ONE]);
        let pq = p.mul(&ctx, &q);
        assert_eq!(pq.degree(), Some(5));
        for x in ctx.enumerate(Level::Q3).take(64) {
            assert_eq!(pq.eval(&ctx, x), ctx.mul(p.eval(&ctx, x), q.eval(&ctx, x)));
        }
        assert_eq!(pq.rem(&ctx, &q).unwrap(), Poly::zero());
    }

    #[test]
    fn squarefree_detection() {
        let ctx = FieldCtx::with_m(1).unwrap();
        // (X+1)^2 = X^2 + 1
        let sq = Poly::new(vec![Elem::ONE, Elem::ZERO, Elem::ONE]);
        assert!(!sq.is_squarefree(&ctx).unwrap());
        // X^3 + X + 1
        let f = Poly::new(vec![Elem::ONE, Elem::ONE, Elem::ZERO, Elem::ONE]);
        assert!(f.is_squarefree(&ctx).unwrap());
        assert_eq!(f.derivative(), Poly::new(vec![Elem::ONE, Elem::ZERO, Elem::ONE]));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = Poly::new(vec![Elem::ONE, Elem::ZERO, Elem::ZERO]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(Poly::new(vec![Elem::ZERO]).degree(), None);
        assert_eq!(Poly::monomial(3).coeff(3), Elem::ONE);
    }
}
