//! Truncated polynomials in a central formal parameter t with specialized
//! algebra elements as coefficients. "Exponentials" downstream are always
//! these truncated series; there is no analytic content.

use std::sync::Arc;

use num_traits::One;

use crate::exact::{BigRat, CycloScalar};

use super::{SpecAlgElem, SpecCtx};

#[derive(Clone)]
pub struct TPoly {
    ctx: Arc<SpecCtx>,
    coeffs: Vec<SpecAlgElem>,
}

impl PartialEq for TPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for TPoly {}

impl TPoly {
    pub fn new(ctx: &Arc<SpecCtx>, coeffs: Vec<SpecAlgElem>) -> Self {
        assert!(!coeffs.is_empty());
        TPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn constant(ctx: &Arc<SpecCtx>, value: SpecAlgElem, order: usize) -> Self {
        let mut coeffs = vec![SpecAlgElem::zero(ctx); order + 1];
        coeffs[0] = value;
        TPoly { ctx: ctx.clone(), coeffs }
    }

    pub fn zero(ctx: &Arc<SpecCtx>, order: usize) -> Self {
        TPoly { ctx: ctx.clone(), coeffs: vec![SpecAlgElem::zero(ctx); order + 1] }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> SpecAlgElem {
        self.coeffs
            .get(n)
            .cloned()
            .unwrap_or_else(|| SpecAlgElem::zero(&self.ctx))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TPoly {
            ctx: self.ctx.clone(),
            coeffs: (0..=order).map(|n| self.coeff(n).add(&rhs.coeff(n))).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        TPoly {
            ctx: self.ctx.clone(),
            coeffs: (0..=order).map(|n| self.coeff(n).sub(&rhs.coeff(n))).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let order = self.order().min(rhs.order());
        let mut coeffs = vec![SpecAlgElem::zero(&self.ctx); order + 1];
        for n in 0..=order {
            for k in 0..=n {
                let t = self.coeff(k).mul(&rhs.coeff(n - k));
                coeffs[n] = coeffs[n].add(&t);
            }
        }
        TPoly { ctx: self.ctx.clone(), coeffs }
    }

    pub fn scale_elem(&self, c: &SpecAlgElem) -> Self {
        TPoly {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// exp(t * s * base) truncated: sum t^n (s*base)^n / n! with `base` a
    /// central element and `s` a scalar.
    pub fn exp_central(
        ctx: &Arc<SpecCtx>,
        base: &SpecAlgElem,
        s: &CycloScalar,
        order: usize,
    ) -> Self {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut cur = SpecAlgElem::one(ctx);
        let mut factorial = BigRat::one();
        coeffs.push(cur.clone());
        for n in 1..=order {
            cur = cur.mul(base).scale(s);
            factorial = factorial * BigRat::from_integer((n as i64).into());
            coeffs.push(cur.scale_rat(&(BigRat::one() / factorial.clone())));
        }
        TPoly { ctx: ctx.clone(), coeffs }
    }

    /// (exp(t*s*base) - 1) divided by `base`, which is exact on the series:
    /// sum_{n>=1} t^n s^n base^(n-1) / n!.
    pub fn expm1_div_base(
        ctx: &Arc<SpecCtx>,
        base: &SpecAlgElem,
        s: &CycloScalar,
        order: usize,
    ) -> Self {
        let mut coeffs = vec![SpecAlgElem::zero(ctx)];
        let mut base_pow = SpecAlgElem::one(ctx);
        let mut s_pow = s.clone();
        let mut factorial = BigRat::one();
        for n in 1..=order {
            factorial = factorial * BigRat::from_integer((n as i64).into());
            let c = base_pow
                .scale(&s_pow)
                .scale_rat(&(BigRat::one() / factorial.clone()));
            coeffs.push(c);
            base_pow = base_pow.mul(base);
            s_pow = s_pow.mul(s);
        }
        TPoly { ctx: ctx.clone(), coeffs }
    }
}

impl std::fmt::Debug for TPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (n, c) in self.coeffs.iter().enumerate() {
            writeln!(f, "t^{}: {}", n, c)?;
        }
        Ok(())
    }
}
