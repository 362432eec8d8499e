//! Algebra elements: finite linear combinations of PBW monomials in normal
//! form. Equality is term-by-term.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::cartan::LatticeElem;
use crate::exact::{LaurentPolyQ, RatFuncQ};

use super::word::{straighten_word, Gen, Strategy};
use super::{AlgebraCtx, PbwError, PbwMonomial};

#[derive(Clone)]
pub struct AlgElem {
    ctx: Arc<AlgebraCtx>,
    terms: BTreeMap<PbwMonomial, RatFuncQ>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for AlgElem {}

impl AlgElem {
    pub fn zero(ctx: &Arc<AlgebraCtx>) -> Self {
        AlgElem { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<AlgebraCtx>) -> Self {
        Self::scalar(ctx, RatFuncQ::one())
    }

    pub fn scalar(ctx: &Arc<AlgebraCtx>, c: RatFuncQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(PbwMonomial::unit(&ctx.datum), c);
        }
        AlgElem { ctx: ctx.clone(), terms }
    }

    pub fn from_term_map(ctx: Arc<AlgebraCtx>, terms: BTreeMap<PbwMonomial, RatFuncQ>) -> Self {
        AlgElem { ctx, terms }
    }

    pub fn from_monomial(ctx: &Arc<AlgebraCtx>, m: PbwMonomial, c: RatFuncQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlgElem { ctx: ctx.clone(), terms }
    }

    /// Root-vector generator E_alpha for the positive root at `idx`.
    pub fn e_gen(ctx: &Arc<AlgebraCtx>, idx: usize) -> Self {
        let mut m = PbwMonomial::unit(&ctx.datum);
        m.e[idx] = 1;
        Self::from_monomial(ctx, m, RatFuncQ::one())
    }

    pub fn f_gen(ctx: &Arc<AlgebraCtx>, idx: usize) -> Self {
        let mut m = PbwMonomial::unit(&ctx.datum);
        m.f[idx] = 1;
        Self::from_monomial(ctx, m, RatFuncQ::one())
    }

    pub fn l_elem(ctx: &Arc<AlgebraCtx>, mu: &LatticeElem) -> Result<Self, PbwError> {
        ctx.check_lattice(mu)?;
        let mut m = PbwMonomial::unit(&ctx.datum);
        m.lat = mu.omega_coords.clone();
        Ok(Self::from_monomial(ctx, m, RatFuncQ::one()))
    }

    /// K_i = L_{alpha_i}.
    pub fn k_gen(ctx: &Arc<AlgebraCtx>, i: usize) -> Self {
        let alpha = LatticeElem::simple_root(&ctx.datum, i);
        Self::l_elem(ctx, &alpha).expect("roots lie in every lattice")
    }

    pub fn k_gen_inv(ctx: &Arc<AlgebraCtx>, i: usize) -> Self {
        let alpha = LatticeElem::simple_root(&ctx.datum, i).neg();
        Self::l_elem(ctx, &alpha).expect("roots lie in every lattice")
    }

    /// Modified (barred) root vector: (q_alpha - q_alpha^-1) E_alpha.
    pub fn e_bar(ctx: &Arc<AlgebraCtx>, idx: usize) -> Self {
        Self::e_gen(ctx, idx).scaled(&ctx.q_alpha_diff(idx))
    }

    pub fn f_bar(ctx: &Arc<AlgebraCtx>, idx: usize) -> Self {
        Self::f_gen(ctx, idx).scaled(&ctx.q_alpha_diff(idx))
    }

    /// Divided power E_i^(n) = E_i^n / [n]_{q_i}! for a simple root index.
    pub fn divided_power_e(ctx: &Arc<AlgebraCtx>, i: usize, n: u32) -> Self {
        let root_idx = ctx.datum.simple_root_index(i);
        let d = ctx.datum.d[i];
        let fact = crate::qcalc::q_factorial(n).subst_q_pow(d);
        let mut m = PbwMonomial::unit(&ctx.datum);
        m.e[root_idx] = n;
        Self::from_monomial(ctx, m, fact.inv().expect("q-factorial nonzero"))
    }

    pub fn divided_power_f(ctx: &Arc<AlgebraCtx>, i: usize, n: u32) -> Self {
        let root_idx = ctx.datum.simple_root_index(i);
        let d = ctx.datum.d[i];
        let fact = crate::qcalc::q_factorial(n).subst_q_pow(d);
        let mut m = PbwMonomial::unit(&ctx.datum);
        m.f[root_idx] = n;
        Self::from_monomial(ctx, m, fact.inv().expect("q-factorial nonzero"))
    }

    pub fn ctx(&self) -> &Arc<AlgebraCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&PbwMonomial::unit(&self.ctx.datum))
                .map_or(false, |c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> RatFuncQ {
        self.terms.get(m).cloned().unwrap_or_else(RatFuncQ::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &RatFuncQ)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (PbwMonomial, RatFuncQ)> {
        self.terms.into_iter()
    }

    pub fn scaled(&self, c: &RatFuncQ) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        AlgElem {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn add_assign_term(&mut self, m: PbwMonomial, c: RatFuncQ) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_insert_with(RatFuncQ::zero);
        *e = &*e + &c;
        if e.is_zero() {
            // resolved on cleanup
        }
    }

    fn cleanup(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    /// Straighten an arbitrary generator word (exposed for the CLI and for
    /// the confluence checks).
    pub fn from_word(
        ctx: &Arc<AlgebraCtx>,
        word: &[Gen],
        strategy: Strategy,
    ) -> Result<Self, PbwError> {
        straighten_word(ctx, word, strategy)
    }

    /// Rescale each monomial by prod_alpha (q_alpha - q_alpha^-1)^(±(a+b)):
    /// `to_barred` rewrites the coefficients so that monomials are read as
    /// products of barred root vectors; `from_barred` undoes it.
    pub fn to_barred(&self) -> Self {
        self.rescale_barred(-1)
    }

    pub fn from_barred(&self) -> Self {
        self.rescale_barred(1)
    }

    fn rescale_barred(&self, sign: i64) -> Self {
        let out = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut factor = RatFuncQ::one();
                for idx in 0..self.ctx.datum.num_positive_roots() {
                    let count = (m.f[idx] + m.e[idx]) as i64;
                    if count != 0 {
                        factor = &factor * &self.ctx.q_alpha_diff(idx).pow(sign * count);
                    }
                }
                (m.clone(), &factor * c)
            })
            .collect();
        AlgElem { ctx: self.ctx.clone(), terms: out }
    }

    /// Largest E-part height over the support.
    pub fn max_e_height(&self) -> i64 {
        self.terms
            .keys()
            .map(|m| m.e_height(&self.ctx.datum))
            .max()
            .unwrap_or(0)
    }

    pub fn display_monomial(&self, m: &PbwMonomial) -> String {
        display_monomial(&self.ctx, m)
    }
}

pub(crate) fn display_monomial(ctx: &AlgebraCtx, m: &PbwMonomial) -> String {
    if m.is_unit() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    for (idx, pow) in m.f.iter().enumerate() {
        if *pow > 0 {
            let mut s = format!("F{}", ctx.root_name(idx));
            if *pow > 1 {
                s.push_str(&format!("^{}", pow));
            }
            parts.push(s);
        }
    }
    if m.lat.iter().any(|c| *c != 0) {
        parts.push(display_lattice(ctx, &m.lat));
    }
    for (idx, pow) in m.e.iter().enumerate() {
        if *pow > 0 {
            let mut s = format!("E{}", ctx.root_name(idx));
            if *pow > 1 {
                s.push_str(&format!("^{}", pow));
            }
            parts.push(s);
        }
    }
    parts.join("*")
}

fn display_lattice(ctx: &AlgebraCtx, omega: &[i64]) -> String {
    // Prefer K_i / K_i^-1 / K12 aliases for (multiples of) roots.
    let mu = LatticeElem::from_weight_coords(omega.to_vec());
    if let Some(rc) = mu.root_coords(&ctx.datum) {
        for (idx, root) in ctx.datum.positive_roots.iter().enumerate() {
            if rc == *root {
                return format!("K{}", ctx.root_name(idx));
            }
            if rc.iter().zip(root).all(|(a, b)| *a == -b) {
                return format!("K{}^-1", ctx.root_name(idx));
            }
        }
    }
    // Generic weight-basis literal L[c1w1+c2w2]
    let mut inner = String::new();
    for (i, c) in omega.iter().enumerate() {
        if *c == 0 {
            continue;
        }
        if !inner.is_empty() && *c > 0 {
            inner.push('+');
        }
        if *c == -1 {
            inner.push('-');
        } else if *c != 1 {
            inner.push_str(&format!("{}", c));
        }
        inner.push_str(&format!("w{}", i + 1));
    }
    format!("L[{}]", inner)
}

impl Add for &AlgElem {
    type Output = AlgElem;
    fn add(self, rhs: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_assign_term(m.clone(), c.clone());
        }
        out.cleanup()
    }
}

impl Sub for &AlgElem {
    type Output = AlgElem;
    fn sub(self, rhs: &AlgElem) -> AlgElem {
        let mut out = self.clone();
        for (m, c) in rhs.terms.iter() {
            out.add_assign_term(m.clone(), &RatFuncQ::zero() - c);
        }
        out.cleanup()
    }
}

impl Neg for &AlgElem {
    type Output = AlgElem;
    fn neg(self) -> AlgElem {
        AlgElem {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), &RatFuncQ::zero() - c))
                .collect(),
        }
    }
}

impl Mul for &AlgElem {
    type Output = AlgElem;
    fn mul(self, rhs: &AlgElem) -> AlgElem {
        let mut out = AlgElem::zero(&self.ctx);
        for (ma, ca) in self.terms.iter() {
            for (mb, cb) in rhs.terms.iter() {
                let cab = ca * cb;
                let expansion = self.ctx.cached_mono_product(ma, mb);
                for (m, c) in expansion.iter() {
                    out.add_assign_term(m.clone(), &cab * c);
                }
            }
        }
        out.cleanup()
    }
}

impl fmt::Display for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Display order: higher total degree first, then monomial order.
        let mut items: Vec<(&PbwMonomial, &RatFuncQ)> = self.terms.iter().collect();
        items.sort_by(|(ma, _), (mb, _)| {
            mb.total_degree()
                .cmp(&ma.total_degree())
                .then_with(|| mb.cmp(ma))
        });
        // Common-denominator form when every coefficient shares one.
        let dens: Vec<&LaurentPolyQ> = items.iter().map(|(_, c)| c.denom()).collect();
        let common = dens[0];
        let shared = !common.is_one() && dens.iter().all(|d| *d == common);
        let mut body = String::new();
        for (i, (m, c)) in items.iter().enumerate() {
            let coeff = if shared {
                RatFuncQ::from_laurent(c.numer().clone())
            } else {
                (*c).clone()
            };
            let ms = display_monomial(&self.ctx, m);
            let (sign, mag) = split_sign(&coeff);
            if i == 0 {
                if sign {
                    body.push('-');
                }
            } else {
                body.push_str(if sign { " - " } else { " + " });
            }
            if ms == "1" {
                body.push_str(&format!("{}", mag));
            } else if mag.is_one() {
                body.push_str(&ms);
            } else {
                body.push_str(&format!("{}*{}", mag, ms));
            }
        }
        if shared {
            write!(f, "({})/({})", body, common)
        } else {
            write!(f, "{}", body)
        }
    }
}

/// Split a leading minus sign off for prettier term lists.
fn split_sign(c: &RatFuncQ) -> (bool, RatFuncQ) {
    use num_traits::Signed;
    if c.numer().num_terms() >= 1 {
        let lead = c.numer().leading_coeff();
        if lead.is_negative() {
            return (true, &RatFuncQ::zero() - c);
        }
    }
    (false, c.clone())
}

impl fmt::Debug for AlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
