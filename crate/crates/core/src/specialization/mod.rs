//! Specialization at q = eps (odd primitive l-th root of 1, l > d, or
//! l = 1): the specialized integral form in barred generators, the central
//! elements x_alpha, y_alpha, z_lambda, the divided-power derivations, the
//! Poisson bracket on the center, and truncated exponentials of the
//! derivations in a central formal parameter t.

mod derivation;
mod poisson;
mod tpoly;

pub use derivation::{
    derivation_apply, exp_derivation, DerKind,
};
pub use poisson::poisson_bracket;
pub use tpoly::TPoly;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cartan::LatticeElem;
use crate::exact::{BigRat, CycloField, CycloScalar, ExactError};
use crate::pbw::{AlgElem, AlgebraCtx, PbwMonomial};

#[derive(Debug, Clone, thiserror::Error)]
pub enum SpecError {
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("ell = {0} rejected: must be odd and either 1 or greater than max d_i = {1}")]
    EllTooSmall(i64, i64),
    #[error("coefficient of {monomial} has a pole at the root of unity: {detail}")]
    Pole { monomial: String, detail: String },
    #[error("inputs are not Poisson-compatible: commutator does not vanish at the root (term {0})")]
    NotPoissonCompatible(String),
}

/// Shared context: the generic algebra plus the cyclotomic field.
pub struct SpecCtx {
    pub alg: Arc<AlgebraCtx>,
    pub field: Arc<CycloField>,
    pub ell: i64,
}

impl SpecCtx {
    pub fn new(alg: &Arc<AlgebraCtx>, ell: i64) -> Result<Arc<Self>, SpecError> {
        let d_max = alg.datum.d.iter().copied().max().unwrap_or(1);
        if ell != 1 && ell <= d_max {
            return Err(SpecError::EllTooSmall(ell, d_max));
        }
        let field = CycloField::new(ell)?;
        Ok(Arc::new(SpecCtx { alg: alg.clone(), field, ell }))
    }

    pub fn epsilon(&self) -> CycloScalar {
        CycloScalar::epsilon(&self.field)
    }

    pub fn eps_pow(&self, k: i64) -> CycloScalar {
        CycloScalar::epsilon_pow(&self.field, k)
    }

    pub fn scalar_rat(&self, r: BigRat) -> CycloScalar {
        CycloScalar::from_rat(&self.field, r)
    }

    pub fn scalar_int(&self, n: i64) -> CycloScalar {
        CycloScalar::from_int(&self.field, n)
    }
}

impl fmt::Debug for SpecCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpecCtx({}, ell={})", self.alg.datum.tag, self.ell)
    }
}

/// Element of the specialized algebra: PBW monomials read in the *barred*
/// root vectors with coefficients in Q(eps).
#[derive(Clone)]
pub struct SpecAlgElem {
    ctx: Arc<SpecCtx>,
    terms: BTreeMap<PbwMonomial, CycloScalar>,
}

impl PartialEq for SpecAlgElem {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for SpecAlgElem {}

impl SpecAlgElem {
    pub fn zero(ctx: &Arc<SpecCtx>) -> Self {
        SpecAlgElem { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn one(ctx: &Arc<SpecCtx>) -> Self {
        Self::from_monomial(
            ctx,
            PbwMonomial::unit(&ctx.alg.datum),
            CycloScalar::one(&ctx.field),
        )
    }

    pub fn from_monomial(ctx: &Arc<SpecCtx>, m: PbwMonomial, c: CycloScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        SpecAlgElem { ctx: ctx.clone(), terms }
    }

    /// Barred generator Ebar_alpha.
    pub fn e_bar(ctx: &Arc<SpecCtx>, idx: usize) -> Self {
        let mut m = PbwMonomial::unit(&ctx.alg.datum);
        m.e[idx] = 1;
        Self::from_monomial(ctx, m, CycloScalar::one(&ctx.field))
    }

    pub fn f_bar(ctx: &Arc<SpecCtx>, idx: usize) -> Self {
        let mut m = PbwMonomial::unit(&ctx.alg.datum);
        m.f[idx] = 1;
        Self::from_monomial(ctx, m, CycloScalar::one(&ctx.field))
    }

    pub fn l_elem(ctx: &Arc<SpecCtx>, mu: &LatticeElem) -> Self {
        let mut m = PbwMonomial::unit(&ctx.alg.datum);
        m.lat = mu.omega_coords.clone();
        Self::from_monomial(ctx, m, CycloScalar::one(&ctx.field))
    }

    /// Central element x_alpha = Ebar_alpha^l.
    pub fn x_central(ctx: &Arc<SpecCtx>, idx: usize) -> Self {
        let mut m = PbwMonomial::unit(&ctx.alg.datum);
        m.e[idx] = ctx.ell as u32;
        Self::from_monomial(ctx, m, CycloScalar::one(&ctx.field))
    }

    /// Central element y_alpha = Fbar_alpha^l.
    pub fn y_central(ctx: &Arc<SpecCtx>, idx: usize) -> Self {
        let mut m = PbwMonomial::unit(&ctx.alg.datum);
        m.f[idx] = ctx.ell as u32;
        Self::from_monomial(ctx, m, CycloScalar::one(&ctx.field))
    }

    /// Central element z_lambda = L_lambda^l = L_{l*lambda}.
    pub fn z_central(ctx: &Arc<SpecCtx>, lambda: &LatticeElem) -> Self {
        Self::l_elem(ctx, &lambda.scaled(ctx.ell))
    }

    pub fn ctx(&self) -> &Arc<SpecCtx> {
        &self.ctx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&PbwMonomial, &CycloScalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &PbwMonomial) -> CycloScalar {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| CycloScalar::zero(&self.ctx.field))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        out.cleanup()
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        SpecAlgElem {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &CycloScalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        SpecAlgElem {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect(),
        }
    }

    pub fn scale_rat(&self, r: &BigRat) -> Self {
        self.scale(&self.ctx.scalar_rat(r.clone()))
    }

    fn add_assign_term(&mut self, m: PbwMonomial, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let v = e.get().add(&c);
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    fn cleanup(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    /// Multiplication in the specialized algebra: straighten through the
    /// generic algebra and specialize the structure constants. Products of
    /// integral elements stay integral, which the specialization enforces
    /// at runtime.
    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(&self.ctx);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let cab = ca.mul(cb);
                // generic product of the two barred monomials
                let a = AlgElem::from_monomial(&self.ctx.alg, ma.clone(), crate::exact::RatFuncQ::one())
                    .from_barred();
                let b = AlgElem::from_monomial(&self.ctx.alg, mb.clone(), crate::exact::RatFuncQ::one())
                    .from_barred();
                let prod = (&a * &b).to_barred();
                for (m, c) in prod.terms() {
                    let spec = c
                        .specialize(&self.ctx.field)
                        .expect("product of integral elements is integral");
                    out.add_assign_term(m.clone(), spec.mul(&cab));
                }
            }
        }
        out.cleanup()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ctx);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Canonical lift to the generic algebra (unbarred PBW basis):
    /// coefficients are the canonical residue polynomials re-read in q, and
    /// the barred-basis scaling is undone so that specializing the lift
    /// returns the element.
    pub fn lift(&self) -> AlgElem {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.clone(), crate::exact::RatFuncQ::from_laurent(c.lift()));
        }
        AlgElem::from_term_map(self.ctx.alg.clone(), terms).from_barred()
    }
}

/// Coefficientwise specialization of a generic element, read in the barred
/// basis. Errors identify the offending coefficient.
pub fn specialize_elem(ctx: &Arc<SpecCtx>, a: &AlgElem) -> Result<SpecAlgElem, SpecError> {
    let barred = a.to_barred();
    let mut out = SpecAlgElem::zero(ctx);
    for (m, c) in barred.terms() {
        let spec = c.specialize(&ctx.field).map_err(|e| SpecError::Pole {
            monomial: barred.display_monomial(m),
            detail: e.to_string(),
        })?;
        out.add_assign_term(m.clone(), spec);
    }
    Ok(out.cleanup())
}

/// The generating set used by centrality checks: barred E/F for every
/// positive root, K_i, and L_omega_i when the lattice is P.
pub fn spec_generator_list(ctx: &Arc<SpecCtx>) -> Vec<(String, AlgElem)> {
    let alg = &ctx.alg;
    let mut out = Vec::new();
    for idx in 0..alg.datum.num_positive_roots() {
        out.push((format!("Ebar{}", alg.root_name(idx)), AlgElem::e_bar(alg, idx)));
        out.push((format!("Fbar{}", alg.root_name(idx)), AlgElem::f_bar(alg, idx)));
    }
    for i in 0..alg.datum.rank {
        out.push((format!("K{}", i + 1), AlgElem::k_gen(alg, i)));
        if matches!(alg.lattice, crate::cartan::Lattice::Q) {
            continue;
        }
        let w = LatticeElem::fundamental(alg.datum.rank, i);
        out.push((
            format!("L[w{}]", i + 1),
            AlgElem::l_elem(alg, &w).expect("P contains omega"),
        ));
    }
    out
}

/// Exact centrality: `[lift(c), g]` specializes to zero for every listed
/// generator; returns the first failing generator name.
pub fn centrality_counterexample(
    ctx: &Arc<SpecCtx>,
    c: &SpecAlgElem,
) -> Result<Option<String>, SpecError> {
    let lift = c.lift();
    for (name, g) in spec_generator_list(ctx) {
        let comm = lift.commutator(&g);
        let spec = specialize_elem(ctx, &comm)?;
        if !spec.is_zero() {
            return Ok(Some(name));
        }
    }
    Ok(None)
}

impl fmt::Display for SpecAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            // barred monomials: reuse the generic printer, marking bars
            let base = crate::pbw::AlgElem::from_monomial(
                &self.ctx.alg,
                m.clone(),
                crate::exact::RatFuncQ::one(),
            );
            write!(f, "({})*{}", c, base.display_monomial(m))?;
        }
        Ok(())
    }
}

impl fmt::Debug for SpecAlgElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{Lattice, TypeTag};
    use crate::qcalc::q_bracket;

    fn sctx(tag: TypeTag, ell: i64) -> Arc<SpecCtx> {
        let alg = AlgebraCtx::new(tag, Lattice::P).unwrap();
        SpecCtx::new(&alg, ell).unwrap()
    }

    #[test]
    fn ell_gate() {
        let alg = AlgebraCtx::new(TypeTag::A1, Lattice::P).unwrap();
        assert!(SpecCtx::new(&alg, 3).is_ok());
        assert!(SpecCtx::new(&alg, 1).is_ok());
        assert!(CycloField::new(2).is_err());
    }

    #[test]
    fn specialize_kills_bracket_ell() {
        // [3]_q Ebar_1 specializes to zero at ell = 3
        let ctx = sctx(TypeTag::A1, 3);
        let a = AlgElem::e_bar(&ctx.alg, 0).scaled(&q_bracket(3));
        let s = specialize_elem(&ctx, &a).unwrap();
        assert!(s.is_zero());
        // Ebar_1 itself has coefficient 1
        let b = AlgElem::e_bar(&ctx.alg, 0);
        let sb = specialize_elem(&ctx, &b).unwrap();
        assert_eq!(sb, SpecAlgElem::e_bar(&ctx, 0));
    }

    #[test]
    fn conjugation_example() {
        // K_1 Ebar_1 K_1^-1 = q^(2 d_1) Ebar_1 -> eps^2 Ebar_1
        let ctx = sctx(TypeTag::A1, 3);
        let a = &(&AlgElem::k_gen(&ctx.alg, 0) * &AlgElem::e_bar(&ctx.alg, 0))
            * &AlgElem::k_gen_inv(&ctx.alg, 0);
        let s = specialize_elem(&ctx, &a).unwrap();
        let expect = SpecAlgElem::e_bar(&ctx, 0).scale(&ctx.eps_pow(2));
        assert_eq!(s, expect);
    }

    #[test]
    fn central_powers_commute_small() {
        let ctx = sctx(TypeTag::A1, 3);
        for c in [
            SpecAlgElem::x_central(&ctx, 0),
            SpecAlgElem::y_central(&ctx, 0),
            SpecAlgElem::z_central(&ctx, &LatticeElem::fundamental(1, 0)),
        ] {
            assert_eq!(centrality_counterexample(&ctx, &c).unwrap(), None);
        }
    }

    #[test]
    fn ell_one_is_commutative() {
        let ctx = sctx(TypeTag::A2, 1);
        let gens = spec_generator_list(&ctx);
        for (na, a) in &gens {
            for (nb, b) in &gens {
                let comm = a.commutator(b);
                let s = specialize_elem(&ctx, &comm).unwrap();
                assert!(s.is_zero(), "[{na}, {nb}] != 0 at ell = 1");
            }
        }
    }

    #[test]
    fn pole_reported_for_nonintegral() {
        // The divided power E_1^(3) = E_1^3/[3]! has a genuine pole at the
        // cube root of unity ([3]_q vanishes there); specializing must name
        // it. At ell = 1 even plain E_1 = Ebar_1/(q - q^-1) poles.
        let ctx = sctx(TypeTag::A1, 3);
        let dp = AlgElem::divided_power_e(&ctx.alg, 0, 3);
        match specialize_elem(&ctx, &dp) {
            Err(SpecError::Pole { .. }) => {}
            other => panic!("expected pole, got {:?}", other.map(|_| ())),
        }
        let ctx1 = sctx(TypeTag::A1, 1);
        match specialize_elem(&ctx1, &AlgElem::e_gen(&ctx1.alg, 0)) {
            Err(SpecError::Pole { .. }) => {}
            other => panic!("expected pole at ell = 1, got {:?}", other.map(|_| ())),
        }
    }
}
