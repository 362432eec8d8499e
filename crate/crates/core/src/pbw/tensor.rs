//! Degree-truncated elements of the two- and three-fold tensor powers.
//!
//! Arithmetic here is exact: the cutoff is bookkeeping carried by the
//! R-matrix machinery (which decides up to which grade a computed identity
//! is meaningful), not a lossy filter applied during multiplication.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::cartan::Root;
use crate::exact::RatFuncQ;

use super::elem::display_monomial;
use super::{AlgElem, AlgebraCtx, PbwMonomial};

#[derive(Clone)]
pub struct TensorElem {
    ctx: Arc<AlgebraCtx>,
    slots: usize,
    terms: BTreeMap<Vec<PbwMonomial>, RatFuncQ>,
    /// Grading cutoff carried along for reporting; `None` for exact finite
    /// elements like coproducts of algebra elements.
    pub cutoff: Option<i64>,
}

impl PartialEq for TensorElem {
    fn eq(&self, other: &Self) -> bool {
        self.slots == other.slots && self.terms == other.terms
    }
}

impl Eq for TensorElem {}

impl TensorElem {
    pub fn zero(ctx: &Arc<AlgebraCtx>, slots: usize) -> Self {
        TensorElem { ctx: ctx.clone(), slots, terms: BTreeMap::new(), cutoff: None }
    }

    pub fn unit(ctx: &Arc<AlgebraCtx>, slots: usize) -> Self {
        let mut t = Self::zero(ctx, slots);
        t.terms.insert(
            vec![PbwMonomial::unit(&ctx.datum); slots],
            RatFuncQ::one(),
        );
        t
    }

    /// Embed an algebra element into one slot, units elsewhere.
    pub fn embed(a: &AlgElem, slot: usize, slots: usize) -> Self {
        let ctx = a.ctx().clone();
        let unit = PbwMonomial::unit(&ctx.datum);
        let mut t = Self::zero(&ctx, slots);
        for (m, c) in a.terms() {
            let mut key = vec![unit.clone(); slots];
            key[slot] = m.clone();
            t.terms.insert(key, c.clone());
        }
        t
    }

    /// Pure tensor of algebra elements, one per slot.
    pub fn pure(parts: &[&AlgElem]) -> Self {
        let ctx = parts[0].ctx().clone();
        let mut acc = Self::unit(&ctx, parts.len());
        for (i, p) in parts.iter().enumerate() {
            acc = &acc * &Self::embed(p, i, parts.len());
        }
        acc
    }

    pub fn ctx(&self) -> &Arc<AlgebraCtx> {
        &self.ctx
    }

    pub fn slots(&self) -> usize {
        self.slots
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PbwMonomial>, &RatFuncQ)> {
        self.terms.iter()
    }

    pub fn coeff(&self, key: &[PbwMonomial]) -> RatFuncQ {
        self.terms.get(key).cloned().unwrap_or_else(RatFuncQ::zero)
    }

    pub fn add_assign_term(&mut self, key: Vec<PbwMonomial>, c: RatFuncQ) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(key).or_insert_with(RatFuncQ::zero);
        *e = &*e + &c;
        if e.is_zero() {
            // cleaned lazily
        }
    }

    fn cleanup(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        self
    }

    pub fn scaled(&self, c: &RatFuncQ) -> Self {
        let mut out = self.clone();
        if c.is_zero() {
            out.terms.clear();
            return out;
        }
        for v in out.terms.values_mut() {
            *v = &*v * c;
        }
        out
    }

    pub fn with_cutoff(mut self, cutoff: i64) -> Self {
        self.cutoff = Some(cutoff);
        self
    }

    /// Slot weights (root coordinates) of a term key.
    pub fn slot_weights(&self, key: &[PbwMonomial]) -> Vec<Root> {
        key.iter().map(|m| m.weight(&self.ctx.datum)).collect()
    }

    /// Keep only terms satisfying the predicate on slot weights.
    pub fn filter_by_weights(&self, pred: impl Fn(&[Root]) -> bool) -> Self {
        let mut out = Self::zero(&self.ctx, self.slots);
        out.cutoff = self.cutoff;
        for (k, c) in &self.terms {
            if pred(&self.slot_weights(k)) {
                out.terms.insert(k.clone(), c.clone());
            }
        }
        out
    }

    /// Swap two slots (the flip map on those factors).
    pub fn swap_slots(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(&self.ctx, self.slots);
        out.cutoff = self.cutoff;
        for (k, c) in &self.terms {
            let mut key = k.clone();
            key.swap(i, j);
            out.add_assign_term(key, c.clone());
        }
        out.cleanup()
    }

    /// Apply a 2-slot expansion to one slot, increasing arity by one:
    /// slot `slot` is replaced by the two slots of `f(monomial)`.
    pub fn expand_slot(&self, slot: usize, f: impl Fn(&PbwMonomial) -> TensorElem) -> Self {
        let mut out = Self::zero(&self.ctx, self.slots + 1);
        for (k, c) in &self.terms {
            let expansion = f(&k[slot]);
            debug_assert_eq!(expansion.slots, 2);
            for (ek, ec) in &expansion.terms {
                let mut key = Vec::with_capacity(self.slots + 1);
                key.extend_from_slice(&k[..slot]);
                key.push(ek[0].clone());
                key.push(ek[1].clone());
                key.extend_from_slice(&k[slot + 1..]);
                out.add_assign_term(key, c * ec);
            }
        }
        out.cleanup()
    }

    /// Apply an algebra-element map to one slot (e.g. the antipode).
    pub fn map_slot(&self, slot: usize, f: impl Fn(&PbwMonomial) -> AlgElem) -> Self {
        let mut out = Self::zero(&self.ctx, self.slots);
        for (k, c) in &self.terms {
            let image = f(&k[slot]);
            for (m, mc) in image.terms() {
                let mut key = k.clone();
                key[slot] = m.clone();
                out.add_assign_term(key, c * mc);
            }
        }
        out.cleanup()
    }

    /// Drop one slot, multiplying its image under `f` into the scalar
    /// coefficient (used for counit-style maps). `f` must return a scalar.
    pub fn contract_slot_scalar(&self, slot: usize, f: impl Fn(&PbwMonomial) -> RatFuncQ) -> Self {
        let mut out = Self::zero(&self.ctx, self.slots - 1);
        for (k, c) in &self.terms {
            let s = f(&k[slot]);
            if s.is_zero() {
                continue;
            }
            let mut key = k.clone();
            key.remove(slot);
            out.add_assign_term(key, c * &s);
        }
        out.cleanup()
    }

    /// Multiply the two slots of a 2-tensor together (the multiplication map
    /// m: H (x) H -> H).
    pub fn multiply_slots(&self) -> AlgElem {
        assert_eq!(self.slots, 2);
        let mut out = AlgElem::zero(&self.ctx);
        for (k, c) in &self.terms {
            let prod = self.ctx.cached_mono_product(&k[0], &k[1]);
            for (m, mc) in prod.iter() {
                out.add_assign_term(m.clone(), c * mc);
            }
        }
        &out + &AlgElem::zero(&self.ctx) // cleanup
    }

    pub fn max_slot_eht(&self) -> i64 {
        self.terms
            .keys()
            .flat_map(|k| k.iter().map(|m| m.e_height(&self.ctx.datum)))
            .max()
            .unwrap_or(0)
    }
}

impl Add for &TensorElem {
    type Output = TensorElem;
    fn add(self, rhs: &TensorElem) -> TensorElem {
        assert_eq!(self.slots, rhs.slots);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_assign_term(k.clone(), c.clone());
        }
        out.cleanup()
    }
}

impl Sub for &TensorElem {
    type Output = TensorElem;
    fn sub(self, rhs: &TensorElem) -> TensorElem {
        assert_eq!(self.slots, rhs.slots);
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_assign_term(k.clone(), &RatFuncQ::zero() - c);
        }
        out.cleanup()
    }
}

impl Neg for &TensorElem {
    type Output = TensorElem;
    fn neg(self) -> TensorElem {
        self.scaled(&(&RatFuncQ::zero() - &RatFuncQ::one()))
    }
}

impl Mul for &TensorElem {
    type Output = TensorElem;
    fn mul(self, rhs: &TensorElem) -> TensorElem {
        assert_eq!(self.slots, rhs.slots);
        let mut out = TensorElem::zero(&self.ctx, self.slots);
        out.cutoff = match (self.cutoff, rhs.cutoff) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                // slotwise products, then the cartesian recombination
                let mut partial: Vec<(Vec<PbwMonomial>, RatFuncQ)> =
                    vec![(Vec::with_capacity(self.slots), ca * cb)];
                for s in 0..self.slots {
                    let expansion = self.ctx.cached_mono_product(&ka[s], &kb[s]);
                    let mut next = Vec::with_capacity(partial.len() * expansion.len());
                    for (key, c) in &partial {
                        for (m, mc) in expansion.iter() {
                            let mut nk = key.clone();
                            nk.push(m.clone());
                            next.push((nk, c * mc));
                        }
                    }
                    partial = next;
                }
                for (k, c) in partial {
                    out.add_assign_term(k, c);
                }
            }
        }
        out.cleanup()
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let key = k
                .iter()
                .map(|m| display_monomial(&self.ctx, m))
                .collect::<Vec<_>>()
                .join(" (x) ");
            write!(f, "{}*[{}]", c, key)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}
