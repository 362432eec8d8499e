//! Hopf structure maps: coproduct, antipode, counit.
//!
//! The maps are defined on the simple generators and extended as algebra
//! (anti-)morphisms. Non-simple root-vector letters are expanded through
//! their defining words first, so no derived coproduct constants are ever
//! hardcoded.

use std::sync::Arc;

use crate::cartan::{LatticeElem, TypeTag};
use crate::exact::RatFuncQ;

use super::word::{Gen, Strategy};
use super::{AlgElem, AlgebraCtx, PbwError, PbwMonomial, TensorElem};

/// Defining word of a non-simple root vector in terms of simple-root
/// letters (E-side). For A2: E_12 = -E_1 E_2 + q^-1 E_2 E_1.
pub fn e_root_vector_word(ctx: &AlgebraCtx, idx: usize) -> Option<Vec<(RatFuncQ, Vec<Gen>)>> {
    match ctx.tag() {
        TypeTag::A2 if idx == 1 => Some(vec![
            (
                &RatFuncQ::zero() - &RatFuncQ::one(),
                vec![Gen::E(0), Gen::E(2)],
            ),
            (RatFuncQ::q_pow(-1), vec![Gen::E(2), Gen::E(0)]),
        ]),
        _ => None,
    }
}

/// F-side defining word. For A2: F_12 = -F_2 F_1 + q F_1 F_2.
pub fn f_root_vector_word(ctx: &AlgebraCtx, idx: usize) -> Option<Vec<(RatFuncQ, Vec<Gen>)>> {
    match ctx.tag() {
        TypeTag::A2 if idx == 1 => Some(vec![
            (
                &RatFuncQ::zero() - &RatFuncQ::one(),
                vec![Gen::F(2), Gen::F(0)],
            ),
            (RatFuncQ::q(), vec![Gen::F(0), Gen::F(2)]),
        ]),
        _ => None,
    }
}

/// Expand a PBW monomial into words over simple-root letters only.
fn expand_to_simple_words(ctx: &AlgebraCtx, m: &PbwMonomial) -> Vec<(RatFuncQ, Vec<Gen>)> {
    let mut words: Vec<(RatFuncQ, Vec<Gen>)> = vec![(RatFuncQ::one(), Vec::new())];
    let append_letter = |words: &mut Vec<(RatFuncQ, Vec<Gen>)>, letter: Gen| {
        let expansion: Vec<(RatFuncQ, Vec<Gen>)> = match &letter {
            Gen::E(idx) => e_root_vector_word(ctx, *idx)
                .unwrap_or_else(|| vec![(RatFuncQ::one(), vec![letter.clone()])]),
            Gen::F(idx) => f_root_vector_word(ctx, *idx)
                .unwrap_or_else(|| vec![(RatFuncQ::one(), vec![letter.clone()])]),
            Gen::L(_) => vec![(RatFuncQ::one(), vec![letter.clone()])],
        };
        let mut next = Vec::with_capacity(words.len() * expansion.len());
        for (c, w) in words.iter() {
            for (ec, ew) in &expansion {
                let mut nw = w.clone();
                nw.extend(ew.iter().cloned());
                next.push((c * ec, nw));
            }
        }
        *words = next;
    };
    for (idx, pow) in m.f.iter().enumerate() {
        for _ in 0..*pow {
            append_letter(&mut words, Gen::F(idx));
        }
    }
    if m.lat.iter().any(|c| *c != 0) {
        append_letter(
            &mut words,
            Gen::L(LatticeElem::from_weight_coords(m.lat.clone())),
        );
    }
    for (idx, pow) in m.e.iter().enumerate() {
        for _ in 0..*pow {
            append_letter(&mut words, Gen::E(idx));
        }
    }
    words
}

fn coproduct_letter(ctx: &Arc<AlgebraCtx>, g: &Gen) -> TensorElem {
    match g {
        Gen::E(idx) => {
            // Delta(E_i) = E_i (x) 1 + K_i (x) E_i, for simple i
            let i = simple_index(ctx, *idx);
            let e = AlgElem::e_gen(ctx, *idx);
            let k = AlgElem::k_gen(ctx, i);
            &TensorElem::pure(&[&e, &AlgElem::one(ctx)]) + &TensorElem::pure(&[&k, &e])
        }
        Gen::F(idx) => {
            // Delta(F_i) = F_i (x) K_i^-1 + 1 (x) F_i
            let i = simple_index(ctx, *idx);
            let fe = AlgElem::f_gen(ctx, *idx);
            let kinv = AlgElem::k_gen_inv(ctx, i);
            &TensorElem::pure(&[&fe, &kinv]) + &TensorElem::pure(&[&AlgElem::one(ctx), &fe])
        }
        Gen::L(mu) => {
            let l = AlgElem::l_elem(ctx, mu).expect("validated");
            TensorElem::pure(&[&l, &l])
        }
    }
}

fn simple_index(ctx: &AlgebraCtx, root_idx: usize) -> usize {
    ctx.datum.positive_roots[root_idx]
        .iter()
        .position(|c| *c == 1)
        .expect("simple root letter")
}

/// The coproduct, as a finite exact element of the tensor square. The
/// cutoff is a contract: if any produced term exceeds it in slot E-height,
/// an explicit overflow error is returned instead of silent truncation.
pub fn coproduct(a: &AlgElem, cutoff: i64) -> Result<TensorElem, PbwError> {
    let ctx = a.ctx().clone();
    let mut out = TensorElem::zero(&ctx, 2);
    for (m, c) in a.terms() {
        for (wc, word) in expand_to_simple_words(&ctx, m) {
            let mut acc = TensorElem::unit(&ctx, 2);
            for letter in &word {
                acc = &acc * &coproduct_letter(&ctx, letter);
            }
            out = &out + &acc.scaled(&(c * &wc));
        }
    }
    let needed = out.max_slot_eht();
    if needed > cutoff {
        return Err(PbwError::TruncationOverflow { cutoff, needed });
    }
    Ok(out.with_cutoff(cutoff))
}

/// The antipode, an algebra anti-morphism.
pub fn antipode(a: &AlgElem) -> AlgElem {
    let ctx = a.ctx().clone();
    let mut out = AlgElem::zero(&ctx);
    for (m, c) in a.terms() {
        for (wc, word) in expand_to_simple_words(&ctx, m) {
            // S(x1 x2 ... xn) = S(xn) ... S(x1)
            let mut sword: Vec<(RatFuncQ, Vec<Gen>)> = vec![(RatFuncQ::one(), Vec::new())];
            for letter in word.iter().rev() {
                let image: (RatFuncQ, Vec<Gen>) = match letter {
                    Gen::E(idx) => {
                        let i = simple_index(&ctx, *idx);
                        let alpha = LatticeElem::simple_root(&ctx.datum, i);
                        (
                            &RatFuncQ::zero() - &RatFuncQ::one(),
                            vec![Gen::L(alpha.neg()), Gen::E(*idx)],
                        )
                    }
                    Gen::F(idx) => {
                        let i = simple_index(&ctx, *idx);
                        let alpha = LatticeElem::simple_root(&ctx.datum, i);
                        (
                            &RatFuncQ::zero() - &RatFuncQ::one(),
                            vec![Gen::F(*idx), Gen::L(alpha)],
                        )
                    }
                    Gen::L(mu) => (RatFuncQ::one(), vec![Gen::L(mu.neg())]),
                };
                for (c0, w0) in &mut sword {
                    *c0 = &*c0 * &image.0;
                    w0.extend(image.1.iter().cloned());
                }
            }
            for (c0, w0) in sword {
                let e = AlgElem::from_word(&ctx, &w0, Strategy::Leftmost).expect("valid word");
                out = &out + &e.scaled(&(&(c * &wc) * &c0));
            }
        }
    }
    out
}

/// The counit: kills E and F, sends every L_mu to 1.
pub fn counit(a: &AlgElem) -> RatFuncQ {
    let mut out = RatFuncQ::zero();
    for (m, c) in a.terms() {
        if m.is_lattice_only() {
            out = &out + c;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Lattice;

    fn a2() -> Arc<AlgebraCtx> {
        AlgebraCtx::new(TypeTag::A2, Lattice::P).unwrap()
    }

    #[test]
    fn coproduct_of_l_is_group_like() {
        let ctx = a2();
        let mu = LatticeElem::from_weight_coords(vec![1, -2]);
        let l = AlgElem::l_elem(&ctx, &mu).unwrap();
        let d = coproduct(&l, 0).unwrap();
        assert_eq!(d, TensorElem::pure(&[&l, &l]));
    }

    #[test]
    fn coproduct_of_root_vector_e12() {
        // Delta(E_12) = E_12 (x) 1 + K_12 (x) E_12 + (q^-1 - q) L_a2 E_1 (x) E_2,
        // derived by expanding the defining word and straightening.
        let ctx = a2();
        let e12 = AlgElem::e_gen(&ctx, 1);
        let d = coproduct(&e12, 4).unwrap();

        let one = AlgElem::one(&ctx);
        let alpha12 = LatticeElem::from_root_coords(&ctx.datum, &[1, 1]);
        let k12 = AlgElem::l_elem(&ctx, &alpha12).unwrap();
        let alpha2 = LatticeElem::simple_root(&ctx.datum, 1);
        let l2e1 = &AlgElem::l_elem(&ctx, &alpha2).unwrap() * &AlgElem::e_gen(&ctx, 0);
        let e2 = AlgElem::e_gen(&ctx, 2);
        let cross = RatFuncQ::q_pow(-1);
        let cross = &cross - &RatFuncQ::q();
        let expect = &(&TensorElem::pure(&[&e12, &one]) + &TensorElem::pure(&[&k12, &e12]))
            + &TensorElem::pure(&[&l2e1, &e2]).scaled(&cross);
        assert_eq!(d, expect);
    }

    #[test]
    fn antipode_on_generators() {
        let ctx = a2();
        // S(E_1) = -K_1^-1 E_1
        let s = antipode(&AlgElem::e_gen(&ctx, 0));
        let expect = (&AlgElem::k_gen_inv(&ctx, 0) * &AlgElem::e_gen(&ctx, 0))
            .scaled(&(&RatFuncQ::zero() - &RatFuncQ::one()));
        assert_eq!(s, expect);
        // counit
        assert!(counit(&AlgElem::e_gen(&ctx, 1)).is_zero());
        assert!(counit(&AlgElem::one(&ctx)).is_one());
    }

    #[test]
    fn antipode_convolution_identity_on_f() {
        // m (S (x) id) Delta(F_i) = eps(F_i) 1 = 0
        let ctx = a2();
        for idx in [0usize, 1, 2] {
            let fe = AlgElem::f_gen(&ctx, idx);
            let d = coproduct(&fe, 3).unwrap();
            let conv = d.map_slot(0, |m| {
                antipode(&AlgElem::from_monomial(&ctx, m.clone(), RatFuncQ::one()))
            });
            assert!(conv.multiply_slots().is_zero(), "fails at F index {idx}");
        }
    }

    #[test]
    fn truncation_overflow_is_explicit() {
        let ctx = a2();
        let e = AlgElem::e_gen(&ctx, 0).pow(3);
        match coproduct(&e, 2) {
            Err(PbwError::TruncationOverflow { cutoff: 2, needed: 3 }) => {}
            other => panic!("expected overflow, got {:?}", other.map(|_| ())),
        }
    }
}
