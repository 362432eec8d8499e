//! Straightening of generator words into PBW normal form.
//!
//! A word is a sequence of generator letters. The normal form is
//! F-block < L < E-block with the convex order inside each block; the
//! rewriting rules below strictly decrease (inversion count, total degree)
//! lexicographically, so the worklist terminates.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cartan::{LatticeElem, TypeTag};
use crate::exact::RatFuncQ;

use super::{AlgElem, AlgebraCtx, PbwError, PbwMonomial};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Gen {
    F(usize),
    L(LatticeElem),
    E(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Rewrite the leftmost reducible adjacent pair first.
    Leftmost,
    /// Rewrite the rightmost reducible adjacent pair first.
    Rightmost,
}

pub(crate) fn monomial_to_word(_ctx: &AlgebraCtx, m: &PbwMonomial) -> Vec<Gen> {
    let mut w = Vec::new();
    for (idx, pow) in m.f.iter().enumerate() {
        for _ in 0..*pow {
            w.push(Gen::F(idx));
        }
    }
    if m.lat.iter().any(|c| *c != 0) {
        w.push(Gen::L(LatticeElem::from_weight_coords(m.lat.clone())));
    }
    for (idx, pow) in m.e.iter().enumerate() {
        for _ in 0..*pow {
            w.push(Gen::E(idx));
        }
    }
    w
}

fn word_to_monomial(ctx: &AlgebraCtx, w: &[Gen]) -> PbwMonomial {
    let mut m = PbwMonomial::unit(&ctx.datum);
    for g in w {
        match g {
            Gen::F(i) => m.f[*i] += 1,
            Gen::E(i) => m.e[*i] += 1,
            Gen::L(mu) => {
                for (k, c) in mu.omega_coords.iter().enumerate() {
                    m.lat[k] += c;
                }
            }
        }
    }
    m
}

/// `(L_alpha_i - L_-alpha_i)/(q_i - q_i^-1)` as replacement words.
fn cartan_term(ctx: &AlgebraCtx, root_idx: usize) -> Vec<(RatFuncQ, Vec<Gen>)> {
    let d = ctx.datum.d_of_root(root_idx);
    let denom_inv = (&RatFuncQ::q_pow(d) - &RatFuncQ::q_pow(-d))
        .inv()
        .expect("q^d - q^-d is nonzero");
    let alpha = root_from_idx(ctx, root_idx);
    vec![
        (denom_inv.clone(), vec![Gen::L(alpha.clone())]),
        (&RatFuncQ::zero() - &denom_inv, vec![Gen::L(alpha.neg())]),
    ]
}

fn root_from_idx(ctx: &AlgebraCtx, idx: usize) -> LatticeElem {
    LatticeElem::from_root_coords(&ctx.datum, &ctx.datum.positive_roots[idx])
}

/// The straightening rule for the adjacent pair `a` then `b`, or `None` when
/// the pair is already in normal position.
fn rewrite_adjacent(ctx: &AlgebraCtx, a: &Gen, b: &Gen) -> Option<Vec<(RatFuncQ, Vec<Gen>)>> {
    match (a, b) {
        (Gen::L(mu), Gen::L(nu)) => {
            let sum = mu.add(nu);
            if sum.is_zero() {
                Some(vec![(RatFuncQ::one(), vec![])])
            } else {
                Some(vec![(RatFuncQ::one(), vec![Gen::L(sum)])])
            }
        }
        (Gen::E(beta), Gen::L(mu)) => {
            let exp = -ctx.form_with_root_idx(mu, *beta);
            Some(vec![(
                RatFuncQ::q_pow(exp),
                vec![Gen::L(mu.clone()), Gen::E(*beta)],
            )])
        }
        (Gen::L(mu), Gen::F(gamma)) => {
            let exp = -ctx.form_with_root_idx(mu, *gamma);
            Some(vec![(
                RatFuncQ::q_pow(exp),
                vec![Gen::F(*gamma), Gen::L(mu.clone())],
            )])
        }
        (Gen::E(beta), Gen::F(gamma)) => Some(mixed_rule(ctx, *beta, *gamma)),
        (Gen::E(beta), Gen::E(gamma)) if beta > gamma => Some(e_block_rule(ctx, *beta, *gamma)),
        (Gen::F(beta), Gen::F(gamma)) if beta > gamma => Some(f_block_rule(ctx, *beta, *gamma)),
        _ => None,
    }
}

fn q(k: i64) -> RatFuncQ {
    RatFuncQ::q_pow(k)
}

fn e_block_rule(ctx: &AlgebraCtx, beta: usize, gamma: usize) -> Vec<(RatFuncQ, Vec<Gen>)> {
    match ctx.tag() {
        TypeTag::A1 => unreachable!("single positive root"),
        TypeTag::A1xA1 => vec![(RatFuncQ::one(), vec![Gen::E(gamma), Gen::E(beta)])],
        TypeTag::A2 => match (beta, gamma) {
            // E_2 E_1 = q E_1 E_2 + q E_12
            (2, 0) => vec![
                (q(1), vec![Gen::E(0), Gen::E(2)]),
                (q(1), vec![Gen::E(1)]),
            ],
            // E_12 E_1 = q^-1 E_1 E_12
            (1, 0) => vec![(q(-1), vec![Gen::E(0), Gen::E(1)])],
            // E_2 E_12 = q^-1 E_12 E_2
            (2, 1) => vec![(q(-1), vec![Gen::E(1), Gen::E(2)])],
            _ => unreachable!(),
        },
        other => panic!("no straightening table for {other}"),
    }
}

fn f_block_rule(ctx: &AlgebraCtx, beta: usize, gamma: usize) -> Vec<(RatFuncQ, Vec<Gen>)> {
    match ctx.tag() {
        TypeTag::A1 => unreachable!("single positive root"),
        TypeTag::A1xA1 => vec![(RatFuncQ::one(), vec![Gen::F(gamma), Gen::F(beta)])],
        TypeTag::A2 => match (beta, gamma) {
            // F_2 F_1 = q F_1 F_2 - F_12   (from F_12 = -F_2 F_1 + q F_1 F_2)
            (2, 0) => vec![
                (q(1), vec![Gen::F(0), Gen::F(2)]),
                (&RatFuncQ::zero() - &RatFuncQ::one(), vec![Gen::F(1)]),
            ],
            // F_12 F_1 = q^-1 F_1 F_12
            (1, 0) => vec![(q(-1), vec![Gen::F(0), Gen::F(1)])],
            // F_2 F_12 = q^-1 F_12 F_2
            (2, 1) => vec![(q(-1), vec![Gen::F(1), Gen::F(2)])],
            _ => unreachable!(),
        },
        other => panic!("no straightening table for {other}"),
    }
}

/// E_beta F_gamma in terms of F..L..E words.
fn mixed_rule(ctx: &AlgebraCtx, beta: usize, gamma: usize) -> Vec<(RatFuncQ, Vec<Gen>)> {
    let swap = (RatFuncQ::one(), vec![Gen::F(gamma), Gen::E(beta)]);
    match ctx.tag() {
        TypeTag::A1 => {
            let mut out = vec![swap];
            out.extend(cartan_term(ctx, 0));
            out
        }
        TypeTag::A1xA1 => {
            let mut out = vec![swap];
            if beta == gamma {
                out.extend(cartan_term(ctx, beta));
            }
            out
        }
        TypeTag::A2 => {
            let alpha = |i: usize| root_from_idx(ctx, i);
            let mut out = vec![swap];
            match (beta, gamma) {
                (0, 0) | (1, 1) | (2, 2) => out.extend(cartan_term(ctx, beta)),
                // [E_1, F_12] = q F_2 K_1
                (0, 1) => out.push((q(1), vec![Gen::F(2), Gen::L(alpha(0))])),
                (0, 2) | (2, 0) => {}
                // [E_12, F_1] = q^-1 K_1^-1 E_2
                (1, 0) => out.push((q(-1), vec![Gen::L(alpha(0).neg()), Gen::E(2)])),
                // [E_12, F_2] = -K_2 E_1
                (1, 2) => out.push((
                    &RatFuncQ::zero() - &RatFuncQ::one(),
                    vec![Gen::L(alpha(2)), Gen::E(0)],
                )),
                // [E_2, F_12] = -F_1 K_2^-1
                (2, 1) => out.push((
                    &RatFuncQ::zero() - &RatFuncQ::one(),
                    vec![Gen::F(0), Gen::L(alpha(2).neg())],
                )),
                _ => unreachable!(),
            }
            out
        }
        other => panic!("no straightening table for {other}"),
    }
}

fn find_redex(ctx: &AlgebraCtx, w: &[Gen], strategy: Strategy) -> Option<usize> {
    let positions: Box<dyn Iterator<Item = usize>> = match strategy {
        Strategy::Leftmost => Box::new(0..w.len().saturating_sub(1)),
        Strategy::Rightmost => Box::new((0..w.len().saturating_sub(1)).rev()),
    };
    for p in positions {
        if let Gen::L(mu) = &w[p] {
            if mu.is_zero() {
                return Some(p);
            }
        }
        if rewrite_adjacent(ctx, &w[p], &w[p + 1]).is_some() {
            return Some(p);
        }
    }
    // trailing zero lattice letter
    if let Some(Gen::L(mu)) = w.last() {
        if mu.is_zero() {
            return Some(w.len() - 1);
        }
    }
    None
}

const STEP_LIMIT: usize = 50_000_000;

/// Straighten a word into PBW normal form.
pub fn straighten_word(
    ctx: &Arc<AlgebraCtx>,
    word: &[Gen],
    strategy: Strategy,
) -> Result<AlgElem, PbwError> {
    for g in word {
        match g {
            Gen::F(i) | Gen::E(i) => {
                if *i >= ctx.datum.num_positive_roots() {
                    return Err(PbwError::BadGenerator(*i));
                }
            }
            Gen::L(mu) => ctx.check_lattice(mu)?,
        }
    }
    let mut result: BTreeMap<PbwMonomial, RatFuncQ> = BTreeMap::new();
    let mut work: BTreeMap<Vec<Gen>, RatFuncQ> = BTreeMap::new();
    work.insert(word.to_vec(), RatFuncQ::one());
    let mut steps = 0usize;
    while let Some((w, coeff)) = work.pop_first() {
        if coeff.is_zero() {
            continue;
        }
        steps += 1;
        if steps > STEP_LIMIT {
            return Err(PbwError::NonTermination(STEP_LIMIT));
        }
        match find_redex(ctx, &w, strategy) {
            None => {
                let m = word_to_monomial(ctx, &w);
                let entry = result.entry(m).or_insert_with(RatFuncQ::zero);
                *entry = &*entry + &coeff;
                if entry.is_zero() {
                    // keep map clean lazily; removal happens on finalize
                }
            }
            Some(p) => {
                // zero lattice letter: drop it
                if let Gen::L(mu) = &w[p] {
                    if mu.is_zero() {
                        let mut nw = w.clone();
                        nw.remove(p);
                        let e = work.entry(nw).or_insert_with(RatFuncQ::zero);
                        *e = &*e + &coeff;
                        continue;
                    }
                }
                let repl = rewrite_adjacent(ctx, &w[p], &w[p + 1]).expect("redex");
                for (c, seg) in repl {
                    let mut nw = Vec::with_capacity(w.len() + seg.len());
                    nw.extend_from_slice(&w[..p]);
                    nw.extend(seg);
                    nw.extend_from_slice(&w[p + 2..]);
                    let e = work.entry(nw).or_insert_with(RatFuncQ::zero);
                    *e = &*e + &(&coeff * &c);
                }
            }
        }
    }
    result.retain(|_, c| !c.is_zero());
    Ok(AlgElem::from_term_map(ctx.clone(), result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Lattice;

    fn a2() -> Arc<AlgebraCtx> {
        AlgebraCtx::new(TypeTag::A2, Lattice::P).unwrap()
    }

    #[test]
    fn e2_e1_straightens_to_table_value() {
        let ctx = a2();
        let out = straighten_word(&ctx, &[Gen::E(2), Gen::E(0)], Strategy::Leftmost).unwrap();
        // q E_1 E_2 + q E_12
        let mut e1e2 = PbwMonomial::unit(&ctx.datum);
        e1e2.e[0] = 1;
        e1e2.e[2] = 1;
        let mut e12 = PbwMonomial::unit(&ctx.datum);
        e12.e[1] = 1;
        assert_eq!(out.coeff(&e1e2), RatFuncQ::q());
        assert_eq!(out.coeff(&e12), RatFuncQ::q());
        assert_eq!(out.num_terms(), 2);
    }

    #[test]
    fn ef_commutator_is_cartan_term() {
        let ctx = a2();
        let ef = straighten_word(&ctx, &[Gen::E(0), Gen::F(0)], Strategy::Leftmost).unwrap();
        let fe = straighten_word(&ctx, &[Gen::F(0), Gen::E(0)], Strategy::Leftmost).unwrap();
        let comm = &ef - &fe;
        // (K_1 - K_1^-1)/(q - q^-1)
        let alpha1 = LatticeElem::simple_root(&ctx.datum, 0);
        let mut k1 = PbwMonomial::unit(&ctx.datum);
        k1.lat = alpha1.omega_coords.clone();
        let denom = &RatFuncQ::q() - &RatFuncQ::q_pow(-1);
        assert_eq!(comm.coeff(&k1), denom.inv().unwrap());
        assert_eq!(comm.num_terms(), 2);
    }

    #[test]
    fn serre_relations_vanish() {
        let ctx = a2();
        // E_1^2 E_2 - [2] E_1 E_2 E_1 + E_2 E_1^2 = 0 and the mirrored one
        let bracket2 = crate::qcalc::q_bracket(2);
        for (i, j) in [(0usize, 2usize), (2, 0)] {
            let t1 = straighten_word(
                &ctx,
                &[Gen::E(i), Gen::E(i), Gen::E(j)],
                Strategy::Leftmost,
            )
            .unwrap();
            let t2 = straighten_word(
                &ctx,
                &[Gen::E(i), Gen::E(j), Gen::E(i)],
                Strategy::Leftmost,
            )
            .unwrap();
            let t3 = straighten_word(
                &ctx,
                &[Gen::E(j), Gen::E(i), Gen::E(i)],
                Strategy::Leftmost,
            )
            .unwrap();
            let serre = &(&t1 - &t2.scaled(&bracket2)) + &t3;
            assert!(serre.is_zero(), "E-Serre ({i},{j}) fails: {serre}");
        }
    }

    #[test]
    fn strategies_agree_on_mixed_word() {
        let ctx = a2();
        let w = [Gen::E(2), Gen::E(0), Gen::F(1), Gen::E(1), Gen::F(0)];
        let a = straighten_word(&ctx, &w, Strategy::Leftmost).unwrap();
        let b = straighten_word(&ctx, &w, Strategy::Rightmost).unwrap();
        assert_eq!(a, b);
    }
}
