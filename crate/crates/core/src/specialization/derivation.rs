//! Divided-power derivations of the specialized algebra:
//! e_i(w) = ([E_i^l, W] / [l]_{q_i}!)|_{q=eps} and the f_i mirror, computed
//! through exact generic-q lifts, never through the transcendental
//! logarithm normalization (their agreement is a theorem that the check
//! suites verify, not an assumption).

use std::sync::Arc;

use num_traits::One;

use crate::exact::{BigRat, RatFuncQ};
use crate::pbw::{AlgElem, PbwMonomial};
use crate::qcalc::q_factorial;

use super::tpoly::TPoly;
use super::{SpecAlgElem, SpecCtx, SpecError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerKind {
    E,
    F,
}

/// Apply the derivation of simple index `i` to a specialized element.
pub fn derivation_apply(
    ctx: &Arc<SpecCtx>,
    kind: DerKind,
    i: usize,
    w: &SpecAlgElem,
) -> Result<SpecAlgElem, SpecError> {
    let alg = &ctx.alg;
    let ell = ctx.ell as u32;
    let root_idx = alg.datum.simple_root_index(i);
    let mut m = PbwMonomial::unit(&alg.datum);
    match kind {
        DerKind::E => m.e[root_idx] = ell,
        DerKind::F => m.f[root_idx] = ell,
    }
    let power = AlgElem::from_monomial(alg, m, RatFuncQ::one());
    let lift = w.lift();
    let comm = power.commutator(&lift);
    let fact_inv = q_factorial(ell)
        .subst_q_pow(alg.datum.d[i])
        .inv()
        .expect("nonzero factorial");
    super::specialize_elem(ctx, &comm.scaled(&fact_inv))
}

/// Truncated exponential of t times the derivation, applied to `w`:
/// sum_{n<=order} t^n e^n(w) / n!.
pub fn exp_derivation(
    ctx: &Arc<SpecCtx>,
    kind: DerKind,
    i: usize,
    w: &SpecAlgElem,
    order: usize,
) -> Result<TPoly, SpecError> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut cur = w.clone();
    let mut factorial = BigRat::one();
    coeffs.push(cur.clone());
    for n in 1..=order {
        cur = derivation_apply(ctx, kind, i, &cur)?;
        factorial = factorial * BigRat::from_integer((n as i64).into());
        coeffs.push(cur.scale_rat(&(BigRat::one() / factorial.clone())));
    }
    Ok(TPoly::new(ctx, coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{Lattice, TypeTag};
    use crate::exact::CycloScalar;
    use crate::pbw::AlgebraCtx;

    fn sctx(tag: TypeTag, ell: i64) -> Arc<SpecCtx> {
        let alg = AlgebraCtx::new(tag, Lattice::P).unwrap();
        SpecCtx::new(&alg, ell).unwrap()
    }

    #[test]
    fn e1_kills_its_own_power() {
        let ctx = sctx(TypeTag::A2, 3);
        let eb1 = SpecAlgElem::e_bar(&ctx, 0);
        let out = derivation_apply(&ctx, DerKind::E, 0, &eb1).unwrap();
        assert!(out.is_zero());
    }

    #[test]
    fn e1_of_ebar2_closed_form_ell3() {
        // e_1(Ebar_2) = -(x_1/6) Ebar_2 - (eps/3) Ebar_1^2 Ebar_12  at l = 3
        let ctx = sctx(TypeTag::A2, 3);
        let eb2 = SpecAlgElem::e_bar(&ctx, 2);
        let got = derivation_apply(&ctx, DerKind::E, 0, &eb2).unwrap();

        let x1 = SpecAlgElem::x_central(&ctx, 0);
        let term1 = x1
            .mul(&eb2)
            .scale_rat(&BigRat::new((-1).into(), 6.into()));
        let mut m = PbwMonomial::unit(&ctx.alg.datum);
        m.e[0] = 2;
        m.e[1] = 1;
        let eps_third = ctx.epsilon().scale(&BigRat::new((-1).into(), 3.into()));
        let term2 = SpecAlgElem::from_monomial(&ctx, m, eps_third);
        assert_eq!(got, term1.add(&term2));
    }

    #[test]
    fn e1_of_ebar12_closed_form_ell3() {
        // e_1(Ebar_12) = (x_1/6) Ebar_12
        let ctx = sctx(TypeTag::A2, 3);
        let eb12 = SpecAlgElem::e_bar(&ctx, 1);
        let got = derivation_apply(&ctx, DerKind::E, 0, &eb12).unwrap();
        let expect = SpecAlgElem::x_central(&ctx, 0)
            .mul(&eb12)
            .scale_rat(&BigRat::new(1.into(), 6.into()));
        assert_eq!(got, expect);
    }

    #[test]
    fn leibniz_spot() {
        let ctx = sctx(TypeTag::A2, 3);
        let a = SpecAlgElem::e_bar(&ctx, 2).mul(&SpecAlgElem::f_bar(&ctx, 0));
        let b = SpecAlgElem::f_bar(&ctx, 1);
        let lhs = derivation_apply(&ctx, DerKind::E, 0, &a.mul(&b)).unwrap();
        let rhs = derivation_apply(&ctx, DerKind::E, 0, &a)
            .unwrap()
            .mul(&b)
            .add(&a.mul(&derivation_apply(&ctx, DerKind::E, 0, &b).unwrap()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn f_derivation_on_y_is_zero() {
        let ctx = sctx(TypeTag::A1, 3);
        let y = SpecAlgElem::y_central(&ctx, 0);
        assert!(derivation_apply(&ctx, DerKind::F, 0, &y).unwrap().is_zero());
    }

    #[test]
    fn e_of_y_at_ell_one() {
        // e_i(y_j) = delta_ij (z_{alpha_i} - z_{-alpha_i}) at l = 1
        let ctx = sctx(TypeTag::A1xA1, 1);
        for i in 0..2 {
            for j in 0..2 {
                let root_j = ctx.alg.datum.simple_root_index(j);
                let y = SpecAlgElem::y_central(&ctx, root_j);
                let got = derivation_apply(&ctx, DerKind::E, i, &y).unwrap();
                if i != j {
                    assert!(got.is_zero());
                } else {
                    let alpha = crate::cartan::LatticeElem::simple_root(&ctx.alg.datum, i);
                    let expect = SpecAlgElem::z_central(&ctx, &alpha)
                        .sub(&SpecAlgElem::z_central(&ctx, &alpha.neg()));
                    assert_eq!(got, expect);
                }
            }
        }
    }

    #[test]
    fn exp_derivation_linear_term() {
        let ctx = sctx(TypeTag::A2, 3);
        let eb12 = SpecAlgElem::e_bar(&ctx, 1);
        let series = exp_derivation(&ctx, DerKind::E, 0, &eb12, 2).unwrap();
        assert_eq!(series.coeff(0), eb12);
        let lin = derivation_apply(&ctx, DerKind::E, 0, &eb12).unwrap();
        assert_eq!(series.coeff(1), lin);
        // quadratic: (x_1/6)^2/2 * Ebar_12
        let x1 = SpecAlgElem::x_central(&ctx, 0);
        let expect2 = x1
            .mul(&x1)
            .mul(&eb12)
            .scale_rat(&BigRat::new(1.into(), 72.into()));
        assert_eq!(series.coeff(2), expect2);
        let _ = CycloScalar::one(&ctx.field);
    }
}
