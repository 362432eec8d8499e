//! Degree-truncated formal power series in an auxiliary variable `z` with
//! coefficients in the rational-function field in `q`.
//!
//! Internally every coefficient is kept as
//! `num * prod_j (1 - q^j)^(-e_j)` with `num` a Laurent polynomial. All four
//! series in use ((z;q)_inf, e_q, E_q, exp_q) and their products stay inside
//! this family, so sums and Cauchy products never need a polynomial gcd; the
//! public accessor reduces to a normalized `RatFuncQ` by exact division.

use crate::exact::{BigRat, LaurentPolyQ, RatFuncQ};
use num_traits::One;
use std::collections::BTreeMap;

/// A series coefficient `num / prod_j (1 - q^j)^e_j`; `e_j` may be negative,
/// meaning the factor sits in the numerator.
#[derive(Clone, PartialEq, Eq, Debug)]
struct Coeff {
    num: LaurentPolyQ,
    den: BTreeMap<i64, i64>,
}

fn one_minus_qj(j: i64) -> LaurentPolyQ {
    &LaurentPolyQ::one() - &LaurentPolyQ::q_pow(j)
}

impl Coeff {
    fn zero() -> Self {
        Coeff { num: LaurentPolyQ::zero(), den: BTreeMap::new() }
    }

    fn one() -> Self {
        Coeff { num: LaurentPolyQ::one(), den: BTreeMap::new() }
    }

    fn from_laurent(num: LaurentPolyQ) -> Self {
        Coeff { num, den: BTreeMap::new() }
    }

    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn with_den(num: LaurentPolyQ, den: BTreeMap<i64, i64>) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let mut c = Coeff { num, den };
        c.den.retain(|_, e| *e != 0);
        c
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (j, e) in &rhs.den {
            *den.entry(*j).or_insert(0) += e;
        }
        Self::with_den(&self.num * &rhs.num, den)
    }

    fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        // Common denominator: max exponent per factor.
        let mut den = BTreeMap::new();
        for (j, e) in self.den.iter().chain(rhs.den.iter()) {
            let cur = den.entry(*j).or_insert(*e);
            *cur = (*cur).max(*e);
        }
        let scale = |c: &Coeff| -> LaurentPolyQ {
            let mut p = c.num.clone();
            for (j, e) in &den {
                let have = c.den.get(j).copied().unwrap_or(0);
                for _ in 0..(e - have) {
                    p = &p * &one_minus_qj(*j);
                }
            }
            p
        };
        Self::with_den(&scale(self) + &scale(rhs), den)
    }

    fn neg(&self) -> Self {
        Coeff { num: -&self.num, den: self.den.clone() }
    }

    /// Reduce to a normalized rational function. Denominator factors are
    /// cancelled by exact division where possible, so the final `RatFuncQ`
    /// constructor sees small inputs.
    fn to_ratfunc(&self) -> RatFuncQ {
        if self.is_zero() {
            return RatFuncQ::zero();
        }
        let mut num = self.num.clone();
        let mut den = LaurentPolyQ::one();
        for (j, e) in &self.den {
            let f = one_minus_qj(*j);
            if *e < 0 {
                for _ in 0..(-e) {
                    num = &num * &f;
                }
                continue;
            }
            let mut left = *e;
            while left > 0 {
                match num.exact_div(&f) {
                    Some(nn) => {
                        num = nn;
                        left -= 1;
                    }
                    None => break,
                }
            }
            for _ in 0..left {
                den = &den * &f;
            }
        }
        RatFuncQ::new(num, den)
    }

    fn from_ratfunc(f: &RatFuncQ) -> Self {
        // Generic embedding: leave the reduced denominator as a single
        // opaque factor is not possible in this representation, so peel off
        // (1-q^j) factors greedily and require nothing remains. All callers
        // pass values whose denominators are products of such factors.
        let mut den = BTreeMap::new();
        let mut d = f.denom().clone();
        let mut j = 1i64;
        let max_j = d.degree().unwrap_or(0) + 1;
        while !d.is_one() && j <= max_j {
            while let Some(dd) = d.exact_div(&one_minus_qj(j)) {
                // exact_div by 1-q^j changes leading normalization; fine.
                *den.entry(j).or_insert(0) += 1;
                d = dd;
            }
            j += 1;
        }
        assert!(
            d.num_terms() == 1,
            "series scalar denominator {} is not a product of (1-q^j) factors",
            f.denom()
        );
        // d is now a unit c*q^k; fold it into the numerator.
        let unit_inv = RatFuncQ::from_laurent(d).inv().unwrap();
        let num = f.numer() * unit_inv.numer();
        Coeff::with_den(num, den)
    }
}

/// A truncated power series `sum_{n<=N} c_n z^n + O(z^(N+1))`.
#[derive(Clone, Debug)]
pub struct QSeries {
    coeffs: Vec<Coeff>,
}

impl QSeries {
    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> RatFuncQ {
        self.coeffs
            .get(n)
            .map(|c| c.to_ratfunc())
            .unwrap_or_else(RatFuncQ::zero)
    }

    pub fn coeffs(&self) -> Vec<RatFuncQ> {
        (0..=self.truncation_order()).map(|n| self.coeff(n)).collect()
    }

    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Coeff::zero(); order + 1];
        coeffs[0] = Coeff::one();
        QSeries { coeffs }
    }

    pub fn from_coeff_fn(order: usize, f: impl Fn(usize) -> RatFuncQ) -> Self {
        QSeries {
            coeffs: (0..=order).map(|n| Coeff::from_ratfunc(&f(n))).collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].to_ratfunc().is_one()
            && self.coeffs[1..].iter().all(|c| c.to_ratfunc().is_zero())
    }
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        let n = self.truncation_order().min(other.truncation_order());
        (0..=n).all(|k| self.coeff(k) == other.coeff(k))
            && self.truncation_order() == other.truncation_order()
    }
}

/// `(z;q)_inf = prod_{n>=0} (1 - z q^n)`, truncated: coefficient of z^n is
/// `(-1)^n q^(n(n-1)/2) / (q;q)_n`.
pub fn pochhammer_inf_series(order: usize) -> QSeries {
    QSeries {
        coeffs: (0..=order)
            .map(|n| {
                let n = n as i64;
                let sign = if n % 2 == 0 { BigRat::one() } else { -BigRat::one() };
                Coeff::with_den(
                    LaurentPolyQ::monomial(n * (n - 1) / 2, sign),
                    (1..=n).map(|j| (j, 1)).collect(),
                )
            })
            .collect(),
    }
}

/// `e_q(z) = sum z^n / (q;q)_n`.
pub fn e_q_series(order: usize) -> QSeries {
    QSeries {
        coeffs: (0..=order)
            .map(|n| {
                Coeff::with_den(LaurentPolyQ::one(), (1..=n as i64).map(|j| (j, 1)).collect())
            })
            .collect(),
    }
}

/// `E_q(z) = sum q^(n(n-1)/2) z^n / (q;q)_n`.
pub fn big_e_q_series(order: usize) -> QSeries {
    QSeries {
        coeffs: (0..=order)
            .map(|n| {
                let n = n as i64;
                Coeff::with_den(
                    LaurentPolyQ::q_pow(n * (n - 1) / 2),
                    (1..=n).map(|j| (j, 1)).collect(),
                )
            })
            .collect(),
    }
}

/// `exp_q(z) = sum z^n / (n)_{q^2}!` where `(s)_{q^2} = (q^(2s)-1)/(q^2-1)`.
///
/// `(n)_{q^2}! = prod_s (1-q^(2s)) / (1-q^2)^n` up to sign; the signs cancel.
pub fn exp_q_series(order: usize) -> QSeries {
    QSeries {
        coeffs: (0..=order)
            .map(|n| {
                let n = n as i64;
                let mut den: BTreeMap<i64, i64> = (1..=n).map(|s| (2 * s, 1)).collect();
                if n > 0 {
                    *den.entry(2).or_insert(0) -= n;
                }
                // (-1)^n from numerator and denominator cancel exactly.
                Coeff::with_den(LaurentPolyQ::one(), den)
            })
            .collect(),
    }
}

/// Cauchy product, truncated to the smaller order.
pub fn series_mul(a: &QSeries, b: &QSeries) -> QSeries {
    let order = a.truncation_order().min(b.truncation_order());
    let coeffs = (0..=order)
        .map(|n| {
            let mut acc = Coeff::zero();
            for k in 0..=n {
                acc = acc.add(&a.coeffs[k].mul(&b.coeffs[n - k]));
            }
            acc
        })
        .collect();
    QSeries { coeffs }
}

/// Substitution `z -> c z`.
pub fn series_compose_scale(a: &QSeries, c: &RatFuncQ) -> QSeries {
    let c = Coeff::from_ratfunc(c);
    let mut power = Coeff::one();
    let coeffs = a
        .coeffs
        .iter()
        .map(|coef| {
            let out = coef.mul(&power);
            power = power.mul(&c);
            out
        })
        .collect();
    QSeries { coeffs }
}

/// Substitution `z -> -z`.
pub fn series_negate_z(a: &QSeries) -> QSeries {
    QSeries {
        coeffs: a
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, c)| if n % 2 == 0 { c.clone() } else { c.neg() })
            .collect(),
    }
}

/// Substitute `q -> q^d` in every coefficient (used to move a series to the
/// base q_alpha = q^(d_alpha)).
pub fn series_subst_q_pow(a: &QSeries, d: i64) -> QSeries {
    QSeries {
        coeffs: a
            .coeffs
            .iter()
            .map(|c| {
                Coeff::with_den(
                    c.num.subst_q_pow(d),
                    c.den.iter().map(|(j, e)| (j * d, *e)).collect(),
                )
            })
            .collect(),
    }
}

/// Brute-force oracle for the infinite Pochhammer product: expand the
/// finite product `prod_{n=0..K} (1 - z q^n)` and truncate. For K >= order
/// the coefficients up to `order` are exact.
pub fn pochhammer_product_oracle(order: usize, extra_factors: usize) -> QSeries {
    let mut coeffs: Vec<LaurentPolyQ> = vec![LaurentPolyQ::zero(); order + 1];
    coeffs[0] = LaurentPolyQ::one();
    for n in 0..=(order + extra_factors) as i64 {
        // multiply by (1 - z q^n)
        for k in (1..coeffs.len()).rev() {
            let t = &coeffs[k - 1] * &LaurentPolyQ::q_pow(n);
            coeffs[k] = &coeffs[k] - &t;
        }
    }
    QSeries {
        coeffs: coeffs.into_iter().map(Coeff::from_laurent).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poch_inf_matches_product_oracle() {
        // The z^k coefficient of the finite product prod_{n<=K} (1 - z q^n)
        // agrees with the q-adic expansion of the closed-form coefficient in
        // every q-degree <= K - k.
        let n = 8;
        let depth = 10i64;
        let series = pochhammer_inf_series(n);
        let oracle = pochhammer_product_oracle(n, depth as usize + 4);
        for k in 0..=n {
            let lhs = series.coeff(k).q_expansion(depth);
            let rhs = oracle.coeff(k).q_expansion(depth);
            assert_eq!(lhs, rhs, "coefficient of z^{} disagrees", k);
        }
    }

    #[test]
    fn poch_inf_low_orders() {
        let s = pochhammer_inf_series(1);
        assert!(s.coeff(0).is_one());
        // coefficient of z is -1/(1-q), i.e. 1/(q-1)
        let expect = RatFuncQ::new(
            LaurentPolyQ::one(),
            &LaurentPolyQ::q() - &LaurentPolyQ::one(),
        );
        assert_eq!(s.coeff(1), expect);
        assert!(e_q_series(0).coeff(0).is_one());
    }

    #[test]
    fn exp_q_coefficients() {
        // coefficient of z^2 is 1/(2)_{q^2} = 1/(1 + q^2)
        let s = exp_q_series(2);
        let expect = RatFuncQ::new(
            LaurentPolyQ::one(),
            &LaurentPolyQ::one() + &LaurentPolyQ::q_pow(2),
        );
        assert_eq!(s.coeff(2), expect);
    }

    #[test]
    fn unit_of_series_mul() {
        let s = big_e_q_series(8);
        assert_eq!(series_mul(&QSeries::one(8), &s), s);
    }

    #[test]
    fn eq_inverse_of_pochhammer() {
        // e_q(z) * (z;q)_inf = 1
        let n = 15;
        let p = series_mul(&e_q_series(n), &pochhammer_inf_series(n));
        assert!(p.is_one());
    }

    #[test]
    fn big_e_small_e_inverse() {
        // E_q(-z) e_q(z) = 1
        let n = 15;
        let p = series_mul(&series_negate_z(&big_e_q_series(n)), &e_q_series(n));
        assert!(p.is_one());
    }

    #[test]
    fn big_e_is_pochhammer_of_minus_z() {
        // E_q(z) = (-z;q)_inf
        let n = 12;
        assert_eq!(big_e_q_series(n), series_negate_z(&pochhammer_inf_series(n)));
    }

    #[test]
    fn exp_q_via_e_q_squared_base() {
        // exp_q(z) = e_{q^2}((1-q^2) z)
        let n = 12;
        let base = series_subst_q_pow(&e_q_series(n), 2);
        let scale = RatFuncQ::from_laurent(&LaurentPolyQ::one() - &LaurentPolyQ::q_pow(2));
        assert_eq!(series_compose_scale(&base, &scale), exp_q_series(n));
    }
}
