//! Cyclotomic fields Q(eps_l) for odd l, and evaluation of rational
//! functions of q at the root of unity eps, including the divided value
//! (f(q)/(q - eps))|_{q=eps} used for the Poisson bracket.

use std::fmt;
use std::sync::Arc;

use num_traits::One;

use super::{BigRat, ExactError, LaurentPolyQ, RatFuncQ};

/// The l-th cyclotomic polynomial, monic of degree phi(l).
///
/// Rejects even or nonpositive input: the algebras downstream only ever
/// specialize at odd primitive roots (or at 1).
pub fn cyclotomic_poly(ell: i64) -> Result<LaurentPolyQ, ExactError> {
    if ell < 1 || ell % 2 == 0 {
        return Err(ExactError::BadEll(ell));
    }
    // Phi_l = (q^l - 1) / prod_{d | l, d < l} Phi_d
    let mut num = &LaurentPolyQ::q_pow(ell) - &LaurentPolyQ::one();
    for d in 1..ell {
        if ell % d == 0 {
            let phi_d = cyclotomic_poly(d)?;
            num = num.exact_div(&phi_d).expect("cyclotomic factor divides");
        }
    }
    Ok(num)
}

#[derive(Clone, PartialEq, Eq)]
pub struct CycloField {
    ell: i64,
    minimal_poly: LaurentPolyQ,
}

impl CycloField {
    pub fn new(ell: i64) -> Result<Arc<Self>, ExactError> {
        let minimal_poly = cyclotomic_poly(ell)?;
        Ok(Arc::new(Self { ell, minimal_poly }))
    }

    pub fn ell(&self) -> i64 {
        self.ell
    }

    pub fn minimal_poly(&self) -> &LaurentPolyQ {
        &self.minimal_poly
    }

    pub fn degree(&self) -> i64 {
        self.minimal_poly.degree().unwrap()
    }
}

/// An element of Q(eps_l), stored as the reduced polynomial in eps of degree
/// < phi(l).
#[derive(Clone)]
pub struct CycloScalar {
    field: Arc<CycloField>,
    residue: LaurentPolyQ,
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.ell == other.field.ell && self.residue == other.residue
    }
}

impl Eq for CycloScalar {}

impl CycloScalar {
    fn reduce(field: &Arc<CycloField>, mut p: LaurentPolyQ) -> Self {
        // Clear negative powers first: eps^-1 = eps^(l-1).
        if let Some(lo) = p.lo() {
            if lo < 0 {
                let ell = field.ell;
                let shift = ell * ((-lo + ell - 1) / ell);
                p = LaurentPolyQ::from_coeffs(
                    p.iter().map(|(e, c)| ((*e + shift) % ell, c.clone())),
                );
            }
        }
        // eps^l = 1
        if p.hi().map_or(false, |h| h >= field.ell) {
            p = LaurentPolyQ::from_coeffs(p.iter().map(|(e, c)| (*e % field.ell, c.clone())));
        }
        // Then reduce modulo the minimal polynomial.
        let deg = field.degree();
        while p.hi().map_or(false, |h| h >= deg) {
            let h = p.hi().unwrap();
            let lead = p.leading_coeff();
            let t = field.minimal_poly.shifted(h - deg).scaled(&lead);
            p = &p - &t;
        }
        Self { field: field.clone(), residue: p }
    }

    pub fn from_poly(field: &Arc<CycloField>, p: LaurentPolyQ) -> Self {
        Self::reduce(field, p)
    }

    pub fn zero(field: &Arc<CycloField>) -> Self {
        Self { field: field.clone(), residue: LaurentPolyQ::zero() }
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self { field: field.clone(), residue: LaurentPolyQ::one() }
    }

    pub fn from_rat(field: &Arc<CycloField>, r: BigRat) -> Self {
        Self { field: field.clone(), residue: LaurentPolyQ::constant(r) }
    }

    pub fn from_int(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rat(field, BigRat::from_integer(n.into()))
    }

    /// The root of unity itself.
    pub fn epsilon(field: &Arc<CycloField>) -> Self {
        Self::reduce(field, LaurentPolyQ::q())
    }

    /// eps^k for any integer k.
    pub fn epsilon_pow(field: &Arc<CycloField>, k: i64) -> Self {
        let ell = field.ell;
        let k = k.rem_euclid(ell);
        Self::reduce(field, LaurentPolyQ::q_pow(k))
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn ell(&self) -> i64 {
        self.field.ell
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.residue.is_one()
    }

    /// The canonical representative in Q[q], degree < phi(l).
    pub fn lift(&self) -> LaurentPolyQ {
        self.residue.clone()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        Self { field: self.field.clone(), residue: &self.residue + &rhs.residue }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        Self { field: self.field.clone(), residue: &self.residue - &rhs.residue }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.assert_same_field(rhs);
        Self::reduce(&self.field, &self.residue * &rhs.residue)
    }

    pub fn neg(&self) -> Self {
        Self { field: self.field.clone(), residue: -&self.residue }
    }

    pub fn scale(&self, r: &BigRat) -> Self {
        Self { field: self.field.clone(), residue: self.residue.scaled(r) }
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // Extended Euclid in Q[x] against the minimal polynomial.
        let (mut r0, mut r1) = (self.field.minimal_poly.clone(), self.residue.clone());
        let (mut s0, mut s1) = (LaurentPolyQ::zero(), LaurentPolyQ::one());
        while !r1.is_zero() {
            let (q, r) = poly_divrem(&r0, &r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 = gcd, a nonzero constant since the minimal polynomial is irreducible.
        debug_assert_eq!(r0.degree(), Some(0));
        let c = r0.coeff(0);
        Ok(Self::reduce(&self.field, s0.scaled(&(BigRat::one() / c))))
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().expect("negative power of zero").pow(-n);
        }
        let mut acc = Self::one(&self.field);
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            n >>= 1;
        }
        acc
    }

    fn assert_same_field(&self, rhs: &Self) {
        assert_eq!(self.field.ell, rhs.field.ell, "mixed cyclotomic fields");
    }
}

fn poly_divrem(a: &LaurentPolyQ, b: &LaurentPolyQ) -> (LaurentPolyQ, LaurentPolyQ) {
    assert!(!b.is_zero());
    let bh = b.hi().unwrap();
    let bl = b.leading_coeff();
    let mut rem = a.clone();
    let mut quot = LaurentPolyQ::zero();
    while let Some(rh) = rem.hi() {
        if rh < bh {
            break;
        }
        let t = LaurentPolyQ::monomial(rh - bh, rem.leading_coeff() / bl.clone());
        rem = &rem - &(&t * b);
        quot = &quot + &t;
    }
    (quot, rem)
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.residue.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.residue.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", c)?,
                1 => write!(f, "{}*e", c)?,
                _ => write!(f, "{}*e^{}", c, k)?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl RatFuncQ {
    /// Evaluate at the primitive root of the given field. Errors if the
    /// denominator vanishes there.
    pub fn specialize(&self, field: &Arc<CycloField>) -> Result<CycloScalar, ExactError> {
        let den = CycloScalar::from_poly(field, self.denom().clone());
        if den.is_zero() {
            return Err(ExactError::PoleAtRoot {
                ell: field.ell(),
                denominator: self.denom().to_string(),
            });
        }
        let num = CycloScalar::from_poly(field, self.numer().clone());
        Ok(num.mul(&den.inv()?))
    }

    /// The value of f(q)/(q - eps) at q = eps, for f vanishing at eps.
    /// Computed by exact synthetic division of the numerator by (q - eps)
    /// over Q(eps).
    pub fn divided_value(&self, field: &Arc<CycloField>) -> Result<CycloScalar, ExactError> {
        let den_val = CycloScalar::from_poly(field, self.denom().clone());
        if den_val.is_zero() {
            return Err(ExactError::PoleAtRoot {
                ell: field.ell(),
                denominator: self.denom().to_string(),
            });
        }
        if self.is_zero() {
            return Ok(CycloScalar::zero(field));
        }
        // Shift the numerator to a genuine polynomial; the q^lo unit just
        // contributes eps^lo.
        let lo = self.numer().lo().unwrap();
        let poly = self.numer().shifted(-lo);
        let hi = poly.hi().unwrap();
        let eps = CycloScalar::epsilon(field);
        // Horner: b_{k-1} = a_k + eps*b_k, remainder a_0 + eps*b_0.
        let mut quotient_at_eps = CycloScalar::zero(field);
        let mut b = CycloScalar::zero(field);
        for k in (0..=hi).rev() {
            let a_k = CycloScalar::from_rat(field, poly.coeff(k));
            if k > 0 {
                b = a_k.add(&eps.mul(&b));
                // quotient coefficient b_{k-1} contributes b_{k-1} * eps^{k-1}
                quotient_at_eps = quotient_at_eps.add(&b.mul(&eps.pow(k - 1)));
            } else {
                let rem = a_k.add(&eps.mul(&b));
                if !rem.is_zero() {
                    return Err(ExactError::NotZeroAtRoot { ell: field.ell() });
                }
            }
        }
        Ok(quotient_at_eps
            .mul(&CycloScalar::epsilon_pow(field, lo))
            .mul(&den_val.inv()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomics() {
        let q = LaurentPolyQ::q();
        let one = LaurentPolyQ::one();
        assert_eq!(cyclotomic_poly(1).unwrap(), &q - &one);
        // Phi_3 = q^2 + q + 1, via dividing q^3-1 by q-1 (independent route)
        let phi3 = cyclotomic_poly(3).unwrap();
        let oracle = (&LaurentPolyQ::q_pow(3) - &one).exact_div(&(&q - &one)).unwrap();
        assert_eq!(phi3, oracle);
        // Phi_5 likewise
        let phi5 = cyclotomic_poly(5).unwrap();
        let oracle5 = (&LaurentPolyQ::q_pow(5) - &one).exact_div(&(&q - &one)).unwrap();
        assert_eq!(phi5, oracle5);
        // Phi_9 = q^6 + q^3 + 1
        let phi9 = cyclotomic_poly(9).unwrap();
        let expect = &(&LaurentPolyQ::q_pow(6) + &LaurentPolyQ::q_pow(3)) + &one;
        assert_eq!(phi9, expect);
        assert!(cyclotomic_poly(2).is_err());
        assert!(cyclotomic_poly(0).is_err());
    }

    #[test]
    fn phi_divides_qn_minus_one() {
        for ell in [1i64, 3, 5, 7, 9, 15] {
            let phi = cyclotomic_poly(ell).unwrap();
            let p = &LaurentPolyQ::q_pow(ell) - &LaurentPolyQ::one();
            assert!(p.exact_div(&phi).is_some(), "Phi_{} must divide q^{}-1", ell, ell);
        }
    }

    #[test]
    fn inverse_in_field() {
        let field = CycloField::new(3).unwrap();
        // 1/(eps - 1) = (-eps - 2)/3, checked by multiplying back
        let em1 = CycloScalar::epsilon(&field)
            .sub(&CycloScalar::one(&field));
        let inv = em1.inv().unwrap();
        assert!(em1.mul(&inv).is_one());
        let mut expect = LaurentPolyQ::constant(BigRat::new((-2).into(), 3.into()));
        expect = &expect + &LaurentPolyQ::monomial(1, BigRat::new((-1).into(), 3.into()));
        assert_eq!(inv.lift(), expect);
    }
}
