//! The field of rational functions in `q` over the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::One;

use super::{BigRat, ExactError, LaurentPolyQ};

/// A reduced fraction of Laurent polynomials. The denominator is a true
/// polynomial, monic, with nonzero constant term; all q-power units live in
/// the numerator. Reduction happens on construction, so equality is
/// structural.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFuncQ {
    num: LaurentPolyQ,
    den: LaurentPolyQ,
}

impl RatFuncQ {
    pub fn new(num: LaurentPolyQ, den: LaurentPolyQ) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self { num, den: LaurentPolyQ::one() };
        }
        // Pull the q-power unit out of the denominator.
        let dlo = den.lo().unwrap();
        let mut num = num.shifted(-dlo);
        let mut den = den.shifted(-dlo);
        let g = num.gcd(&den);
        if !g.is_one() {
            num = num.exact_div(&g).expect("gcd divides");
            den = den.exact_div(&g).expect("gcd divides");
        }
        // Monic denominator.
        let lead = den.leading_coeff();
        if !lead.is_one() {
            let inv = BigRat::one() / lead;
            num = num.scaled(&inv);
            den = den.scaled(&inv);
        }
        Self { num, den }
    }

    pub fn from_laurent(p: LaurentPolyQ) -> Self {
        Self { num: p, den: LaurentPolyQ::one() }
    }

    pub fn zero() -> Self {
        Self::from_laurent(LaurentPolyQ::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPolyQ::one())
    }

    pub fn q() -> Self {
        Self::from_laurent(LaurentPolyQ::q())
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_laurent(LaurentPolyQ::q_pow(k))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_laurent(LaurentPolyQ::from_int(n))
    }

    pub fn from_rat(r: BigRat) -> Self {
        Self::from_laurent(LaurentPolyQ::constant(r))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn numer(&self) -> &LaurentPolyQ {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPolyQ {
        &self.den
    }

    /// True when the reduced denominator is 1, i.e. the value is a Laurent
    /// polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    pub fn as_laurent(&self) -> Option<&LaurentPolyQ> {
        self.is_laurent().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(Self::new(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: i64) -> Self {
        if n < 0 {
            return self.inv().expect("negative power of zero").pow(-n);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n as u64;
        // square and multiply
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Substitute `q -> q^d`.
    pub fn subst_q_pow(&self, d: i64) -> Self {
        Self::new(self.num.subst_q_pow(d), self.den.subst_q_pow(d))
    }

    /// The q-adic expansion of the value, truncated after `q^through`.
    /// Well-defined because the reduced denominator has a nonzero constant
    /// term. Terms of the numerator below q^0 shift the expansion window.
    pub fn q_expansion(&self, through: i64) -> LaurentPolyQ {
        if self.is_zero() {
            return LaurentPolyQ::zero();
        }
        let lo = self.num.lo().unwrap().min(0);
        let need = through - lo;
        if need < 0 {
            return LaurentPolyQ::zero();
        }
        // Invert the denominator as a power series to degree `need`.
        let d0 = self.den.coeff(0);
        debug_assert!(!num_traits::Zero::is_zero(&d0));
        let mut inv = vec![BigRat::one() / d0.clone()];
        for k in 1..=need {
            let mut s = BigRat::from_integer(0.into());
            for j in 1..=k.min(self.den.hi().unwrap_or(0)) {
                s += self.den.coeff(j) * inv[(k - j) as usize].clone();
            }
            inv.push(-s / d0.clone());
        }
        let inv_poly =
            LaurentPolyQ::from_coeffs(inv.into_iter().enumerate().map(|(k, c)| (k as i64, c)));
        let prod = &self.num * &inv_poly;
        LaurentPolyQ::from_coeffs(
            prod.iter()
                .filter(|(e, _)| **e <= through)
                .map(|(e, c)| (*e, c.clone())),
        )
    }

    pub fn map_terms(num: LaurentPolyQ) -> Self {
        Self::from_laurent(num)
    }
}

impl Add for &RatFuncQ {
    type Output = RatFuncQ;
    fn add(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFuncQ::new(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let db = rhs.den.exact_div(&g).expect("gcd divides");
        let da = self.den.exact_div(&g).expect("gcd divides");
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        let den = &self.den * &db;
        RatFuncQ::new(num, den)
    }
}

impl Sub for &RatFuncQ {
    type Output = RatFuncQ;
    fn sub(self, rhs: &RatFuncQ) -> RatFuncQ {
        self + &(-rhs)
    }
}

impl Mul for &RatFuncQ {
    type Output = RatFuncQ;
    fn mul(self, rhs: &RatFuncQ) -> RatFuncQ {
        if self.is_zero() || rhs.is_zero() {
            return RatFuncQ::zero();
        }
        // Cross-reduce before multiplying to keep intermediates small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let na = self.num.exact_div(&g1).expect("gcd divides");
        let db = rhs.den.exact_div(&g1).expect("gcd divides");
        let nb = rhs.num.exact_div(&g2).expect("gcd divides");
        let da = self.den.exact_div(&g2).expect("gcd divides");
        RatFuncQ::new(&na * &nb, &da * &db)
    }
}

impl Div for &RatFuncQ {
    type Output = RatFuncQ;
    fn div(self, rhs: &RatFuncQ) -> RatFuncQ {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

impl Neg for &RatFuncQ {
    type Output = RatFuncQ;
    fn neg(self) -> RatFuncQ {
        RatFuncQ { num: -&self.num, den: self.den.clone() }
    }
}

impl AddAssign<&RatFuncQ> for RatFuncQ {
    fn add_assign(&mut self, rhs: &RatFuncQ) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFuncQ> for RatFuncQ {
    fn sub_assign(&mut self, rhs: &RatFuncQ) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFuncQ> for RatFuncQ {
    fn mul_assign(&mut self, rhs: &RatFuncQ) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if self.num.num_terms() <= 1 {
                write!(f, "{}", self.num)
            } else {
                write!(f, "({})", self.num)
            }
        } else {
            if self.num.num_terms() <= 1 {
                write!(f, "{}/({})", self.num, self.den)
            } else {
                write!(f, "({})/({})", self.num, self.den)
            }
        }
    }
}

impl fmt::Debug for RatFuncQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalization_unique() {
        // (q^2 - 1)/(q^3 - q) reduces to (q+1)/(q^2... let's see: (q-1)(q+1)/(q(q-1)(q+1)) = q^-1
        let num = &LaurentPolyQ::q_pow(2) - &LaurentPolyQ::one();
        let den = &LaurentPolyQ::q_pow(3) - &LaurentPolyQ::q();
        let f = RatFuncQ::new(num, den);
        assert_eq!(f, RatFuncQ::q_pow(-1));
        assert!(f.is_laurent());
    }

    #[test]
    fn inverse_roundtrip() {
        let f = RatFuncQ::new(
            &LaurentPolyQ::q_pow(2) + &LaurentPolyQ::one(),
            &LaurentPolyQ::q() - &LaurentPolyQ::from_int(3),
        );
        let g = f.inv().unwrap();
        assert!((&f * &g).is_one());
    }
}
