//! Exact q-symbols: bracket and round q-numbers, factorials, binomials, and
//! the finite q-Pochhammer product. All computed division-free where the
//! result is a Laurent polynomial.

use crate::exact::{ExactError, LaurentPolyQ, RatFuncQ};

/// `[s]_q = (q^s - q^-s)/(q - q^-1) = q^(s-1) + q^(s-3) + ... + q^(1-s)`.
pub fn q_bracket(s: u32) -> RatFuncQ {
    let mut p = LaurentPolyQ::zero();
    for j in 0..s {
        p = &p + &LaurentPolyQ::q_pow(s as i64 - 1 - 2 * j as i64);
    }
    RatFuncQ::from_laurent(p)
}

/// `[k]_q! = prod_{s=1..k} [s]_q`.
pub fn q_factorial(k: u32) -> RatFuncQ {
    let mut acc = RatFuncQ::one();
    for s in 1..=k {
        acc = &acc * &q_bracket(s);
    }
    acc
}

/// Gaussian binomial in the bracket convention, `[m]!/([m-n]! [n]!)`.
pub fn q_binom_bracket(m: u32, n: u32) -> Result<RatFuncQ, ExactError> {
    if n > m {
        return Err(ExactError::InvalidBinomial { m, n });
    }
    // prod_{s=m-n+1..m} [s] / [n]!  -- the quotient is exact.
    let mut num = LaurentPolyQ::one();
    for s in (m - n + 1)..=m {
        num = &num * q_bracket(s).as_laurent().unwrap();
    }
    for s in 1..=n {
        num = num
            .exact_div(q_bracket(s).as_laurent().unwrap())
            .expect("Gaussian binomial is a Laurent polynomial");
    }
    Ok(RatFuncQ::from_laurent(num))
}

/// `(s)_q = (q^s - 1)/(q - 1) = 1 + q + ... + q^(s-1)`.
pub fn q_number_round(s: u32) -> RatFuncQ {
    let mut p = LaurentPolyQ::zero();
    for j in 0..s {
        p = &p + &LaurentPolyQ::q_pow(j as i64);
    }
    RatFuncQ::from_laurent(p)
}

/// `(k)_q! = prod_{s=1..k} (s)_q`.
pub fn q_factorial_round(k: u32) -> RatFuncQ {
    let mut acc = RatFuncQ::one();
    for s in 1..=k {
        acc = &acc * &q_number_round(s);
    }
    acc
}

/// Round-parenthesis binomial `(m)!/((m-n)!(n)!)`.
pub fn q_binom_round(m: u32, n: u32) -> Result<RatFuncQ, ExactError> {
    if n > m {
        return Err(ExactError::InvalidBinomial { m, n });
    }
    let mut num = LaurentPolyQ::one();
    for s in (m - n + 1)..=m {
        num = &num * q_number_round(s).as_laurent().unwrap();
    }
    for s in 1..=n {
        num = num
            .exact_div(q_number_round(s).as_laurent().unwrap())
            .expect("round q-binomial is a polynomial");
    }
    Ok(RatFuncQ::from_laurent(num))
}

/// Finite q-Pochhammer `(a;q)_n = prod_{k=0..n-1} (1 - a q^k)`.
pub fn q_pochhammer_finite(a: &RatFuncQ, n: u32) -> RatFuncQ {
    let mut acc = RatFuncQ::one();
    for k in 0..n {
        let factor = &RatFuncQ::one() - &(a * &RatFuncQ::q_pow(k as i64));
        acc = &acc * &factor;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::LaurentPolyQ;

    #[test]
    fn brackets() {
        assert!(q_bracket(0).is_zero());
        assert!(q_bracket(1).is_one());
        // [2]_q = q + q^-1
        let expect = &LaurentPolyQ::q() + &LaurentPolyQ::q_pow(-1);
        assert_eq!(q_bracket(2), RatFuncQ::from_laurent(expect));
        // definition route: (q^s - q^-s)/(q - q^-1)
        for s in 0..8u32 {
            let num = &LaurentPolyQ::q_pow(s as i64) - &LaurentPolyQ::q_pow(-(s as i64));
            let den = &LaurentPolyQ::q() - &LaurentPolyQ::q_pow(-1);
            assert_eq!(q_bracket(s), RatFuncQ::new(num, den));
        }
    }

    #[test]
    fn factorial_example() {
        // [3]! = [2][3] = (q+q^-1)(q^2+1+q^-2)
        let b2 = q_bracket(2);
        let b3 = q_bracket(3);
        assert_eq!(q_factorial(3), &b2 * &b3);
    }

    #[test]
    fn binomials() {
        for m in 0..7u32 {
            assert!(q_binom_bracket(m, 0).unwrap().is_one());
            assert!(q_binom_bracket(m, m).unwrap().is_one());
            assert!(q_binom_round(m, m).unwrap().is_one());
        }
        assert_eq!(q_binom_bracket(2, 1).unwrap(), q_bracket(2));
        assert!(q_binom_bracket(1, 2).is_err());
        // Pascal recurrence as an independent oracle for the round binomial:
        // (m n)_q = (m-1 n-1)_q + q^n (m-1 n)_q
        for m in 1..8u32 {
            for n in 1..m {
                let lhs = q_binom_round(m, n).unwrap();
                let rhs = &q_binom_round(m - 1, n - 1).unwrap()
                    + &(&RatFuncQ::q_pow(n as i64) * &q_binom_round(m - 1, n).unwrap());
                assert_eq!(lhs, rhs, "round Pascal fails at ({}, {})", m, n);
            }
        }
    }

    #[test]
    fn round_numbers() {
        assert!(q_number_round(1).is_one());
        let expect = &(&LaurentPolyQ::q_pow(2) + &LaurentPolyQ::q()) + &LaurentPolyQ::one();
        assert_eq!(q_number_round(3), RatFuncQ::from_laurent(expect));
        // (s)_q has degree s-1
        for s in 1..10u32 {
            assert_eq!(
                q_number_round(s).as_laurent().unwrap().degree(),
                Some(s as i64 - 1)
            );
        }
    }

    #[test]
    fn bracket_round_relation() {
        // [s]_q = q^(1-s) * (s)_{q^2}
        for s in 0..=20u32 {
            let lhs = q_bracket(s);
            let rhs = &RatFuncQ::q_pow(1 - s as i64) * &q_number_round(s).subst_q_pow(2);
            assert_eq!(lhs, rhs, "relation fails at s = {}", s);
        }
    }

    #[test]
    fn pochhammer_finite() {
        assert!(q_pochhammer_finite(&RatFuncQ::one(), 0).is_one());
        assert!(q_pochhammer_finite(&RatFuncQ::one(), 2).is_zero());
        let expect = &(&RatFuncQ::one() - &RatFuncQ::q())
            * &(&RatFuncQ::one() - &RatFuncQ::q_pow(2));
        assert_eq!(q_pochhammer_finite(&RatFuncQ::q(), 2), expect);
    }
}
