//! Exact coefficient arithmetic: rationals, Laurent polynomials and rational
//! functions in `q`, and cyclotomic fields for the root-of-unity work.
//!
//! Every value is immutable after construction; all operations are pure.

mod cyclo;
mod laurent;
mod ratfunc;

pub use cyclo::{cyclotomic_poly, CycloField, CycloScalar};
pub use laurent::LaurentPolyQ;
pub use ratfunc::RatFuncQ;

/// Arbitrary-precision rational, the ground field.
pub type BigRat = num_rational::BigRational;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ExactError {
    #[error("ell must be an odd positive integer, got {0}")]
    BadEll(i64),
    #[error("binomial requires n <= m, got m = {m}, n = {n}")]
    InvalidBinomial { m: u32, n: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole at the primitive {ell}-th root of unity: denominator {denominator}")]
    PoleAtRoot { ell: i64, denominator: String },
    #[error("value does not vanish at the primitive {ell}-th root of unity")]
    NotZeroAtRoot { ell: i64 },
}
