//! Exact q-symbols and degree-truncated formal power series.
//!
//! Convention note: the products here run from index 0, i.e.
//! `(a;q)_n = prod_{k=0..n-1} (1 - a q^k)` and
//! `(z;q)_inf = prod_{n>=0} (1 - z q^n)`. This is the convention under which
//! the displayed Taylor series and the identities `e_q = (z;q)_inf^-1`,
//! `E_q(z) = (-z;q)_inf`, `E_q(-z) e_q(z) = 1` all hold exactly; see
//! docs/CHECKS.md for the full statement.

mod series;
mod symbols;

pub use series::{
    big_e_q_series, e_q_series, exp_q_series, pochhammer_inf_series,
    pochhammer_product_oracle, series_compose_scale, series_mul, series_negate_z,
    series_subst_q_pow, QSeries,
};
pub use symbols::{
    q_binom_bracket, q_binom_round, q_bracket, q_factorial, q_factorial_round,
    q_number_round, q_pochhammer_finite,
};
