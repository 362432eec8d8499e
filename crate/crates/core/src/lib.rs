//! Exact verification engine for rank <= 2 quantized enveloping algebras:
//! PBW straightening over the rational-function field in q, the Hopf
//! structure, the truncated universal R-matrix with its compatibility
//! axioms, and specializations at odd primitive roots of unity with their
//! central elements, derivations and Poisson structure. A small
//! floating-point module checks the q-Pochhammer asymptotics numerically.

pub mod exact;
pub mod cartan;
pub mod pbw;
pub mod rmat;
pub mod specialization;
pub mod qcalc;

pub use exact::{BigRat, CycloField, CycloScalar, ExactError, LaurentPolyQ, RatFuncQ};
