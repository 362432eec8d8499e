//! The quantized enveloping algebra for rank <= 2 as ordered PBW monomials
//! over the rational-function field, with a straightening engine driven by
//! the defining relations, the Hopf structure maps, and the integral-form
//! (barred) generators.

mod elem;
mod hopf;
pub mod oracle;
pub mod parse;
mod tensor;
mod word;

pub use elem::AlgElem;
pub use hopf::{antipode, coproduct, counit};
pub use tensor::TensorElem;
pub use word::{straighten_word, Gen, Strategy};

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::cartan::{CartanDatum, CartanError, Lattice, LatticeElem, Root, TypeTag};
use crate::exact::RatFuncQ;

#[derive(Debug, Clone, thiserror::Error)]
pub enum PbwError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("generator index {0} outside the datum")]
    BadGenerator(usize),
    #[error("lattice element outside the chosen lattice")]
    OutsideLattice,
    #[error("tensor cutoff {cutoff} too small: term requires grade {needed}")]
    TruncationOverflow { cutoff: i64, needed: i64 },
    #[error("straightening did not terminate within {0} steps")]
    NonTermination(usize),
    #[error("free-algebra oracle degree bound exceeded ({0} words)")]
    OracleDegreeBound(usize),
    #[error("oracle validation failed: {0}")]
    OracleValidation(String),
}

/// An ordered PBW monomial `F^a L_mu E^b`, exponents indexed by the positive
/// roots in convex order, the lattice part in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PbwMonomial {
    pub f: Vec<u32>,
    pub lat: Vec<i64>,
    pub e: Vec<u32>,
}

impl PbwMonomial {
    pub fn unit(datum: &CartanDatum) -> Self {
        PbwMonomial {
            f: vec![0; datum.num_positive_roots()],
            lat: vec![0; datum.rank],
            e: vec![0; datum.num_positive_roots()],
        }
    }

    pub fn is_unit(&self) -> bool {
        self.f.iter().all(|x| *x == 0)
            && self.lat.iter().all(|x| *x == 0)
            && self.e.iter().all(|x| *x == 0)
    }

    pub fn is_lattice_only(&self) -> bool {
        self.f.iter().all(|x| *x == 0) && self.e.iter().all(|x| *x == 0)
    }

    /// Weight in root coordinates: sum of E-exponents minus F-exponents.
    pub fn weight(&self, datum: &CartanDatum) -> Root {
        let mut w = vec![0i64; datum.rank];
        for (idx, root) in datum.positive_roots.iter().enumerate() {
            let c = self.e[idx] as i64 - self.f[idx] as i64;
            for k in 0..datum.rank {
                w[k] += c * root[k];
            }
        }
        w
    }

    /// Height of the E-part (sum over roots of exponent times root height).
    pub fn e_height(&self, datum: &CartanDatum) -> i64 {
        self.e
            .iter()
            .zip(&datum.positive_roots)
            .map(|(x, r)| *x as i64 * crate::cartan::root_height(r))
            .sum()
    }

    pub fn f_height(&self, datum: &CartanDatum) -> i64 {
        self.f
            .iter()
            .zip(&datum.positive_roots)
            .map(|(x, r)| *x as i64 * crate::cartan::root_height(r))
            .sum()
    }

    pub fn total_degree(&self) -> i64 {
        self.f.iter().chain(self.e.iter()).map(|x| *x as i64).sum()
    }
}

/// Shared algebra context: the Cartan datum, the lattice choice, and a
/// product cache for monomial-pair straightenings.
pub struct AlgebraCtx {
    pub datum: CartanDatum,
    pub lattice: Lattice,
    mul_cache: Mutex<HashMap<(PbwMonomial, PbwMonomial), Arc<Vec<(PbwMonomial, RatFuncQ)>>>>,
}

impl AlgebraCtx {
    /// Full straightening tables exist for A1, A1xA1 and A2; B2 and G2 are
    /// served only by the free-algebra oracle.
    pub fn new(tag: TypeTag, lattice: Lattice) -> Result<Arc<Self>, PbwError> {
        match tag {
            TypeTag::A1 | TypeTag::A1xA1 | TypeTag::A2 => Ok(Arc::new(AlgebraCtx {
                datum: CartanDatum::new(tag),
                lattice,
                mul_cache: Mutex::new(HashMap::new()),
            })),
            other => Err(CartanError::Unsupported(other).into()),
        }
    }

    pub fn tag(&self) -> TypeTag {
        self.datum.tag
    }

    /// Check that a lattice element lies in the configured lattice.
    pub fn check_lattice(&self, mu: &LatticeElem) -> Result<(), PbwError> {
        match self.lattice {
            Lattice::P => Ok(()),
            Lattice::Q => mu
                .root_coords(&self.datum)
                .map(|_| ())
                .ok_or(PbwError::OutsideLattice),
        }
    }

    /// Torus commutation exponent `(mu | beta)` against the positive root at
    /// `idx`.
    pub fn form_with_root_idx(&self, mu: &LatticeElem, idx: usize) -> i64 {
        mu.form_with_root(&self.datum, &self.datum.positive_roots[idx])
    }

    /// q_alpha - q_alpha^-1 for the positive root at `idx`.
    pub fn q_alpha_diff(&self, idx: usize) -> RatFuncQ {
        let d = self.datum.d_of_root(idx);
        &RatFuncQ::q_pow(d) - &RatFuncQ::q_pow(-d)
    }

    pub(crate) fn cached_mono_product(
        self: &Arc<Self>,
        a: &PbwMonomial,
        b: &PbwMonomial,
    ) -> Arc<Vec<(PbwMonomial, RatFuncQ)>> {
        {
            let cache = self.mul_cache.lock().unwrap();
            if let Some(hit) = cache.get(&(a.clone(), b.clone())) {
                return hit.clone();
            }
        }
        let mut w = word::monomial_to_word(self, a);
        w.extend(word::monomial_to_word(self, b));
        let elem = straighten_word(self, &w, Strategy::Leftmost).expect("product terminates");
        let terms: Arc<Vec<_>> = Arc::new(elem.into_terms().collect());
        self.mul_cache
            .lock()
            .unwrap()
            .insert((a.clone(), b.clone()), terms.clone());
        terms
    }

    /// Human-readable name of a positive root, e.g. "1", "12".
    pub fn root_name(&self, idx: usize) -> String {
        let root = &self.datum.positive_roots[idx];
        if crate::cartan::root_height(root) == 1 {
            let i = root.iter().position(|c| *c == 1).unwrap();
            return format!("{}", i + 1);
        }
        // A2's alpha_1 + alpha_2
        "12".to_string()
    }
}

impl std::fmt::Debug for AlgebraCtx {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "AlgebraCtx({}, {:?})", self.datum.tag, self.lattice)
    }
}
