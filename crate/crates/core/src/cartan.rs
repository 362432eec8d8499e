//! Cartan data for the rank <= 2 types: Cartan matrix, symmetrizers,
//! positive roots in a fixed convex order, root lengths, and the weight
//! lattice pairing.
//!
//! Normalization: the symmetric bilinear form is fixed by
//! `(alpha_i | alpha_j) = d_i a_ij`, so `(alpha_i | alpha_i) = 2 d_i` and
//! `(omega_i | alpha_j) = d_j delta_ij`. The torus commutation exponent in
//! the algebra is the plain form value `(mu | alpha)`, which makes
//! conjugation of `E_j` by `K_i` produce the exponent `d_i a_ij`, matching
//! the formal-power-series presentation under `K_i -> exp(h d_i H_i)`.

use std::fmt;

use serde::{Deserialize, Serialize};


#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TypeTag {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
}

impl TypeTag {
    pub fn parse(s: &str) -> Result<Self, CartanError> {
        match s {
            "A1" => Ok(TypeTag::A1),
            "A1xA1" | "A1XA1" | "a1xa1" => Ok(TypeTag::A1xA1),
            "A2" => Ok(TypeTag::A2),
            "B2" => Ok(TypeTag::B2),
            "G2" => Ok(TypeTag::G2),
            _ => Err(CartanError::UnknownType(s.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            TypeTag::A1 => "A1",
            TypeTag::A1xA1 => "A1xA1",
            TypeTag::A2 => "A2",
            TypeTag::B2 => "B2",
            TypeTag::G2 => "G2",
        }
    }
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Lattice {
    /// Root lattice Q.
    Q,
    /// Weight lattice P (the default downstream).
    P,
}

#[derive(Debug, Clone, thiserror::Error)]
pub enum CartanError {
    #[error("unknown type tag {0:?} (expected A1, A1xA1, A2, B2, G2)")]
    UnknownType(String),
    #[error("type {0} is not supported by this operation")]
    Unsupported(TypeTag),
    #[error("lattice element not in the root lattice Q")]
    NotInRootLattice,
}

/// A positive root stored by its coordinates in the simple roots.
pub type Root = Vec<i64>;

pub fn root_height(r: &Root) -> i64 {
    r.iter().sum()
}

#[derive(Debug, Clone)]
pub struct CartanDatum {
    pub tag: TypeTag,
    pub rank: usize,
    /// Cartan matrix a_ij = 2 (alpha_i|alpha_j)/(alpha_i|alpha_i).
    pub cartan: Vec<Vec<i64>>,
    /// Relatively prime symmetrizers with (d_i a_ij) symmetric.
    pub d: Vec<i64>,
    /// Positive roots in convex order.
    pub positive_roots: Vec<Root>,
    /// Half square length of each positive root, in convex order.
    pub d_alpha: Vec<i64>,
}

impl CartanDatum {
    pub fn new(tag: TypeTag) -> Self {
        match tag {
            TypeTag::A1 => Self::build(tag, vec![vec![2]], vec![1], vec![vec![1]]),
            TypeTag::A1xA1 => Self::build(
                tag,
                vec![vec![2, 0], vec![0, 2]],
                vec![1, 1],
                vec![vec![1, 0], vec![0, 1]],
            ),
            TypeTag::A2 => Self::build(
                tag,
                vec![vec![2, -1], vec![-1, 2]],
                vec![1, 1],
                // alpha_1 < alpha_1 + alpha_2 < alpha_2
                vec![vec![1, 0], vec![1, 1], vec![0, 1]],
            ),
            // Orientation: alpha_1 short, alpha_2 long.
            TypeTag::B2 => Self::build(
                tag,
                vec![vec![2, -2], vec![-1, 2]],
                vec![1, 2],
                // alpha_1 < 2a_1+a_2 < a_1+a_2 < alpha_2
                vec![vec![1, 0], vec![2, 1], vec![1, 1], vec![0, 1]],
            ),
            TypeTag::G2 => Self::build(
                tag,
                vec![vec![2, -3], vec![-1, 2]],
                vec![1, 3],
                // alpha_1 < 3a_1+a_2 < 2a_1+a_2 < 3a_1+2a_2 < a_1+a_2 < alpha_2
                vec![
                    vec![1, 0],
                    vec![3, 1],
                    vec![2, 1],
                    vec![3, 2],
                    vec![1, 1],
                    vec![0, 1],
                ],
            ),
        }
    }

    fn build(tag: TypeTag, cartan: Vec<Vec<i64>>, d: Vec<i64>, roots: Vec<Root>) -> Self {
        let rank = d.len();
        let d_alpha = roots.iter().map(|r| half_square_length(&cartan, &d, r)).collect();
        let datum = CartanDatum {
            tag,
            rank,
            cartan,
            d,
            positive_roots: roots,
            d_alpha,
        };
        datum.validate();
        datum
    }

    fn validate(&self) {
        // (d_i a_ij) must be symmetric; positivity is clear for the five
        // hardcoded types.
        for i in 0..self.rank {
            for j in 0..self.rank {
                assert_eq!(
                    self.d[i] * self.cartan[i][j],
                    self.d[j] * self.cartan[j][i],
                    "symmetrization failure"
                );
            }
        }
        let g = self.d.iter().fold(0i64, |a, b| num_integer::gcd(a, *b));
        assert_eq!(g, 1, "symmetrizers must be relatively prime");
        // Convex order: a root that is the sum of two others lies between them.
        let n = self.positive_roots.len();
        for i in 0..n {
            for j in (i + 1)..n {
                let sum: Root = (0..self.rank)
                    .map(|k| self.positive_roots[i][k] + self.positive_roots[j][k])
                    .collect();
                if let Some(m) = self.positive_roots.iter().position(|r| *r == sum) {
                    assert!(i < m && m < j, "convex order violated for root sum");
                }
            }
        }
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    /// Index of the positive root equal to the i-th simple root.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.positive_roots
            .iter()
            .position(|r| {
                r.iter().enumerate().all(|(k, c)| *c == i64::from(k == i))
            })
            .expect("simple root present")
    }

    /// Symmetric form (beta | gamma) for root-coordinate vectors.
    pub fn form_roots(&self, beta: &Root, gamma: &Root) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += beta[i] * gamma[j] * self.d[i] * self.cartan[i][j];
            }
        }
        s
    }

    /// q_alpha exponent: d_alpha for the positive root at `idx`.
    pub fn d_of_root(&self, idx: usize) -> i64 {
        self.d_alpha[idx]
    }
}

fn half_square_length(cartan: &[Vec<i64>], d: &[i64], r: &Root) -> i64 {
    let rank = d.len();
    let mut s = 0;
    for i in 0..rank {
        for j in 0..rank {
            s += r[i] * r[j] * d[i] * cartan[i][j];
        }
    }
    debug_assert_eq!(s % 2, 0);
    s / 2
}

/// An element of a lattice Q <= M <= P, stored in fundamental-weight
/// coordinates (both Q and P embed integrally into this basis).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeElem {
    pub omega_coords: Vec<i64>,
}

impl LatticeElem {
    pub fn zero(rank: usize) -> Self {
        LatticeElem { omega_coords: vec![0; rank] }
    }

    pub fn from_weight_coords(coords: Vec<i64>) -> Self {
        LatticeElem { omega_coords: coords }
    }

    /// alpha_j = sum_k a_kj omega_k.
    pub fn from_root_coords(datum: &CartanDatum, coords: &[i64]) -> Self {
        let mut omega = vec![0i64; datum.rank];
        for (k, w) in omega.iter_mut().enumerate() {
            for (j, c) in coords.iter().enumerate() {
                *w += datum.cartan[k][j] * c;
            }
        }
        LatticeElem { omega_coords: omega }
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut coords = vec![0i64; rank];
        coords[i] = 1;
        LatticeElem { omega_coords: coords }
    }

    pub fn simple_root(datum: &CartanDatum, i: usize) -> Self {
        let mut coords = vec![0i64; datum.rank];
        coords[i] = 1;
        Self::from_root_coords(datum, &coords)
    }

    pub fn is_zero(&self) -> bool {
        self.omega_coords.iter().all(|c| *c == 0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        LatticeElem {
            omega_coords: self
                .omega_coords
                .iter()
                .zip(&rhs.omega_coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        LatticeElem { omega_coords: self.omega_coords.iter().map(|c| -c).collect() }
    }

    pub fn scaled(&self, k: i64) -> Self {
        LatticeElem { omega_coords: self.omega_coords.iter().map(|c| c * k).collect() }
    }

    /// Symmetric form (mu | beta) against a root, `(omega_i|alpha_j) = d_j delta_ij`.
    pub fn form_with_root(&self, datum: &CartanDatum, beta: &Root) -> i64 {
        self.omega_coords
            .iter()
            .enumerate()
            .map(|(j, c)| c * datum.d[j] * beta.get(j).copied().unwrap_or(0))
            .sum::<i64>()
    }

    /// Membership in the root lattice: solvable integral coordinates in the
    /// simple roots.
    pub fn root_coords(&self, datum: &CartanDatum) -> Option<Vec<i64>> {
        // Solve cartan^T * x = omega_coords over the integers (rank <= 2).
        match datum.rank {
            1 => {
                let w = self.omega_coords[0];
                (w % 2 == 0).then(|| vec![w / 2])
            }
            2 => {
                let a = &datum.cartan;
                let det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
                let (w1, w2) = (self.omega_coords[0], self.omega_coords[1]);
                // alpha_j = sum_k a_kj omega_k: columns of A give roots.
                let x1_num = w1 * a[1][1] - w2 * a[1][0];
                let x2_num = w2 * a[0][0] - w1 * a[0][1];
                (x1_num % det == 0 && x2_num % det == 0)
                    .then(|| vec![x1_num / det, x2_num / det])
            }
            _ => None,
        }
    }
}

/// The normalized integer pairing `<mu|alpha_j> = 2 (mu|alpha_j)/(alpha_j|alpha_j)`.
///
/// This is the pairing that appears in the derivation-exponential formulas;
/// the torus commutation exponents in the algebra use the plain form
/// `(mu|alpha)` instead (see the module docs).
pub fn pairing(mu: &LatticeElem, j: usize, _datum: &CartanDatum) -> i64 {
    // (mu|alpha_j) = c_j d_j, (alpha_j|alpha_j) = 2 d_j.
    mu.omega_coords[j]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn datum_shapes() {
        let a1 = CartanDatum::new(TypeTag::A1);
        assert_eq!(a1.num_positive_roots(), 1);
        assert_eq!(a1.d, vec![1]);

        let a2 = CartanDatum::new(TypeTag::A2);
        assert_eq!(a2.cartan[0][1], -1);
        assert_eq!(a2.cartan[1][0], -1);
        assert_eq!(a2.d, vec![1, 1]);
        assert_eq!(a2.num_positive_roots(), 3);
        assert_eq!(a2.positive_roots[1], vec![1, 1]);
        assert_eq!(a2.d_alpha, vec![1, 1, 1]);

        let b2 = CartanDatum::new(TypeTag::B2);
        assert_eq!(b2.num_positive_roots(), 4);
        // short, long, short, long along the convex order
        assert_eq!(b2.d_alpha, vec![1, 2, 1, 2]);

        let g2 = CartanDatum::new(TypeTag::G2);
        assert_eq!(g2.num_positive_roots(), 6);
        assert_eq!(g2.d_alpha, vec![1, 3, 1, 3, 1, 3]);
    }

    #[test]
    fn pairing_oracle() {
        // Assemble the bilinear form from d_i a_ij and compare pairing() on
        // all (omega_i, alpha_j) and (alpha_i, alpha_j) pairs.
        for tag in [TypeTag::A1, TypeTag::A1xA1, TypeTag::A2, TypeTag::B2, TypeTag::G2] {
            let datum = CartanDatum::new(tag);
            for i in 0..datum.rank {
                for j in 0..datum.rank {
                    let omega_i = LatticeElem::fundamental(datum.rank, i);
                    assert_eq!(pairing(&omega_i, j, &datum), i64::from(i == j));
                    let alpha_i = LatticeElem::simple_root(&datum, i);
                    // <alpha_i|alpha_j> = 2 (alpha_i|alpha_j)/(alpha_j|alpha_j) = a_ji
                    assert_eq!(pairing(&alpha_i, j, &datum), datum.cartan[j][i]);
                    // diagonal is always 2
                    if i == j {
                        assert_eq!(pairing(&alpha_i, j, &datum), 2);
                    }
                    // form value against the bilinear-form oracle
                    let form = alpha_i.form_with_root(
                        &datum,
                        &datum.positive_roots[datum.simple_root_index(j)],
                    );
                    assert_eq!(form, datum.d[i] * datum.cartan[i][j]);
                }
            }
        }
    }

    #[test]
    fn a2_root_coords_roundtrip() {
        let datum = CartanDatum::new(TypeTag::A2);
        let mu = LatticeElem::from_root_coords(&datum, &[2, -1]);
        assert_eq!(mu.root_coords(&datum), Some(vec![2, -1]));
        // omega_1 is not in Q for A2
        let omega1 = LatticeElem::fundamental(2, 0);
        assert_eq!(omega1.root_coords(&datum), None);
    }

    #[test]
    fn convex_order_a2() {
        let a2 = CartanDatum::new(TypeTag::A2);
        // alpha_12 sits between alpha_1 and alpha_2 (validated in the
        // constructor; spot-check the positions here)
        assert_eq!(a2.simple_root_index(0), 0);
        assert_eq!(a2.simple_root_index(1), 2);
    }
}
