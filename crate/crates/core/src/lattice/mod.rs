//! Integer lattices with exact Gram matrices.

mod build;
mod density;
mod io;
mod shortvec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix};

pub use build::{
    build_h_plus_m0, build_mc, build_n_and_prim, build_sigma_lattice, decompose_n,
    h_plus_m0_disc_formula, intersection_matrix, pairing_frame, sigma_generators, NDecomposition,
    SigmaFrame,
};
pub use density::{
    log2_bigint, log2_center_density, log2_mh_bound, log2_unit_ball_volume, zeta, DensityReport,
};
pub use io::{parse_gram, write_gram};
pub use shortvec::{short_vectors, ShortVector};

/// A vector `coords / denom`-scaled frame: inner products are
/// `(v . w) / denom`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScaledVector {
    pub coords: Vec<BigInt>,
    pub denom: BigInt,
}

impl ScaledVector {
    pub fn new(coords: Vec<BigInt>, denom: BigInt) -> Self {
        ScaledVector { coords, denom }
    }

    /// Exact inner product; fails if it is not an integer.
    pub fn inner(&self, other: &ScaledVector) -> Result<BigInt> {
        if self.coords.len() != other.coords.len() || self.denom != other.denom {
            return Err(Error::Dimension("vectors live in different frames".into()));
        }
        let dot: BigInt = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a * b)
            .sum();
        let (q, r) = dot.div_rem(&self.denom);
        if !r.is_zero() {
            return Err(Error::Consistency(format!(
                "inner product {dot}/{} is not integral",
                self.denom
            )));
        }
        Ok(q)
    }

    pub fn norm(&self) -> Result<BigInt> {
        self.inner(self)
    }
}

/// A lattice given by basis coordinates in some ambient frame together with
/// its exact Gram matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntLattice {
    /// Basis rows in the ambient frame, in Hermite normal form. `None` for a
    /// lattice known only through its Gram matrix.
    pub basis: Option<Matrix<BigInt>>,
    pub gram: Matrix<BigInt>,
    pub provenance: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LatticeSummary {
    pub rank: usize,
    #[serde(serialize_with = "crate::lattice::ser_bigint")]
    pub disc: BigInt,
    pub even: bool,
    pub positive_definite: bool,
}

pub(crate) fn ser_bigint<S: serde::Serializer>(
    v: &BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match i64::try_from(v) {
        Ok(x) => s.serialize_i64(x),
        Err(_) => s.serialize_str(&v.to_string()),
    }
}

impl IntLattice {
    /// Lattice spanned by `generators` in a frame where inner products are
    /// `(v . w) / denom`.
    pub fn from_generators(
        generators: &[Vec<BigInt>],
        denom: &BigInt,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        let basis = linalg::hnf(generators);
        let raw = linalg::mat_mul_bt(&basis, &basis);
        let mut gram = Vec::with_capacity(raw.len());
        for row in raw {
            let mut out = Vec::with_capacity(row.len());
            for x in row {
                let (q, r) = x.div_rem(denom);
                if !r.is_zero() {
                    return Err(Error::Consistency(format!(
                        "Gram entry {x}/{denom} is not integral"
                    )));
                }
                out.push(q);
            }
            gram.push(out);
        }
        Ok(IntLattice {
            basis: Some(basis),
            gram,
            provenance: provenance.into(),
        })
    }

    pub fn from_gram(gram: Matrix<BigInt>, provenance: impl Into<String>) -> Result<Self> {
        if !linalg::is_symmetric(&gram) {
            return Err(Error::Consistency("Gram matrix is not symmetric".into()));
        }
        Ok(IntLattice {
            basis: None,
            gram,
            provenance: provenance.into(),
        })
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    /// Determinant of the Gram matrix; an error if it is singular.
    pub fn disc(&self) -> Result<BigInt> {
        let d = linalg::det(&self.gram);
        if d.is_zero() {
            let kernel_dim = self.rank() - linalg::rank(&self.gram);
            return Err(Error::RankDeficient { kernel_dim });
        }
        Ok(d)
    }

    pub fn is_even(&self) -> bool {
        self.gram
            .iter()
            .enumerate()
            .all(|(i, row)| row[i].is_even())
    }

    /// `[L^dual : L] = |disc L|`.
    pub fn dual_index(&self) -> Result<BigInt> {
        Ok(self.disc()?.abs())
    }

    pub fn is_positive_definite(&self) -> bool {
        linalg::is_positive_definite(&self.gram)
    }

    /// The lattice with its form multiplied by `-1`.
    pub fn negated(&self) -> IntLattice {
        IntLattice {
            basis: self.basis.clone(),
            gram: self
                .gram
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
            provenance: format!("-({})", self.provenance),
        }
    }

    /// Whether `v` (ambient coordinates) lies in the lattice.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        match &self.basis {
            Some(b) => linalg::solve_echelon(b, v).is_some(),
            None => false,
        }
    }

    /// Re-express the lattice in a new basis `u * basis` for unimodular `u`.
    pub fn change_basis(&self, u: &[Vec<BigInt>]) -> Result<IntLattice> {
        let d = linalg::det(u);
        if d.abs() != BigInt::from(1) {
            return Err(Error::Domain("change of basis is not unimodular".into()));
        }
        let ug = linalg::mat_mul(u, &self.gram);
        let gram = linalg::mat_mul_bt(&ug, u);
        Ok(IntLattice {
            basis: self.basis.as_ref().map(|b| linalg::mat_mul(u, b)),
            gram,
            provenance: self.provenance.clone(),
        })
    }

    pub fn summary(&self) -> Result<LatticeSummary> {
        Ok(LatticeSummary {
            rank: self.rank(),
            disc: self.disc()?,
            even: self.is_even(),
            positive_definite: self.is_positive_definite(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn diagonal_lattice() {
        let gens: Vec<Vec<BigInt>> = (0..85)
            .map(|i| (0..85).map(|j| if i == j { b(4) } else { b(0) }).collect())
            .collect();
        let l = IntLattice::from_generators(&gens, &b(4), "M").unwrap();
        assert_eq!(l.disc().unwrap(), b(4).pow(85));
        assert!(l.is_even());
        assert!(l.contains(&gens[3]));
        assert!(!l.contains(&vec![b(1); 85]));
    }

    #[test]
    fn degenerate_gram() {
        let l = IntLattice::from_gram(vec![vec![b(1), b(1)], vec![b(1), b(1)]], "x").unwrap();
        assert_eq!(l.disc(), Err(Error::RankDeficient { kernel_dim: 1 }));
        assert!(IntLattice::from_gram(vec![vec![b(1), b(2)], vec![b(1), b(1)]], "x").is_err());
    }

    #[test]
    fn scaled_vectors() {
        let v = ScaledVector::new(vec![b(4), b(-4)], b(4));
        assert_eq!(v.norm().unwrap(), b(8));
        let w = ScaledVector::new(vec![b(1), b(0)], b(4));
        assert!(v.inner(&w).unwrap() == b(1));
        assert!(w.norm().is_err());
    }

    #[test]
    fn non_integral_generators_rejected() {
        let gens = vec![vec![b(1), b(0)], vec![b(0), b(2)]];
        assert!(IntLattice::from_generators(&gens, &b(4), "x").is_err());
    }
}
