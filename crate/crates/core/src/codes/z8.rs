//! Codes over `Z/8Z`, their 2-adic filtration, and the minimal-norm
//! certificate for lattices pulled back from them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::f2::{CodeF2, WeightEnum};
use crate::error::{Error, Result};
use crate::lattice::IntLattice;
use crate::linalg::{self, Matrix};

/// Number of 2-adic levels below the modulus 8.
pub const LEVELS: usize = 3;
const MODULUS: i64 = 8;

/// A `Z/8Z`-submodule of `(Z/8Z)^length`, kept as the integer lattice
/// `span(generators) + 8 Z^length` in Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeZ8 {
    length: usize,
    lift: Matrix<BigInt>,
}

impl CodeZ8 {
    /// Code spanned by integer vectors read mod 8.
    pub fn from_generators(length: usize, generators: &[Vec<BigInt>]) -> Result<Self> {
        let eight = BigInt::from(MODULUS);
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(generators.len() + length);
        for g in generators {
            if g.len() != length {
                return Err(Error::Dimension(format!(
                    "generator of length {} in a code of length {length}",
                    g.len()
                )));
            }
            rows.push(g.iter().map(|x| x.mod_floor(&eight)).collect());
        }
        for i in 0..length {
            let mut v = vec![BigInt::zero(); length];
            v[i] = eight.clone();
            rows.push(v);
        }
        Ok(CodeZ8 {
            length,
            lift: linalg::hnf(&rows),
        })
    }

    /// The image of a lattice given by ambient coordinates.
    pub fn from_lattice(lattice: &IntLattice) -> Result<Self> {
        let basis = lattice
            .basis
            .as_ref()
            .ok_or_else(|| Error::Domain("lattice has no ambient coordinates".into()))?;
        let length = basis.first().map_or(0, Vec::len);
        Self::from_generators(length, basis)
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// Basis of the pull-back `{v in Z^length : v mod 8 in C}`.
    pub fn lift(&self) -> &Matrix<BigInt> {
        &self.lift
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        v.len() == self.length && linalg::solve_echelon(&self.lift, v).is_some()
    }

    /// `log_2 |C| = 3 length - log_2 [Z^length : lift]`.
    pub fn log2_size(&self) -> usize {
        let index: BigInt = self
            .lift
            .iter()
            .enumerate()
            .map(|(i, r)| r[i].clone())
            .product();
        3 * self.length - (index.bits() as usize - 1)
    }

    /// `Gamma_nu = K_nu / K_{nu+1}` for `nu = 0, 1, 2`, where `K_nu` is the
    /// subcode of words divisible by `2^nu`, divided by `2^nu` and read mod 2.
    pub fn filtration(&self) -> Result<[CodeF2; LEVELS]> {
        let gammas: Vec<CodeF2> = (0..LEVELS)
            .map(|nu| {
                let words = self
                    .divided_part(nu)
                    .iter()
                    .map(|y| {
                        y.iter().enumerate().fold(0u128, |w, (i, x)| {
                            if x.is_odd() {
                                w | 1u128 << i
                            } else {
                                w
                            }
                        })
                    })
                    .collect::<Vec<_>>();
                CodeF2::new(self.length, words)
            })
            .collect::<Result<_>>()?;
        Ok(gammas.try_into().expect("three levels"))
    }

    /// Generators of `{y in Z^length : 2^nu y in lift}`.
    fn divided_part(&self, nu: usize) -> Matrix<BigInt> {
        if nu == 0 {
            return self.lift.clone();
        }
        // (c, d) in the left kernel of [lift; 2^nu I] gives c lift = -2^nu d.
        let t = BigInt::one() << nu;
        let mut stacked = self.lift.clone();
        for i in 0..self.length {
            let mut v = vec![BigInt::zero(); self.length];
            v[i] = t.clone();
            stacked.push(v);
        }
        let r = self.lift.len();
        linalg::left_kernel(&stacked)
            .into_iter()
            .map(|row| row[r..].iter().map(|x| -x).collect())
            .collect()
    }
}

/// One case of the minimal-norm argument: nonzero `w` whose coordinates
/// have 2-adic valuation exactly `level` at their minimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateBranch {
    pub level: usize,
    /// Dimension of `Gamma_level`; absent for the level where all
    /// coordinates are divisible by 8.
    pub code_dim: Option<usize>,
    /// Fewest coordinates of `w` that are `2^level` times an odd number.
    pub min_weight: Option<usize>,
    /// Resulting lower bound on the norm, or `None` if the branch is empty.
    pub norm_bound: Option<u64>,
    /// Nonzero terms of the enumerator used, as `(weight, count)`.
    pub enumerator: Vec<(usize, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinNormCertificate {
    pub length: usize,
    /// Norms are `(v . v) / denom` in the ambient frame.
    pub denom: u64,
    pub branches: Vec<CertificateBranch>,
    pub lower_bound: u64,
    pub witness: Vec<i64>,
    pub witness_norm: u64,
    pub min_norm: u64,
}

/// Certify the minimal norm of `lattice`, whose vectors all lie in the
/// pull-back of `code` and which uses the frame `(v . w) / denom`.
///
/// For nonzero `w` let `nu` be the least 2-adic valuation of its entries.
/// If `nu < 3`, `w / 2^nu mod 2` is a nonzero word of `Gamma_nu`, so at
/// least `d(Gamma_nu)` entries have absolute value `>= 2^nu`; otherwise
/// some entry is at least 8. The witness is the shortest lattice vector
/// among `2^j (e_0 - e_i)`, `8 e_0` and the basis rows.
pub fn certify_min_norm(
    lattice: &IntLattice,
    code: &CodeZ8,
    denom: u64,
    max_dim: usize,
) -> Result<MinNormCertificate> {
    let length = code.length();
    let basis = lattice
        .basis
        .as_ref()
        .ok_or_else(|| Error::Domain("lattice has no ambient coordinates".into()))?;
    for b in basis {
        if !code.contains(b) {
            return Err(Error::Certificate(
                "lattice is not contained in the pull-back of the code".into(),
            ));
        }
    }
    let gammas = code.filtration()?;
    let mut branches = Vec::with_capacity(LEVELS + 1);
    for (level, g) in gammas.iter().enumerate() {
        let e: WeightEnum = g.weight_enumerator(max_dim)?;
        if e.total() != BigInt::one() << g.dim() {
            return Err(Error::Certificate(format!(
                "enumerator of Gamma_{level} does not sum to 2^{}",
                g.dim()
            )));
        }
        let min_weight = e.min_nonzero_weight();
        let norm_bound = min_weight.map(|d| ceil_div((d as u64) << (2 * level), denom));
        branches.push(CertificateBranch {
            level,
            code_dim: Some(g.dim()),
            min_weight,
            norm_bound,
            enumerator: e
                .nonzero_terms()
                .into_iter()
                .map(|(w, c)| (w, c.to_string()))
                .collect(),
        });
    }
    branches.push(CertificateBranch {
        level: LEVELS,
        code_dim: None,
        min_weight: Some(1),
        norm_bound: Some(ceil_div((MODULUS * MODULUS) as u64, denom)),
        enumerator: Vec::new(),
    });
    let lower_bound = branches
        .iter()
        .filter_map(|b| b.norm_bound)
        .min()
        .expect("the last branch is never empty");

    let witness = shortest_candidate(lattice, basis, length, denom)
        .ok_or_else(|| Error::Certificate("no witness vector found".into()))?;
    let witness_norm = sq_norm(&witness) / denom as u128;
    let witness_norm = witness_norm as u64;
    if witness_norm < lower_bound {
        return Err(Error::Certificate(format!(
            "witness of norm {witness_norm} lies below the bound {lower_bound}"
        )));
    }
    if witness_norm != lower_bound {
        return Err(Error::Certificate(format!(
            "bound {lower_bound} not attained: best witness has norm {witness_norm}"
        )));
    }
    Ok(MinNormCertificate {
        length,
        denom,
        branches,
        lower_bound,
        witness: witness.iter().map(|x| x.to_i64().expect("small")).collect(),
        witness_norm,
        min_norm: lower_bound,
    })
}

/// Re-derive a certificate's conclusion from its recorded data alone.
pub fn check_certificate(cert: &MinNormCertificate, lattice: &IntLattice) -> Result<()> {
    for b in &cert.branches {
        let bound = match (b.level, b.min_weight) {
            (l, Some(d)) if l < LEVELS => {
                let first = b.enumerator.iter().find(|(w, _)| *w > 0).map(|(w, _)| *w);
                if first != Some(d) {
                    return Err(Error::Certificate(format!(
                        "level {l}: recorded minimum weight {d} disagrees with the enumerator"
                    )));
                }
                Some(ceil_div((d as u64) << (2 * l), cert.denom))
            }
            (l, None) if l < LEVELS => None,
            (_, _) => Some(ceil_div((MODULUS * MODULUS) as u64, cert.denom)),
        };
        if bound != b.norm_bound {
            return Err(Error::Certificate(format!(
                "level {}: recorded bound {:?} but the data gives {bound:?}",
                b.level, b.norm_bound
            )));
        }
    }
    let low = cert.branches.iter().filter_map(|b| b.norm_bound).min();
    if low != Some(cert.lower_bound) || cert.lower_bound != cert.min_norm {
        return Err(Error::Certificate("inconsistent lower bound".into()));
    }
    let w: Vec<BigInt> = cert.witness.iter().map(|&x| BigInt::from(x)).collect();
    if w.iter().all(Zero::is_zero) || !lattice.contains(&w) {
        return Err(Error::Certificate(
            "witness is not a nonzero lattice vector".into(),
        ));
    }
    let n = sq_norm(&w);
    if n != u128::from(cert.witness_norm) * u128::from(cert.denom) {
        return Err(Error::Certificate("witness norm is misreported".into()));
    }
    if cert.witness_norm != cert.min_norm {
        return Err(Error::Certificate(
            "witness does not attain the bound".into(),
        ));
    }
    Ok(())
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn sq_norm(v: &[BigInt]) -> u128 {
    v.iter()
        .map(|x| (x * x).to_u128().expect("small entries"))
        .sum()
}

fn shortest_candidate(
    lattice: &IntLattice,
    basis: &[Vec<BigInt>],
    length: usize,
    denom: u64,
) -> Option<Vec<BigInt>> {
    // Explicit short vectors before basis rows, so ties resolve to the simplest witness.
    let mut candidates: Vec<Vec<BigInt>> = Vec::new();
    if length > 0 {
        let mut top = vec![BigInt::zero(); length];
        top[0] = BigInt::from(MODULUS);
        candidates.push(top);
        for j in 0..LEVELS {
            let t = BigInt::one() << j;
            for i in 1..length {
                let mut v = vec![BigInt::zero(); length];
                v[0] = t.clone();
                v[i] = -&t;
                candidates.push(v);
            }
        }
    }
    candidates.extend(basis.iter().cloned());
    candidates
        .into_iter()
        .filter(|v| v.iter().any(|x| !x.is_zero()) && v.iter().all(|x| x.abs().bits() < 32))
        .filter(|v| sq_norm(v) % u128::from(denom) == 0)
        .map(|v| (sq_norm(&v), v))
        .filter(|(_, v)| lattice.contains(v))
        .min_by(|a, b| a.0.cmp(&b.0))
        .map(|(_, v)| v)
}
