//! The lattices spanned by the cycles `Sigma_Lambda` on `X[r,s]_1^1`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::IntLattice;
use crate::chow::{neg_pow, GramTables};
use crate::error::{Error, Result};
use crate::gfq::{enumerate_subspaces, FieldSpec, Subspace};
use crate::linalg::{self, Matrix};
use crate::polycount::{check_frobenius_pair, projective_count};

/// The `F_q`-rational subspaces of each dimension `1..n-1`, with the points
/// each of them contains. `e_P` coordinates follow the order of `points`.
pub struct SigmaFrame {
    pub n: usize,
    pub q: u64,
    pub s: u64,
    pub points: Vec<Subspace>,
    /// `subspaces[k - 1]` lists the `k`-dimensional subspaces.
    pub subspaces: Vec<Vec<Subspace>>,
    /// `supports[k - 1][i]` lists the indices of the points of
    /// `subspaces[k - 1][i]`.
    pub supports: Vec<Vec<Vec<usize>>>,
}

impl SigmaFrame {
    pub fn new(n: usize, q: u64, s: u64) -> Result<Self> {
        if n < 3 {
            return Err(Error::Domain(format!("need n >= 3, got {n}")));
        }
        if s == 0 || q % s != 0 {
            return Err(Error::Domain(format!("s={s} does not divide q={q}")));
        }
        check_frobenius_pair(q / s, s)?;
        let field = FieldSpec::of_order(q)?;
        let points = enumerate_subspaces(&field, n, 1)?;
        let mut subspaces = Vec::with_capacity(n - 1);
        let mut supports = Vec::with_capacity(n - 1);
        for k in 1..n {
            let subs = if k == 1 {
                points.clone()
            } else {
                enumerate_subspaces(&field, n, k)?
            };
            let sup: Vec<Vec<usize>> = subs
                .par_iter()
                .map(|lam| {
                    points
                        .iter()
                        .enumerate()
                        .filter(|(_, p)| lam.contains_vector(&p.rows()[0]))
                        .map(|(i, _)| i)
                        .collect()
                })
                .collect();
            subspaces.push(subs);
            supports.push(sup);
        }
        Ok(SigmaFrame {
            n,
            q,
            s,
            points,
            subspaces,
            supports,
        })
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    /// `v_{S(Lambda)}` for the `i`-th subspace of dimension `k`.
    pub fn indicator(&self, k: usize, i: usize) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.num_points()];
        for &p in &self.supports[k - 1][i] {
            v[p] = BigInt::one();
        }
        v
    }

    /// Norm denominator `s^{n-2}` of the frame.
    pub fn denom(&self) -> BigInt {
        BigInt::from(self.s).pow((self.n - 2) as u32)
    }
}

/// `s^{n-2}`: inner products in the `e_P` frame are `(v . w) / s^{n-2}`.
pub fn pairing_frame(n: usize, s: u64) -> BigInt {
    BigInt::from(s).pow((n - 2) as u32)
}

/// `s^{n-1-k} (v_S - v_{S_0})` for every `k`-dimensional subspace, with
/// `S_0` the support of the first subspace of that dimension. Grouped by `k`.
pub fn sigma_generators(frame: &SigmaFrame) -> Vec<Vec<Vec<BigInt>>> {
    (1..frame.n)
        .map(|k| {
            let scale = BigInt::from(frame.s).pow((frame.n - 1 - k) as u32);
            let base = frame.indicator(k, 0);
            (1..frame.subspaces[k - 1].len())
                .map(|i| {
                    frame
                        .indicator(k, i)
                        .iter()
                        .zip(&base)
                        .map(|(a, b)| (a - b) * &scale)
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `N_Sigma` in the `e_P` frame.
pub fn build_sigma_lattice(n: usize, q: u64, s: u64) -> Result<IntLattice> {
    let frame = SigmaFrame::new(n, q, s)?;
    let gens: Vec<Vec<BigInt>> = sigma_generators(&frame).into_iter().flatten().collect();
    IntLattice::from_generators(
        &gens,
        &frame.denom(),
        format!("N_Sigma(n={n}, q={q}, s={s})"),
    )
}

/// `M_C = N_Sigma + s^{n-1} M^dual` in the `e_P` frame.
pub fn build_mc(n: usize, q: u64, s: u64) -> Result<IntLattice> {
    let frame = SigmaFrame::new(n, q, s)?;
    let mut gens: Vec<Vec<BigInt>> = sigma_generators(&frame).into_iter().flatten().collect();
    let top = BigInt::from(s).pow((n - 1) as u32);
    let f = frame.num_points();
    for p in 0..f {
        let mut v = vec![BigInt::zero(); f];
        v[p] = top.clone();
        gens.push(v);
    }
    IntLattice::from_generators(&gens, &frame.denom(), format!("M_C(n={n}, q={q}, s={s})"))
}

/// Everything computed on the way from the full intersection matrix to
/// `N(X)` and its primitive part.
pub struct NDecomposition {
    /// Number of generators `h_i`, `Sigma_Lambda` whose pairings were assembled.
    pub generator_count: usize,
    /// The full intersection matrix factors through the dual coordinates of
    /// `H + M_0` (so the quotient by the radical is the span of those rows).
    pub radical_ok: bool,
    /// `N(X)`, basis in dual coordinates of `H + M_0`.
    pub n_lattice: IntLattice,
    /// `[-1]^n N_prim(X)`, basis in the same coordinates.
    pub prim: IntLattice,
    /// Hermite basis of `N_Sigma(X)` in the same coordinates.
    pub sigma_basis: Matrix<BigInt>,
    pub sigma_equals_prim: bool,
}

/// Intersection matrix of `h_1, ..., h_{n-1}` followed by every
/// `Sigma_Lambda`, grouped by `dim Lambda = 1..n-1` in enumeration order.
pub fn intersection_matrix(n: usize, r: u64, s: u64) -> Result<Matrix<BigInt>> {
    let q = check_frobenius_pair(r, s)?;
    let frame = SigmaFrame::new(n, q, s)?;
    Ok(assemble_intersection_matrix(
        &frame,
        &GramTables::new(n, r, s),
    ))
}

fn assemble_intersection_matrix(frame: &SigmaFrame, tables: &GramTables) -> Matrix<BigInt> {
    let n = frame.n;
    enum Gen<'a> {
        H(usize),
        Sigma(usize, &'a Subspace),
    }
    let mut gens: Vec<Gen> = (1..n).map(Gen::H).collect();
    for k in 1..n {
        for lam in &frame.subspaces[k - 1] {
            gens.push(Gen::Sigma(k, lam));
        }
    }
    let total = gens.len();

    let mut ss_cache: HashMap<(usize, usize), BigInt> = HashMap::new();
    for m in 0..=n {
        for k in 0..=n - m {
            ss_cache.insert((m, k), tables.sigma_sigma(m, k));
        }
    }
    (0..total)
        .into_par_iter()
        .map(|a| {
            (0..total)
                .map(|b| match (&gens[a], &gens[b]) {
                    (Gen::H(i), Gen::H(j)) => tables.h_h(*i, *j),
                    (Gen::H(i), Gen::Sigma(k, _)) | (Gen::Sigma(k, _), Gen::H(i)) => {
                        tables.h_sigma(*i, *k)
                    }
                    (Gen::Sigma(_, x), Gen::Sigma(_, y)) => {
                        let m = x.intersect(y).expect("same ambient").dim();
                        let k = n - x.sum(y).expect("same ambient").dim();
                        ss_cache[&(m, k)].clone()
                    }
                })
                .collect()
        })
        .collect()
}

/// Assemble the intersection matrix of `h_1..h_{n-1}` and all `Sigma_Lambda`,
/// pass to `N(X)` through the dual coordinates of `H + M_0`, and split off
/// the orthogonal complement of `H`.
pub fn decompose_n(n: usize, r: u64, s: u64) -> Result<NDecomposition> {
    let q = check_frobenius_pair(r, s)?;
    let frame = SigmaFrame::new(n, q, s)?;
    let tables = GramTables::new(n, r, s);
    let h = n - 1;

    let gram = assemble_intersection_matrix(&frame, &tables);
    let total = gram.len();
    let mut first_of_dim = vec![h];
    for k in 1..n - 1 {
        first_of_dim.push(first_of_dim[k - 1] + frame.subspaces[k - 1].len());
    }

    // Basis of H + M_0: h_i and Sigma_{l(P)} for P other than the first point.
    let points_start = first_of_dim[0];
    let blist: Vec<usize> = (0..h)
        .chain((points_start + 1)..(points_start + frame.num_points()))
        .collect();
    let a_tilde: Matrix<BigInt> = blist
        .iter()
        .map(|&i| blist.iter().map(|&j| gram[i][j].clone()).collect())
        .collect();
    let det_a = linalg::det(&a_tilde);
    if det_a.is_zero() {
        return Err(Error::RankDeficient {
            kernel_dim: blist.len() - linalg::rank(&a_tilde),
        });
    }
    let inv = linalg::inverse_rational(&a_tilde).expect("nonsingular");
    let adj: Matrix<BigInt> = inv
        .iter()
        .map(|row| {
            row.iter()
                .map(|x| {
                    let v = x * Ratio::from_integer(det_a.clone());
                    debug_assert!(v.is_integer());
                    v.to_integer()
                })
                .collect()
        })
        .collect();
    let coords: Matrix<BigInt> = gram
        .iter()
        .map(|row| blist.iter().map(|&j| row[j].clone()).collect())
        .collect();

    // G * det == C * adj * C^T
    let c_adj = linalg::mat_mul(&coords, &adj);
    let radical_ok = (0..total).into_par_iter().all(|a| {
        (0..total).all(|b| {
            let lhs = &gram[a][b] * &det_a;
            let rhs: BigInt = c_adj[a].iter().zip(&coords[b]).map(|(x, y)| x * y).sum();
            lhs == rhs
        })
    });

    let basis = linalg::hnf(&coords);
    let n_gram = scaled_gram(&basis, &adj, &det_a)?;
    let n_lattice = IntLattice {
        basis: Some(basis.clone()),
        gram: n_gram.clone(),
        provenance: format!("N(X), n={n}, r={r}, s={s}"),
    };

    // N_prim: combinations whose first h coordinates (pairings with h_i) vanish.
    let h_part: Matrix<BigInt> = basis.iter().map(|row| row[..h].to_vec()).collect();
    let kernel = linalg::left_kernel(&h_part);
    let prim_rows = linalg::hnf(&linalg::mat_mul(&kernel, &basis));
    let mut prim_gram = scaled_gram(&prim_rows, &adj, &det_a)?;
    if n % 2 == 1 {
        for row in prim_gram.iter_mut() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let prim = IntLattice {
        basis: Some(prim_rows.clone()),
        gram: prim_gram,
        provenance: format!("[-1]^n N_prim(X), n={n}, r={r}, s={s}"),
    };

    let mut sigma_rows = Vec::new();
    for k in 1..n {
        let start = first_of_dim[k - 1];
        let count = frame.subspaces[k - 1].len();
        for i in 1..count {
            sigma_rows.push(
                coords[start + i]
                    .iter()
                    .zip(&coords[start])
                    .map(|(a, b)| a - b)
                    .collect::<Vec<_>>(),
            );
        }
    }
    let sigma_basis = linalg::hnf(&sigma_rows);
    let sigma_equals_prim = sigma_basis == prim_rows;

    Ok(NDecomposition {
        generator_count: total,
        radical_ok,
        n_lattice,
        prim,
        sigma_basis,
        sigma_equals_prim,
    })
}

/// `rows * adj * rows^T / det`, which must be integral.
fn scaled_gram(rows: &[Vec<BigInt>], adj: &[Vec<BigInt>], det: &BigInt) -> Result<Matrix<BigInt>> {
    let ra = linalg::mat_mul(rows, adj);
    let full = linalg::mat_mul_bt(&ra, rows);
    full.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| {
                    let (q, r) = x.div_rem(det);
                    if r.is_zero() {
                        Ok(q)
                    } else {
                        Err(Error::Consistency(format!(
                            "pairing {x}/{det} is not integral"
                        )))
                    }
                })
                .collect()
        })
        .collect()
}

/// `(N(X), [-1]^n N_prim(X))`.
pub fn build_n_and_prim(n: usize, r: u64, s: u64) -> Result<(IntLattice, IntLattice)> {
    let d = decompose_n(n, r, s)?;
    Ok((d.n_lattice, d.prim))
}

/// Sparse intersection matrix of `h_1..h_{n-1}` and `Sigma_{l(P)}` for the
/// `f(n) - 1` points other than a fixed base point. Returns the size and the
/// rows as `(column, value)` lists.
pub fn build_h_plus_m0(n: usize, r: u64, s: u64) -> Result<(usize, Vec<Vec<(usize, BigInt)>>)> {
    let q = check_frobenius_pair(r, s)?;
    if n < 3 {
        return Err(Error::Domain(format!("need n >= 3, got {n}")));
    }
    let tables = GramTables::new(n, r, s);
    let f: BigInt = projective_count(n as i64, q as i64);
    let f: usize = f
        .try_into()
        .map_err(|_| Error::Domain("too many points".into()))?;
    let h = n - 1;
    let size = h + f - 1;
    let diag = tables.sigma_sigma(1, n - 1);
    let off = tables.sigma_sigma(0, n - 2);
    let mut rows: Vec<Vec<(usize, BigInt)>> = Vec::with_capacity(size);
    for i in 1..n {
        let mut row: Vec<(usize, BigInt)> = (1..n)
            .map(|j| (j - 1, tables.h_h(i, j)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        let hs = tables.h_sigma(i, 1);
        if !hs.is_zero() {
            row.extend((0..f - 1).map(|p| (h + p, hs.clone())));
        }
        rows.push(row);
    }
    for p in 0..f - 1 {
        let mut row: Vec<(usize, BigInt)> = (1..n)
            .map(|i| (i - 1, tables.h_sigma(i, 1)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        row.push((h + p, diag.clone()));
        if !off.is_zero() {
            row.extend((0..f - 1).filter(|&o| o != p).map(|o| (h + o, off.clone())));
        }
        rows.push(row);
    }
    Ok((size, rows))
}

/// `(-1)^{floor((n-1)/2)} (-s)^{(n-2)(f(n)-1)}`.
pub fn h_plus_m0_disc_formula(n: usize, r: u64, s: u64) -> Result<BigInt> {
    let q = check_frobenius_pair(r, s)?;
    let f: BigInt = projective_count(n as i64, q as i64);
    let f: usize = f
        .try_into()
        .map_err(|_| Error::Domain("too many points".into()))?;
    let v = neg_pow(s, (n - 2) * (f - 1));
    Ok(if ((n - 1) / 2) % 2 == 1 { -v } else { v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::sparse_det;
    use num_traits::Signed;

    #[test]
    fn frame_sizes() {
        let f = SigmaFrame::new(3, 4, 2).unwrap();
        assert_eq!(f.num_points(), 21);
        assert_eq!(f.subspaces[1].len(), 21);
        assert!(f.supports[1].iter().all(|s| s.len() == 5));
        assert_eq!(f.denom(), BigInt::from(2));
        assert!(SigmaFrame::new(3, 4, 3).is_err());
    }

    #[test]
    fn small_h_plus_m0() {
        for (r, s) in [(2u64, 2u64), (2, 4), (4, 2)] {
            let (size, rows) = build_h_plus_m0(3, r, s).unwrap();
            let d = sparse_det(size, &rows);
            assert_eq!(
                d,
                Ratio::from_integer(h_plus_m0_disc_formula(3, r, s).unwrap())
            );
            assert!(d.numer().is_positive() || d.numer().is_negative());
        }
    }

    #[test]
    fn surface_lattices() {
        let d = decompose_n(3, 2, 2).unwrap();
        assert!(d.radical_ok);
        assert_eq!(d.n_lattice.rank(), 22);
        assert_eq!(d.prim.rank(), 20);
        assert!(d.prim.is_positive_definite());
        assert!(d.prim.is_even());
        assert!(d.sigma_equals_prim);
    }
}
