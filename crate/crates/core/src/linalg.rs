//! Exact integer and rational linear algebra: fraction-free determinants,
//! Hermite normal form, integer kernels and sparse rational elimination.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::scalar::IntScalar;

pub type Matrix<T> = Vec<Vec<T>>;

pub fn identity<T: IntScalar>(n: usize) -> Matrix<T> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Matrix<T> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

fn dot<T: IntScalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// `a * b`, parallel over rows of `a`.
pub fn mat_mul<T: IntScalar + Send + Sync>(a: &[Vec<T>], b: &[Vec<T>]) -> Matrix<T> {
    let bt = transpose(b);
    a.par_iter()
        .map(|row| bt.iter().map(|col| dot(row, col)).collect())
        .collect()
}

/// `a * b^T`, parallel over rows of `a`.
pub fn mat_mul_bt<T: IntScalar + Send + Sync>(a: &[Vec<T>], b: &[Vec<T>]) -> Matrix<T> {
    a.par_iter()
        .map(|row| b.iter().map(|col| dot(row, col)).collect())
        .collect()
}

pub fn is_symmetric<T: PartialEq>(a: &[Vec<T>]) -> bool {
    let n = a.len();
    a.iter().all(|row| row.len() == n) && (0..n).all(|i| (0..i).all(|j| a[i][j] == a[j][i]))
}

/// Bareiss elimination with row pivoting. Returns the determinant of the
/// leading square block together with the rank.
fn bareiss<T: IntScalar>(a: &[Vec<T>]) -> (T, usize) {
    let rows = a.len();
    if rows == 0 {
        return (T::one(), 0);
    }
    let cols = a[0].len();
    let mut m: Matrix<T> = a.to_vec();
    let mut prev = T::one();
    let mut sign_flip = false;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(piv) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        if piv != rank {
            m.swap(piv, rank);
            sign_flip = !sign_flip;
        }
        let p = m[rank][col].clone();
        for r in (rank + 1)..rows {
            let f = m[r][col].clone();
            for c in (col + 1)..cols {
                let v =
                    (p.clone() * m[r][c].clone() - f.clone() * m[rank][c].clone()) / prev.clone();
                m[r][c] = v;
            }
            m[r][col] = T::zero();
        }
        prev = p;
        rank += 1;
    }
    if rows != cols || rank < rows {
        return (T::zero(), rank);
    }
    let det = m[rows - 1][cols - 1].clone();
    (if sign_flip { -det } else { det }, rank)
}

/// Determinant by fraction-free elimination.
pub fn det<T: IntScalar>(a: &[Vec<T>]) -> T {
    assert!(
        a.iter().all(|r| r.len() == a.len()),
        "det needs a square matrix"
    );
    bareiss(a).0
}

pub fn rank<T: IntScalar>(a: &[Vec<T>]) -> usize {
    bareiss(a).1
}

/// Leading principal minors `d_1, ..., d_n` (stopping early at the first
/// zero, after which the remaining minors are not computed).
pub fn leading_minors<T: IntScalar>(a: &[Vec<T>]) -> Vec<T> {
    let n = a.len();
    let mut m: Matrix<T> = a.to_vec();
    let mut prev = T::one();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let p = m[k][k].clone();
        out.push(p.clone());
        if p.is_zero() {
            break;
        }
        for r in (k + 1)..n {
            let f = m[r][k].clone();
            for c in (k + 1)..n {
                m[r][c] =
                    (p.clone() * m[r][c].clone() - f.clone() * m[k][c].clone()) / prev.clone();
            }
        }
        prev = p;
    }
    out
}

/// Sylvester's criterion on exact leading minors.
pub fn is_positive_definite<T: IntScalar>(a: &[Vec<T>]) -> bool {
    let minors = leading_minors(a);
    minors.len() == a.len() && minors.iter().all(|d| d.is_positive())
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: upper
/// echelon, positive pivots, entries above each pivot reduced into
/// `[0, pivot)`. Zero rows are dropped.
pub fn hnf<T: IntScalar>(rows: &[Vec<T>]) -> Matrix<T> {
    let Some(first) = rows.first() else {
        return Vec::new();
    };
    let ncols = first.len();
    let mut basis: Vec<Option<Vec<T>>> = vec![None; ncols];
    for r in rows {
        let touched = insert_row(&mut basis, r.clone());
        // Keep modified rows reduced against later pivots so entries stay
        // bounded by the pivots rather than compounding across insertions.
        for &j in touched.iter().rev() {
            reduce_row(&mut basis, j);
        }
    }
    let mut out: Matrix<T> = basis.into_iter().flatten().collect();
    let pivots: Vec<usize> = out.iter().map(|r| pivot_col(r).unwrap()).collect();
    for i in 0..out.len() {
        let p = pivots[i];
        let (head, tail) = out.split_at_mut(i);
        let pr = &tail[0];
        for row in head.iter_mut() {
            let q = row[p].div_floor(&pr[p]);
            if !q.is_zero() {
                for c in p..ncols {
                    row[c] = row[c].clone() - q.clone() * pr[c].clone();
                }
            }
        }
    }
    out
}

fn pivot_col<T: IntScalar>(row: &[T]) -> Option<usize> {
    row.iter().position(|x| !x.is_zero())
}

fn reduce_row<T: IntScalar>(basis: &mut [Option<Vec<T>>], j: usize) {
    let Some(mut row) = basis[j].take() else {
        return;
    };
    let ncols = row.len();
    for (p, slot) in basis.iter().enumerate().skip(j + 1) {
        let Some(pr) = slot else { continue };
        if row[p].is_zero() {
            continue;
        }
        let q = row[p].div_floor(&pr[p]);
        if !q.is_zero() {
            for c in p..ncols {
                row[c] = row[c].clone() - q.clone() * pr[c].clone();
            }
        }
    }
    basis[j] = Some(row);
}

/// Returns the pivot columns whose rows changed.
fn insert_row<T: IntScalar>(basis: &mut [Option<Vec<T>>], mut v: Vec<T>) -> Vec<usize> {
    let ncols = v.len();
    let mut touched = Vec::new();
    for j in 0..ncols {
        if v[j].is_zero() {
            continue;
        }
        match &mut basis[j] {
            slot @ None => {
                if v[j].is_negative() {
                    v.iter_mut().for_each(|x| *x = -x.clone());
                }
                *slot = Some(v);
                touched.push(j);
                return touched;
            }
            Some(b) => {
                let (q, r) = v[j].div_rem(&b[j]);
                if r.is_zero() {
                    for c in j..ncols {
                        v[c] = v[c].clone() - q.clone() * b[c].clone();
                    }
                    continue;
                }
                let eg = b[j].extended_gcd(&v[j]);
                let (g, x, y) = (eg.gcd, eg.x, eg.y);
                let bj = b[j].clone() / g.clone();
                let vj = v[j].clone() / g.clone();
                for c in j..ncols {
                    let nb = x.clone() * b[c].clone() + y.clone() * v[c].clone();
                    let nv = vj.clone() * b[c].clone() - bj.clone() * v[c].clone();
                    b[c] = nb;
                    v[c] = nv;
                }
                if b[j].is_negative() {
                    b.iter_mut().for_each(|x| *x = -x.clone());
                }
                touched.push(j);
            }
        }
    }
    touched
}

/// Coefficients `c` with `c * basis = v`, for `basis` in echelon form, or
/// `None` if `v` is not in the lattice.
pub fn solve_echelon<T: IntScalar>(basis: &[Vec<T>], v: &[T]) -> Option<Vec<T>> {
    let mut rem = v.to_vec();
    let mut coeffs = vec![T::zero(); basis.len()];
    for (i, row) in basis.iter().enumerate() {
        let p = pivot_col(row)?;
        if rem[..p].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let (q, r) = rem[p].div_rem(&row[p]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for c in p..rem.len() {
                rem[c] = rem[c].clone() - q.clone() * row[c].clone();
            }
        }
        coeffs[i] = q;
    }
    rem.iter().all(|x| x.is_zero()).then_some(coeffs)
}

/// Basis of the integer left kernel `{x in Z^r : x a = 0}` in Hermite
/// normal form. The kernel lattice is saturated by construction.
pub fn left_kernel<T: IntScalar>(a: &[Vec<T>]) -> Matrix<T> {
    let r = a.len();
    if r == 0 {
        return Vec::new();
    }
    let c = a[0].len();
    let aug: Matrix<T> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| if i == j { T::one() } else { T::zero() }));
            v
        })
        .collect();
    hnf(&aug)
        .into_iter()
        .filter(|row| row[..c].iter().all(|x| x.is_zero()))
        .map(|row| row[c..].to_vec())
        .collect()
}

/// Inverse over the rationals, or `None` if singular.
pub fn inverse_rational<T: IntScalar>(a: &[Vec<T>]) -> Option<Matrix<Ratio<T>>> {
    let n = a.len();
    let mut m: Matrix<Ratio<T>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v: Vec<Ratio<T>> = row.iter().map(|x| Ratio::from_integer(x.clone())).collect();
            v.extend((0..n).map(|j| if i == j { Ratio::one() } else { Ratio::zero() }));
            v
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let p = m[col][col].clone();
        for c in 0..2 * n {
            m[col][c] = m[col][c].clone() / p.clone();
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in 0..2 * n {
                let v = m[r][c].clone() - f.clone() * m[col][c].clone();
                m[r][c] = v;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a sparse matrix given as `(column, value)` rows, by
/// rational elimination that always pivots on a sparsest remaining row.
pub fn sparse_det<T: IntScalar>(n: usize, entries: &[Vec<(usize, T)>]) -> Ratio<T> {
    assert_eq!(entries.len(), n, "sparse_det needs a square matrix");
    let mut rows: Vec<Option<BTreeMap<usize, Ratio<T>>>> = entries
        .iter()
        .map(|r| {
            let mut m = BTreeMap::new();
            for (c, v) in r {
                if !v.is_zero() {
                    let e = m.entry(*c).or_insert_with(Ratio::zero);
                    *e = e.clone() + Ratio::from_integer(v.clone());
                }
            }
            m.retain(|_, v: &mut Ratio<T>| !v.is_zero());
            Some(m)
        })
        .collect();
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for &c in r.as_ref().unwrap().keys() {
            col_rows[c].insert(i);
        }
    }
    let mut by_size: BTreeSet<(usize, usize)> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.as_ref().unwrap().len(), i))
        .collect();
    let mut det = Ratio::<T>::one();
    // Sign bookkeeping: pivot (row i, col c) in elimination order gives a
    // permutation whose sign we accumulate.
    let mut perm_rows = Vec::with_capacity(n);
    let mut perm_cols = Vec::with_capacity(n);
    for _ in 0..n {
        let Some(&(size, pr)) = by_size.iter().next() else {
            return Ratio::zero();
        };
        by_size.remove(&(size, pr));
        if size == 0 {
            return Ratio::zero();
        }
        let prow = rows[pr].take().unwrap();
        let pc = *prow
            .keys()
            .min_by_key(|&&c| (col_rows[c].len(), c))
            .unwrap();
        let pv = prow[&pc].clone();
        det = det * pv.clone();
        perm_rows.push(pr);
        perm_cols.push(pc);
        for &c in prow.keys() {
            col_rows[c].remove(&pr);
        }
        let targets: Vec<usize> = col_rows[pc].iter().copied().collect();
        for t in targets {
            let row = rows[t].as_mut().unwrap();
            by_size.remove(&(row.len(), t));
            let f = row[&pc].clone() / pv.clone();
            for (&c, v) in &prow {
                let old = row.get(&c).cloned().unwrap_or_else(Ratio::zero);
                let new = old.clone() - f.clone() * v.clone();
                if new.is_zero() {
                    if !old.is_zero() {
                        row.remove(&c);
                        col_rows[c].remove(&t);
                    }
                } else {
                    if old.is_zero() {
                        col_rows[c].insert(t);
                    }
                    row.insert(c, new);
                }
            }
            by_size.insert((row.len(), t));
        }
    }
    if permutation_parity(&perm_rows) != permutation_parity(&perm_cols) {
        det = -det;
    }
    det
}

fn permutation_parity(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    let mut odd = false;
    for i in 0..p.len() {
        if seen[i] {
            continue;
        }
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len % 2 == 0 {
            odd = !odd;
        }
    }
    odd
}
