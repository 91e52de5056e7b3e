//! Intersection numbers of the cycles `Sigma_Lambda`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::series::TruncSeries;
use crate::error::{Error, Result};
use crate::gfq::Subspace;
use crate::scalar::{lit, IntScalar};

/// Relative position of two cycles `Sigma_Lambda`, `Sigma_Lambda'`:
/// `m = dim(Lambda ∩ Lambda')`, `k = n - dim(Lambda + Lambda')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePair {
    pub n: usize,
    pub r: u64,
    pub s: u64,
    pub l: usize,
    pub c: usize,
    pub m: usize,
    pub k: usize,
}

impl CyclePair {
    pub fn new(n: usize, r: u64, s: u64, l: usize, c: usize, m: usize, k: usize) -> Result<Self> {
        if m + k > n {
            return Err(Error::Dimension(format!(
                "m={m} and k={k} are inconsistent with n={n}"
            )));
        }
        Ok(CyclePair {
            n,
            r,
            s,
            l,
            c,
            m,
            k,
        })
    }

    /// Read `m` and `k` off two subspaces.
    pub fn from_subspaces(
        r: u64,
        s: u64,
        l: usize,
        c: usize,
        lambda: &Subspace,
        lambda2: &Subspace,
    ) -> Result<Self> {
        let m = lambda.intersect(lambda2)?.dim();
        let n = lambda.ambient_dim();
        let k = n - lambda.sum(lambda2)?.dim();
        Self::new(n, r, s, l, c, m, k)
    }

    pub fn intersection_number(&self) -> Result<BigInt> {
        if self.l != self.c {
            return Err(Error::Domain(format!(
                "intersection numbers need l = c, got l={}, c={}",
                self.l, self.c
            )));
        }
        if self.l == 1 {
            Ok(intersection_number_11(self.m, self.k, self.r, self.s))
        } else {
            Ok(intersection_number_lc(
                self.l, self.m, self.k, self.r, self.s,
            ))
        }
    }
}

/// Coefficient of `x^{m-1} y^{k-1}` in
/// `(1+rx+y)^{-1} (1+x+sy)^{-1} (1+x)^k (1+y)^m`.
pub fn intersection_number_11_in<T: IntScalar>(m: usize, k: usize, r: u64, s: u64) -> T {
    if m == 0 || k == 0 {
        return T::zero();
    }
    let bound = (m - 1 + k - 1) as u32;
    let one = T::one();
    let a = TruncSeries::linear(
        2,
        bound,
        one.clone(),
        &[(0, lit(r as i64)), (1, one.clone())],
    );
    let b = TruncSeries::linear(
        2,
        bound,
        one.clone(),
        &[(0, one.clone()), (1, lit(s as i64))],
    );
    let px = TruncSeries::linear(2, bound, one.clone(), &[(0, one.clone())]).pow(k as u32);
    let py = TruncSeries::linear(2, bound, one.clone(), &[(1, one)]).pow(m as u32);
    let f = &(&a.inverse().expect("unit") * &b.inverse().expect("unit")) * &(&px * &py);
    f.coeff(&[(m - 1) as u32, (k - 1) as u32])
}

pub fn intersection_number_11(m: usize, k: usize, r: u64, s: u64) -> BigInt {
    intersection_number_11_in(m, k, r, s)
}

/// The Chern-class series of the excess bundle for `l = c`, in the variables
/// `x_1..x_l, y_1..y_l`, truncated at degree `bound`.
pub fn excess_series<T: IntScalar>(
    l: usize,
    m: usize,
    k: usize,
    r: u64,
    s: u64,
    bound: u32,
) -> TruncSeries<T> {
    let nv = 2 * l;
    let one = T::one();
    let mut num = TruncSeries::one(nv, bound);
    for i in 0..l {
        num =
            &num * &TruncSeries::linear(nv, bound, one.clone(), &[(i, one.clone())]).pow(k as u32);
        num = &num
            * &TruncSeries::linear(nv, bound, one.clone(), &[(l + i, one.clone())]).pow(m as u32);
    }
    let mut den = TruncSeries::one(nv, bound);
    for i in 0..l {
        for j in 0..l {
            let a = TruncSeries::linear(
                nv,
                bound,
                one.clone(),
                &[(i, lit(r as i64)), (l + j, one.clone())],
            );
            let b = TruncSeries::linear(
                nv,
                bound,
                one.clone(),
                &[(i, one.clone()), (l + j, lit(s as i64))],
            );
            den = &den * &(&a * &b);
        }
    }
    &num * &den.inverse().expect("unit constant term")
}

/// Product of `(z_i - z_j)` over `i < j` for the variables `offset..offset+count`.
fn vandermonde<T: IntScalar>(nv: usize, bound: u32, offset: usize, count: usize) -> TruncSeries<T> {
    let mut v = TruncSeries::one(nv, bound);
    for i in 0..count {
        for j in (i + 1)..count {
            let diff = TruncSeries::linear(
                nv,
                bound,
                T::zero(),
                &[(offset + i, T::one()), (offset + j, -T::one())],
            );
            v = &v * &diff;
        }
    }
    v
}

/// Degree of the zero-dimensional part of the excess class for `l = c`: the
/// coefficient of `s_{((m-l)^l)}(x) s_{((k-l)^l)}(y)` in the degree
/// `kl + ml - 2l^2` part of [`excess_series`].
pub fn intersection_number_lc_in<T: IntScalar>(l: usize, m: usize, k: usize, r: u64, s: u64) -> T {
    if l == 0 {
        return T::one();
    }
    if m < l || k < l {
        return T::zero();
    }
    let d = (k * l + m * l - 2 * l * l) as u32;
    let nv = 2 * l;
    let part = excess_series::<T>(l, m, k, r, s, d).homogeneous(d);
    let stair = (l * (l - 1) / 2) as u32;
    let big = d + 2 * stair;
    let prod = &(&part.with_bound(big) * &vandermonde(nv, big, 0, l)) * &vandermonde(nv, big, l, l);
    let mut target = Vec::with_capacity(nv);
    for i in 0..l {
        target.push(((m - l) + (l - 1 - i)) as u32);
    }
    for j in 0..l {
        target.push(((k - l) + (l - 1 - j)) as u32);
    }
    prod.coeff(&target)
}

pub fn intersection_number_lc(l: usize, m: usize, k: usize, r: u64, s: u64) -> BigInt {
    intersection_number_lc_in(l, m, k, r, s)
}

/// Intersection tables for `l = c = 1`.
#[derive(Clone, Copy, Debug)]
pub struct GramTables {
    pub n: usize,
    pub r: u64,
    pub s: u64,
}

impl GramTables {
    pub fn new(n: usize, r: u64, s: u64) -> Self {
        GramTables { n, r, s }
    }

    /// `(Sigma_Lambda, Sigma_{l(P)})` for `dim Lambda = k`.
    pub fn sigma_point(&self, k: usize, contains: bool) -> BigInt {
        if !contains {
            return BigInt::zero();
        }
        neg_pow(self.s, self.n - k - 1)
    }

    /// `(h_i, Sigma_Lambda)` for `dim Lambda = k`.
    pub fn h_sigma(&self, i: usize, k: usize) -> BigInt {
        if i + k == self.n {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }

    /// `(h_i, h_j)`.
    pub fn h_h(&self, i: usize, j: usize) -> BigInt {
        let n = self.n;
        if i + j + 1 == n {
            BigInt::from(self.s)
        } else if i + j == n {
            BigInt::from(1 + self.r * self.s)
        } else if i + j == n + 1 {
            BigInt::from(self.r)
        } else {
            BigInt::zero()
        }
    }

    /// `(Sigma_Lambda, Sigma_Lambda')` for general position data.
    pub fn sigma_sigma(&self, m: usize, k: usize) -> BigInt {
        intersection_number_11(m, k, self.r, self.s)
    }

    pub fn sigma_sigma_subspaces(&self, a: &Subspace, b: &Subspace) -> Result<BigInt> {
        let pair = CyclePair::from_subspaces(self.r, self.s, 1, 1, a, b)?;
        Ok(self.sigma_sigma(pair.m, pair.k))
    }

    /// Gram matrix of `h_1, ..., h_{n-1}`.
    pub fn h_gram(&self) -> Vec<Vec<BigInt>> {
        (1..self.n)
            .map(|i| (1..self.n).map(|j| self.h_h(i, j)).collect())
            .collect()
    }
}

/// `(-s)^e`.
pub fn neg_pow(s: u64, e: usize) -> BigInt {
    let v = BigInt::from(s).pow(e as u32);
    if e % 2 == 1 {
        -v
    } else {
        v
    }
}

/// The `m x m` matrix with `u` on the antidiagonal `i + j = m`, `1 + uv` on
/// `i + j = m + 1`, `v` on `i + j = m + 2`, plus `t` added at `(m, m)`
/// (indices from 1).
pub fn a_matrix<T: IntScalar>(m: usize, u: &T, v: &T, t: &T) -> Vec<Vec<T>> {
    (1..=m)
        .map(|i| {
            (1..=m)
                .map(|j| {
                    let mut e = T::zero();
                    if i + j == m {
                        e = e + u.clone();
                    }
                    if i + j == m + 1 {
                        e = e + T::one() + u.clone() * v.clone();
                    }
                    if i + j == m + 2 {
                        e = e + v.clone();
                    }
                    if i == m && j == m {
                        e = e + t.clone();
                    }
                    e
                })
                .collect()
        })
        .collect()
}

/// Closed form `(-1)^{floor(m/2)} (sum_{i=0}^m (uv)^i + (-u)^{m-1} t)`.
pub fn a_matrix_det_formula<T: IntScalar>(m: usize, u: &T, v: &T, t: &T) -> T {
    let uv = u.clone() * v.clone();
    let mut geo = T::zero();
    let mut p = T::one();
    for _ in 0..=m {
        geo = geo + p.clone();
        p = p * uv.clone();
    }
    let mut mu = T::one();
    for _ in 0..m.saturating_sub(1) {
        mu = mu * -u.clone();
    }
    let val = geo + mu * t.clone();
    if (m / 2) % 2 == 1 {
        -val
    } else {
        val
    }
}
