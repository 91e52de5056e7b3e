//! Fincke-Pohst enumeration for small positive-definite lattices.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest rank accepted by [`short_vectors`].
pub const MAX_SEARCH_RANK: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortVector {
    /// Coefficients in the lattice basis.
    pub coeffs: Vec<i64>,
    pub norm: BigInt,
}

/// All nonzero vectors of norm at most `bound` up to sign, with norms
/// recomputed exactly from the Gram matrix.
pub fn short_vectors(gram: &[Vec<BigInt>], bound: i64) -> Result<Vec<ShortVector>> {
    let m = gram.len();
    if m > MAX_SEARCH_RANK {
        return Err(Error::Capacity {
            what: "short-vector search rank".into(),
            required: m as u128,
            budget: MAX_SEARCH_RANK as u128,
        });
    }
    let g: Vec<Vec<f64>> = gram
        .iter()
        .map(|r| r.iter().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect())
        .collect();
    // q[i][i] = pivots, q[i][j] (j > i) = mu coefficients.
    let mut q = g.clone();
    for i in 0..m {
        if !(q[i][i] > 0.0) {
            return Err(Error::Domain("Gram matrix is not positive definite".into()));
        }
        for j in (i + 1)..m {
            q[j][i] = q[i][j];
            q[i][j] /= q[i][i];
        }
        for k in (i + 1)..m {
            for l in k..m {
                q[k][l] -= q[k][i] * q[i][l];
            }
        }
    }
    let slack = 1e-6 * (1.0 + bound as f64);
    let mut out = Vec::new();
    let mut x = vec![0i64; m];
    enumerate(&q, m, m, bound as f64 + slack, 0.0, &mut x, &mut |coeffs| {
        if coeffs.iter().all(|c| *c == 0) {
            return;
        }
        // keep one of each +-pair: first nonzero coordinate positive
        if coeffs.iter().find(|c| **c != 0).is_some_and(|c| *c < 0) {
            return;
        }
        let norm = exact_norm(gram, coeffs);
        if norm <= BigInt::from(bound) {
            out.push(ShortVector {
                coeffs: coeffs.to_vec(),
                norm,
            });
        }
    });
    out.sort_by(|a, b| a.norm.cmp(&b.norm).then_with(|| a.coeffs.cmp(&b.coeffs)));
    Ok(out)
}

fn exact_norm(gram: &[Vec<BigInt>], x: &[i64]) -> BigInt {
    let mut acc = BigInt::zero();
    for (i, row) in gram.iter().enumerate() {
        if x[i] == 0 {
            continue;
        }
        for (j, g) in row.iter().enumerate() {
            if x[j] != 0 {
                acc += g * BigInt::from(x[i]) * BigInt::from(x[j]);
            }
        }
    }
    acc
}

fn enumerate(
    q: &[Vec<f64>],
    m: usize,
    level: usize,
    bound: f64,
    partial: f64,
    x: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if level == 0 {
        emit(x);
        return;
    }
    let i = level - 1;
    let center: f64 = -((i + 1)..m).map(|j| q[i][j] * x[j] as f64).sum::<f64>();
    let remaining = bound - partial;
    if remaining < 0.0 {
        return;
    }
    let radius = (remaining / q[i][i]).sqrt();
    let lo = (center - radius).ceil() as i64;
    let hi = (center + radius).floor() as i64;
    for v in lo..=hi {
        let d = v as f64 - center;
        let p = partial + q[i][i] * d * d;
        if p <= bound {
            x[i] = v;
            enumerate(q, m, i, bound, p, x, emit);
        }
    }
    x[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gram(v: &[&[i64]]) -> Vec<Vec<BigInt>> {
        v.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn integer_lattice() {
        let g = gram(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        let v = short_vectors(&g, 1).unwrap();
        assert_eq!(v.len(), 3);
        assert!(v.iter().all(|s| s.norm == BigInt::from(1)));
    }

    #[test]
    fn a2_hexagonal() {
        let g = gram(&[&[2, -1], &[-1, 2]]);
        let v = short_vectors(&g, 2).unwrap();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn rejects_large_or_indefinite() {
        let big: Vec<Vec<BigInt>> = (0..21)
            .map(|i| (0..21).map(|j| BigInt::from((i == j) as i64)).collect())
            .collect();
        assert!(short_vectors(&big, 1).is_err());
        assert!(short_vectors(&gram(&[&[0, 1], &[1, 0]]), 1).is_err());
    }
}
