use super::field::Field;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Default cap on the number of subspaces a single enumeration may produce.
pub const DEFAULT_SUBSPACE_BUDGET: u128 = 1_000_000;

/// Number of `k`-dimensional subspaces of `F_q^n`, saturating at `u128::MAX`.
pub fn subspace_count(q: u64, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    // [n, k] = [n-1, k-1] + q^k [n-1, k]
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=k.min(m)).rev() {
            let qk = (q as u128).checked_pow(j as u32).unwrap_or(u128::MAX);
            row[j] = row[j - 1].saturating_add(qk.saturating_mul(row[j]));
        }
    }
    row[k]
}

/// All `k`-dimensional subspaces of `F^n`, each once, sorted
/// lexicographically by flattened canonical matrix.
pub fn enumerate_subspaces(field: &Field, n: usize, k: usize) -> Result<Vec<Subspace>> {
    enumerate_subspaces_with_budget(field, n, k, DEFAULT_SUBSPACE_BUDGET)
}

pub fn enumerate_subspaces_with_budget(
    field: &Field,
    n: usize,
    k: usize,
    budget: u128,
) -> Result<Vec<Subspace>> {
    if k > n {
        return Err(Error::Dimension(format!(
            "subspace dimension {k} exceeds ambient {n}"
        )));
    }
    let total = subspace_count(field.order() as u64, n, k);
    if total > budget {
        return Err(Error::Capacity {
            what: format!("enumerating {k}-dimensional subspaces of {field}^{n}"),
            required: total,
            budget,
        });
    }
    let q = field.order();
    let mut out = Vec::with_capacity(total as usize);
    for pivots in combinations(n, k) {
        // Free entries: row i, column j > pivots[i] that is not a pivot column.
        let free: Vec<(usize, usize)> = pivots
            .iter()
            .enumerate()
            .flat_map(|(i, &c)| {
                ((c + 1)..n)
                    .filter(|j| !pivots.contains(j))
                    .map(move |j| (i, j))
            })
            .collect();
        let mut base = vec![vec![0u32; n]; k];
        for (i, &c) in pivots.iter().enumerate() {
            base[i][c] = 1;
        }
        let mut digits = vec![0u32; free.len()];
        loop {
            let mut rows = base.clone();
            for (&(i, j), &v) in free.iter().zip(&digits) {
                rows[i][j] = v;
            }
            out.push(Subspace::from_canonical(field, n, rows));
            // odometer
            let mut pos = 0;
            while pos < digits.len() {
                digits[pos] += 1;
                if digits[pos] < q {
                    break;
                }
                digits[pos] = 0;
                pos += 1;
            }
            if pos == digits.len() {
                break;
            }
        }
    }
    out.sort_by_cached_key(|s| s.flattened());
    debug_assert_eq!(out.len() as u128, total);
    Ok(out)
}

/// Points of the projective space `P^{n-1}(F)`, as lines of `F^n`.
pub fn projective_points(field: &Field, n: usize) -> Result<Vec<Subspace>> {
    enumerate_subspaces(field, n, 1)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            if n - c < k - cur.len() {
                break;
            }
            cur.push(c);
            rec(c + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
