//! Exhaustive rational-point counts, used as an oracle for the polynomials
//! in [`crate::polycount`].

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfq::{enumerate_subspaces_with_budget, subspace_count, FieldSpec, Subspace};
use crate::polycount::{check_frobenius_pair, gaussian, IntTauTable};

/// Default cap on `|G_{n,l}| * |G_n^c|` for one count.
pub const DEFAULT_MAX_PAIRS: u128 = 100_000_000;

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    /// Iterate all pairs `(L, M)` instead of counting the `M` in closed form.
    pub naive: bool,
    pub max_pairs: u128,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            naive: false,
            max_pairs: DEFAULT_MAX_PAIRS,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub count: u128,
    pub formula: u128,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn pow_checked(q: u64, nu: u32) -> Result<u64> {
    q.checked_pow(nu)
        .ok_or_else(|| Error::Domain(format!("{q}^{nu} overflows")))
}

/// `|X[r,s]_l^c(F_{(rs)^nu})|` by enumeration.
pub fn count_points(
    n: usize,
    l: usize,
    c: usize,
    r: u64,
    s: u64,
    nu: u32,
    opts: CountOptions,
) -> Result<u128> {
    if l < 1 || c < 1 || l + c >= n {
        return Err(Error::Domain(format!(
            "need l >= 1, c >= 1 and l + c < n, got n={n}, l={l}, c={c}"
        )));
    }
    if nu < 1 {
        return Err(Error::Domain("nu must be at least 1".into()));
    }
    let q = check_frobenius_pair(r, s)?;
    let big_q = pow_checked(q, nu)?;
    let pairs = subspace_count(big_q, n, l).saturating_mul(subspace_count(big_q, n, n - c));
    if pairs > opts.max_pairs {
        return Err(Error::Capacity {
            what: format!("pairs (L, M) over F_{big_q}"),
            required: pairs,
            budget: opts.max_pairs,
        });
    }
    let field = FieldSpec::of_order(big_q)?;
    let ls = enumerate_subspaces_with_budget(&field, n, l, u128::MAX)?;
    if opts.naive {
        let ms: Vec<Subspace> = enumerate_subspaces_with_budget(&field, n, n - c, u128::MAX)?
            .iter()
            .map(|m| m.frobenius_image(s))
            .collect::<Result<_>>()?;
        let per_l: Vec<u128> = ls
            .par_iter()
            .map(|lsub| {
                let k = lsub.sum_unchecked(&lsub.frobenius_unchecked(q));
                ms.iter().filter(|ms| ms.contains(&k)).count() as u128
            })
            .collect();
        return Ok(per_l.iter().sum());
    }
    // M -> M^s is a bijection, so count M' of codim c containing K directly.
    let big_q_int = BigInt::from(big_q);
    let over: Vec<u128> = (0..=n)
        .map(|dk| {
            if dk + c > n {
                return 0;
            }
            gaussian((n - dk) as i64, (n - c - dk) as i64)
                .expect("exact")
                .eval(&big_q_int)
                .to_u128()
                .expect("count fits u128")
        })
        .collect();
    let per_l: Vec<u128> = ls
        .par_iter()
        .map(|lsub| {
            let k = lsub.sum_unchecked(&lsub.frobenius_unchecked(q));
            over[k.dim()]
        })
        .collect();
    Ok(per_l.iter().sum())
}

/// `N_l^c(rs, (rs)^nu)` as an integer.
pub fn formula_count(n: usize, l: usize, c: usize, r: u64, s: u64, nu: u32) -> Result<u128> {
    let q = check_frobenius_pair(r, s)?;
    let np = IntTauTable::new(n as i64).count_poly(l as i64, c as i64)?;
    let qb = BigInt::from(q);
    let v = np.eval(&qb, &qb.pow(nu));
    v.to_u128()
        .ok_or_else(|| Error::Domain("formula value does not fit in u128".into()))
}

/// Brute-force count paired with the formula value.
pub fn count_and_compare(
    n: usize,
    l: usize,
    c: usize,
    r: u64,
    s: u64,
    nu: u32,
    opts: CountOptions,
) -> Result<CountReport> {
    let count = count_points(n, l, c, r, s, nu, opts)?;
    let formula = formula_count(n, l, c, r, s, nu)?;
    Ok(CountReport {
        count,
        formula,
        matches: count == formula,
    })
}

/// `|T_{l,d}(F_{q^nu})|`: `l`-dimensional subspaces `L` with
/// `dim(L ∩ L^q) = d`.
pub fn count_stratum(n: usize, l: usize, q: u64, d: usize, nu: u32) -> Result<u128> {
    count_stratum_with_budget(n, l, q, d, nu, crate::gfq::DEFAULT_SUBSPACE_BUDGET)
}

pub fn count_stratum_with_budget(
    n: usize,
    l: usize,
    q: u64,
    d: usize,
    nu: u32,
    budget: u128,
) -> Result<u128> {
    if l > n {
        return Ok(0);
    }
    if nu < 1 {
        return Err(Error::Domain("nu must be at least 1".into()));
    }
    let big_q = pow_checked(q, nu)?;
    let field = FieldSpec::of_order(big_q)?;
    let ls = enumerate_subspaces_with_budget(&field, n, l, budget)?;
    field.check_frobenius(q)?;
    Ok(ls
        .par_iter()
        .filter(|lsub| lsub.intersect_unchecked(&lsub.frobenius_unchecked(q)).dim() == d)
        .count() as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn both(n: usize, l: usize, c: usize, r: u64, s: u64, nu: u32) -> (u128, u128) {
        let fast = count_points(n, l, c, r, s, nu, CountOptions::default()).unwrap();
        let naive = count_points(
            n,
            l,
            c,
            r,
            s,
            nu,
            CountOptions {
                naive: true,
                ..Default::default()
            },
        )
        .unwrap();
        (fast, naive)
    }

    #[test]
    fn surface_over_f4() {
        assert_eq!(both(3, 1, 1, 2, 2, 1), (105, 105));
    }

    #[test]
    fn threefold_over_f4() {
        assert_eq!(both(4, 1, 1, 2, 2, 1), (1785, 1785));
    }

    #[test]
    fn swap_symmetry() {
        let a = count_points(4, 1, 2, 2, 1, 1, CountOptions::default()).unwrap();
        let b = count_points(4, 2, 1, 1, 2, 1, CountOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, formula_count(4, 1, 2, 2, 1, 1).unwrap());
    }

    #[test]
    fn strata() {
        assert_eq!(count_stratum(3, 1, 2, 0, 2).unwrap(), 14);
        assert_eq!(count_stratum(4, 2, 2, 2, 2).unwrap(), 35);
        assert_eq!(count_stratum(4, 3, 2, 1, 2).unwrap(), 0);
    }

    #[test]
    fn budget_errors() {
        let opts = CountOptions {
            naive: false,
            max_pairs: 100,
        };
        match count_points(3, 1, 1, 2, 2, 1, opts) {
            Err(Error::Capacity {
                required, budget, ..
            }) => {
                assert_eq!(required, 441);
                assert_eq!(budget, 100);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(count_stratum(3, 1, 6, 0, 1).is_err());
        assert!(count_stratum_with_budget(3, 1, 2, 0, 2, 10).is_err());
    }
}
