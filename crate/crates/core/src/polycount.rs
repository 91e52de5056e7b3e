//! Gaussian binomials, the stratum polynomials `tau_{l,d}`, the point-count
//! polynomials `N_l^c`, and Betti numbers read off from them.

use std::sync::OnceLock;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gfq::power_of;
use crate::poly::{Poly1, Poly2};
use crate::scalar::{lit, IntScalar};

/// Gaussian binomial `g_{n,l}(x)`; zero when `l < 0` or `l > n`.
pub fn gaussian_in<T: IntScalar>(n: i64, l: i64) -> Result<Poly1<T>> {
    if l < 0 || l > n {
        return Ok(Poly1::zero());
    }
    let xpow = |e: i64| Poly1::monomial(T::one(), e as usize);
    let mut num = Poly1::one();
    let mut den = Poly1::one();
    for i in 0..l {
        num = &num * &(&xpow(n) - &xpow(i));
        den = &den * &(&xpow(l) - &xpow(i));
    }
    num.div_exact(&den)
}

pub fn gaussian(n: i64, l: i64) -> Result<Poly1<BigInt>> {
    gaussian_in(n, l)
}

/// `g_n^c = g_{n, n-c}`.
pub fn gaussian_codim_in<T: IntScalar>(n: i64, c: i64) -> Result<Poly1<T>> {
    gaussian_in(n, n - c)
}

fn g<T: IntScalar>(n: i64, l: i64) -> Poly1<T> {
    gaussian_in(n, l).expect("Gaussian binomial division is exact")
}

/// `max(0, 2l - n) <= d <= l <= n`.
pub fn stratum_nonempty(n: i64, l: i64, d: i64) -> bool {
    0.max(2 * l - n) <= d && d <= l && l <= n
}

/// Memo table for `tau_{l,d}` at fixed `n`. Each cell is filled at most once,
/// so concurrent readers always observe the same polynomial.
pub struct TauTable<T> {
    n: i64,
    cells: Vec<OnceLock<Poly2<T>>>,
}

impl<T: IntScalar + Send + Sync> TauTable<T> {
    pub fn new(n: i64) -> Self {
        let n = n.max(0);
        let size = ((n + 1) * (n + 2) / 2) as usize;
        TauTable {
            n,
            cells: (0..size).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    fn slot(&self, l: i64, d: i64) -> usize {
        (l * (l + 1) / 2 + d) as usize
    }

    /// `tau_{l,d}(x, y)`.
    pub fn get(&self, l: i64, d: i64) -> Poly2<T> {
        let n = self.n;
        if l < 0 || d < 0 || l > n || d > l {
            return Poly2::zero();
        }
        if let Some(p) = self.cells[self.slot(l, d)].get() {
            return p.clone();
        }
        let value = self.compute(l, d);
        self.cells[self.slot(l, d)].get_or_init(|| value).clone()
    }

    fn compute(&self, l: i64, d: i64) -> Poly2<T> {
        let n = self.n;
        if d == l {
            return Poly2::in_x(&g(n, l));
        }
        let mut acc = Poly2::zero();
        for u in l..=(2 * l - d) {
            let t = self.get(2 * l - d, u);
            if !t.is_zero() {
                acc = &acc + &(&t * &Poly2::in_y(&g(u, l)));
            }
        }
        for t in (d + 1)..=l {
            let tau = self.get(l, t);
            if !tau.is_zero() {
                acc = &acc - &(&tau * &Poly2::in_y(&g(n - 2 * l + t, t - d)));
            }
        }
        acc
    }

    /// `N_l^c(x, y)`.
    pub fn count_poly(&self, l: i64, c: i64) -> Result<Poly2<T>> {
        let n = self.n;
        check_lc(n, l, c)?;
        let mut acc = Poly2::zero();
        for d in 0..=l {
            let tau = self.get(l, d);
            let gc = gaussian_codim_in::<T>(n - 2 * l + d, c)?;
            acc = &acc + &(&tau * &Poly2::in_y(&gc));
        }
        Ok(acc)
    }
}

fn check_lc(n: i64, l: i64, c: i64) -> Result<()> {
    if l < 1 || c < 1 || l + c >= n {
        return Err(Error::Domain(format!(
            "need l >= 1, c >= 1 and l + c < n, got n={n}, l={l}, c={c}"
        )));
    }
    Ok(())
}

pub type IntTauTable = TauTable<BigInt>;

/// `tau_{l,d}(x, y)` with a fresh table.
pub fn tau(n: i64, l: i64, d: i64) -> Poly2<BigInt> {
    IntTauTable::new(n).get(l, d)
}

/// `N_l^c(x, y)`.
pub fn count_poly(n: i64, l: i64, c: i64) -> Result<Poly2<BigInt>> {
    check_lc(n, l, c)?;
    IntTauTable::new(n).count_poly(l, c)
}

/// Even Betti numbers of `X[r,s]_l^c`, both symbolically in `q = rs` and
/// evaluated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BettiTable {
    pub n: i64,
    pub l: i64,
    pub c: i64,
    pub r: u64,
    pub s: u64,
    /// `b_0, b_2, ..., b_{2 dim X}` at `q = rs`.
    #[serde(serialize_with = "ser_bigints")]
    pub b: Vec<BigInt>,
    /// The same numbers as polynomials in `q`.
    #[serde(skip)]
    pub symbolic: Vec<Poly1<BigInt>>,
}

fn ser_bigints<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl BettiTable {
    pub fn dim(&self) -> i64 {
        (self.l + self.c) * (self.n - self.l - self.c)
    }
}

/// Check that `r` and `s` are powers of one prime and not both 1.
pub fn check_frobenius_pair(r: u64, s: u64) -> Result<u64> {
    if r == 0 || s == 0 || (r == 1 && s == 1) {
        return Err(Error::Domain(format!(
            "r and s must be positive and not both 1, got r={r}, s={s}"
        )));
    }
    let q = r
        .checked_mul(s)
        .ok_or_else(|| Error::Domain("rs overflows".into()))?;
    let (p, _) = crate::gfq::prime_power(q)
        .ok_or_else(|| Error::Domain(format!("rs = {q} is not a prime power")))?;
    if power_of(r, p).is_none() || power_of(s, p).is_none() {
        return Err(Error::Domain(format!(
            "r={r} and s={s} are not powers of the same prime"
        )));
    }
    Ok(q)
}

pub fn betti(n: i64, l: i64, c: i64, r: u64, s: u64) -> Result<BettiTable> {
    let q = check_frobenius_pair(r, s)?;
    let np = count_poly(n, l, c)?;
    let dim = (l + c) * (n - l - c);
    let qb = BigInt::from(q);
    let mut b = Vec::with_capacity(dim as usize + 1);
    let mut symbolic = Vec::with_capacity(dim as usize + 1);
    for i in 0..=dim {
        let coeff = np.coeff_y(i as u32);
        b.push(coeff.eval(&qb));
        symbolic.push(coeff);
    }
    Ok(BettiTable {
        n,
        l,
        c,
        r,
        s,
        b,
        symbolic,
    })
}

/// `f(n) = (q^n - 1)/(q - 1)`, the number of points of `P^{n-1}(F_q)`.
pub fn projective_count<T: IntScalar>(n: i64, q: i64) -> T {
    g::<T>(n, 1).eval(&lit(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn p1(v: &[i64]) -> Poly1<BigInt> {
        Poly1::new(v.iter().map(|&c| bi(c)).collect())
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian(5, 0).unwrap(), Poly1::one());
        assert_eq!(gaussian(5, 5).unwrap(), Poly1::one());
        assert_eq!(gaussian(4, 1).unwrap().eval(&bi(4)), bi(85));
        assert_eq!(gaussian(4, 2).unwrap().eval(&bi(4)), bi(357));
        assert!(gaussian(3, 4).unwrap().is_zero());
        assert!(gaussian(3, -1).unwrap().is_zero());
        assert_eq!(gaussian(6, 3).unwrap().degree(), Some(9));
        assert!(gaussian(6, 3).unwrap().is_monic());
        assert_eq!(gaussian_in::<i64>(4, 2).unwrap().eval(&2), 35);
    }

    #[test]
    fn tau_base_cases() {
        for n in 0..6 {
            for l in 0..=n {
                assert_eq!(tau(n, l, l), Poly2::in_x(&gaussian(n, l).unwrap()));
            }
            assert!(tau(n, n + 1, 0).is_zero());
            assert!(tau(n, 1, 2).is_zero());
        }
        assert!(tau(4, 3, 1).is_zero());
    }

    #[test]
    fn tau_point_strata() {
        let g31 = gaussian(3, 1).unwrap();
        let expected = &Poly2::in_y(&g31) - &Poly2::in_x(&g31);
        assert_eq!(tau(3, 1, 0), expected);
    }

    #[test]
    fn tau_two_one_closed_form() {
        for n in 4..8 {
            let gy = |a, b| Poly2::in_y(&gaussian(a, b).unwrap());
            let gx = |a, b| Poly2::in_x(&gaussian(a, b).unwrap());
            let expected = &(&(&gy(n, n - 1) - &gx(n, n - 1))
                + &(&gx(n, n - 1) * &gy(n - 1, n - 2)))
                - &(&gx(n, n - 2) * &gy(2, 1));
            assert_eq!(tau(n, 2, 1), expected, "n={n}");
        }
    }

    #[test]
    fn n11_closed_form() {
        for n in 3..8 {
            let gy = |a, c| Poly2::in_y(&gaussian_codim_in::<BigInt>(a, c).unwrap());
            let gn1 = gaussian(n, 1).unwrap();
            let expected = &(&Poly2::in_y(&gn1) * &gy(n - 2, 1))
                + &(&Poly2::in_x(&gn1) * &(&gy(n - 1, 1) - &gy(n - 2, 1)));
            assert_eq!(count_poly(n, 1, 1).unwrap(), expected, "n={n}");
        }
    }

    #[test]
    fn surface_count() {
        let np = count_poly(3, 1, 1).unwrap();
        for q in [2i64, 3, 4, 5, 16] {
            let got = np.subs_x(&bi(q));
            assert_eq!(got, p1(&[1, q * q + q + 2, 1]));
        }
    }

    #[test]
    fn domain_errors() {
        assert!(count_poly(3, 1, 2).is_err());
        assert!(count_poly(4, 0, 1).is_err());
        assert!(betti(4, 1, 1, 2, 3).is_err());
        assert!(betti(4, 1, 1, 1, 1).is_err());
        assert!(betti(4, 1, 1, 6, 1).is_err());
    }

    #[test]
    fn betti_examples() {
        let t = betti(4, 1, 1, 2, 2).unwrap();
        assert_eq!(t.b, vec![bi(1), bi(2), bi(87), bi(2), bi(1)]);
        let t = betti(3, 1, 1, 1, 2).unwrap();
        assert_eq!(t.b, vec![bi(1), bi(1 + 7), bi(1)]);
    }

    #[test]
    fn betti_seven_two_two() {
        let t = betti(7, 2, 2, 2, 2).unwrap();
        assert_eq!(t.dim(), 12);
        let six = [0, 1, 1, 1, 1, 1, 1];
        let with_const = |k: i64, c: i64| {
            let mut v: Vec<i64> = six.iter().map(|x| x * k).collect();
            v[0] = c;
            p1(&v)
        };
        let expected = [
            p1(&[1]),
            p1(&[2]),
            p1(&[5]),
            with_const(1, 8),
            with_const(2, 12),
            with_const(3, 14),
            p1(&[16, 4, 5, 5, 6, 6, 6, 2, 2, 1, 1]),
        ];
        for (i, e) in expected.iter().enumerate() {
            assert_eq!(&t.symbolic[i], e, "b_{}", 2 * i);
            assert_eq!(&t.symbolic[12 - i], e, "b_{}", 24 - 2 * i);
        }
    }
}
