//! Multivariate power series truncated at a fixed total degree.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Ring;

/// Power series in `nvars` variables, keeping only terms of total degree at
/// most `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncSeries<T> {
    nvars: usize,
    bound: u32,
    terms: BTreeMap<Vec<u32>, T>,
}

impl<T: Ring> TruncSeries<T> {
    pub fn zero(nvars: usize, bound: u32) -> Self {
        TruncSeries {
            nvars,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, bound: u32, c: T) -> Self {
        let mut s = Self::zero(nvars, bound);
        s.add_term(vec![0; nvars], c);
        s
    }

    pub fn one(nvars: usize, bound: u32) -> Self {
        Self::constant(nvars, bound, T::one())
    }

    /// `c * x_i`.
    pub fn var(nvars: usize, bound: u32, i: usize, c: T) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut s = Self::zero(nvars, bound);
        s.add_term(e, c);
        s
    }

    /// Linear form `c + sum_i a_i x_i`.
    pub fn linear(nvars: usize, bound: u32, c: T, coeffs: &[(usize, T)]) -> Self {
        let mut s = Self::constant(nvars, bound, c);
        for (i, a) in coeffs {
            s = &s + &Self::var(nvars, bound, *i, a.clone());
        }
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &T)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: T) {
        if c.is_zero() || e.iter().sum::<u32>() > self.bound {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = v.clone() + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn coeff(&self, e: &[u32]) -> T {
        self.terms.get(e).cloned().unwrap_or_else(T::zero)
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous(&self, d: u32) -> Self {
        TruncSeries {
            nvars: self.nvars,
            bound: self.bound,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same terms under a different truncation bound.
    pub fn with_bound(&self, bound: u32) -> Self {
        let mut s = Self::zero(self.nvars, bound);
        for (e, c) in &self.terms {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars, self.bound);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse up to the bound; the constant term must be
    /// `1` or `-1`.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = self.coeff(&vec![0; self.nvars]);
        let sign = if c0.is_one() {
            T::one()
        } else if (-c0.clone()).is_one() {
            -T::one()
        } else {
            return Err(Error::Domain(
                "series inverse needs a unit constant term".into(),
            ));
        };
        // self = sign * (1 - g)
        let normalized = self.scale(&sign);
        let g = &Self::one(self.nvars, self.bound) - &normalized;
        let mut acc = Self::one(self.nvars, self.bound);
        let mut power = Self::one(self.nvars, self.bound);
        for _ in 0..self.bound {
            power = &power * &g;
            if power.is_zero() {
                break;
            }
            acc = &acc + &power;
        }
        Ok(acc.scale(&sign))
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut s = Self::zero(self.nvars, self.bound);
        for (e, v) in &self.terms {
            s.add_term(e.clone(), v.clone() * c.clone());
        }
        s
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "series variable count mismatch");
    }
}

impl<T: Ring> Add for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn add(self, rhs: &TruncSeries<T>) -> TruncSeries<T> {
        self.check(rhs);
        let mut out = self.with_bound(self.bound.min(rhs.bound));
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<T: Ring> Neg for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn neg(self) -> TruncSeries<T> {
        self.scale(&-T::one())
    }
}

impl<T: Ring> Sub for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn sub(self, rhs: &TruncSeries<T>) -> TruncSeries<T> {
        self + &(-rhs)
    }
}

impl<T: Ring> Mul for &TruncSeries<T> {
    type Output = TruncSeries<T>;
    fn mul(self, rhs: &TruncSeries<T>) -> TruncSeries<T> {
        self.check(rhs);
        let bound = self.bound.min(rhs.bound);
        let mut out = TruncSeries::zero(self.nvars, bound);
        for (e1, c1) in &self.terms {
            let d1: u32 = e1.iter().sum();
            for (e2, c2) in &rhs.terms {
                if d1 + e2.iter().sum::<u32>() > bound {
                    continue;
                }
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1.clone() * c2.clone());
            }
        }
        out
    }
}
