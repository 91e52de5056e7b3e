//! Dense univariate and sparse bivariate polynomials over a ring.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{IntScalar, Ring};

/// Univariate polynomial, `coeffs[i]` the coefficient of `x^i`, with no
/// trailing zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly1<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> Poly1<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly1 { coeffs }
    }

    pub fn zero() -> Self {
        Poly1 { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    /// `c * x^d`
    pub fn monomial(c: T, d: usize) -> Self {
        let mut coeffs = vec![T::zero(); d + 1];
        coeffs[d] = c;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Monic and of positive degree.
    pub fn is_monic(&self) -> bool {
        self.degree().is_some_and(|d| d > 0) && self.leading().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.coeffs.len();
        (0..n / 2).all(|i| self.coeffs[i] == self.coeffs[n - 1 - i])
    }
}

impl<T: IntScalar> Poly1<T> {
    /// Exact quotient; fails if the division leaves a remainder or a
    /// leading coefficient does not divide.
    pub fn div_exact(&self, divisor: &Poly1<T>) -> Result<Poly1<T>> {
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Consistency("division by the zero polynomial".into()))?;
        let lead = divisor.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        let Some(dn) = self.degree() else {
            return Ok(Poly1::zero());
        };
        if dn < dd {
            return Err(Error::Consistency("inexact polynomial division".into()));
        }
        let mut quot = vec![T::zero(); dn - dd + 1];
        for i in (0..=dn - dd).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            let (q, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return Err(Error::Consistency("inexact polynomial division".into()));
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].clone() - q.clone() * dc.clone();
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::Consistency("inexact polynomial division".into()));
        }
        Ok(Poly1::new(quot))
    }
}

impl<T: Ring> Add for &Poly1<T> {
    type Output = Poly1<T>;
    fn add(self, rhs: &Poly1<T>) -> Poly1<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Sub for &Poly1<T> {
    type Output = Poly1<T>;
    fn sub(self, rhs: &Poly1<T>) -> Poly1<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly1::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Neg for &Poly1<T> {
    type Output = Poly1<T>;
    fn neg(self) -> Poly1<T> {
        Poly1::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T: Ring> Mul for &Poly1<T> {
    type Output = Poly1<T>;
    fn mul(self, rhs: &Poly1<T>) -> Poly1<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly1::new(out)
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly1<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{i}")?,
            }
        }
        Ok(())
    }
}

/// Sparse bivariate polynomial keyed by `(deg_x, deg_y)`; zero coefficients
/// are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly2<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Ring> Default for Poly2<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Ring> Poly2<T> {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(T::one(), 0, 0)
    }

    pub fn monomial(c: T, dx: u32, dy: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(dx, dy, c);
        p
    }

    /// Embed a univariate polynomial as a polynomial in `x`.
    pub fn in_x(p: &Poly1<T>) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }

    /// Embed a univariate polynomial as a polynomial in `y`.
    pub fn in_y(p: &Poly1<T>) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(0, i as u32, c.clone());
        }
        out
    }

    fn add_term(&mut self, dx: u32, dy: u32, c: T) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((dx, dy)).or_insert_with(T::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&(dx, dy));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, dx: u32, dy: u32) -> T {
        self.terms.get(&(dx, dy)).cloned().unwrap_or_else(T::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in degree-lexicographic order: by `a + b`, then by `a`.
    pub fn terms_deglex(&self) -> Vec<(u32, u32, T)> {
        let mut v: Vec<(u32, u32, T)> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| (a, b, c.clone()))
            .collect();
        v.sort_by_key(|&(a, b, _)| (a + b, a));
        v
    }

    /// Degree in `y`; `None` for the zero polynomial.
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, b)| b).max()
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(a, _)| a).max()
    }

    /// Coefficient of `y^i`, as a polynomial in `x`.
    pub fn coeff_y(&self, i: u32) -> Poly1<T> {
        let dx = self.deg_x().unwrap_or(0) as usize;
        let mut coeffs = vec![T::zero(); dx + 1];
        for (&(a, b), c) in &self.terms {
            if b == i {
                coeffs[a as usize] = c.clone();
            }
        }
        Poly1::new(coeffs)
    }

    /// Monic in `y` of positive `y`-degree.
    pub fn is_monic_y(&self) -> bool {
        match self.deg_y() {
            Some(d) if d > 0 => {
                let lead = self.coeff_y(d);
                lead.degree() == Some(0) && lead.coeff(0).is_one()
            }
            _ => false,
        }
    }

    /// Palindromic as a polynomial in `y` with coefficients in `Z[x]`.
    pub fn is_palindromic_y(&self) -> bool {
        let Some(d) = self.deg_y() else {
            return true;
        };
        (0..=d).all(|i| self.coeff_y(i) == self.coeff_y(d - i))
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        let mut acc = T::zero();
        for (&(a, b), c) in &self.terms {
            acc = acc + c.clone() * pow(x, a) * pow(y, b);
        }
        acc
    }

    /// Substitute a value for `x`, leaving a polynomial in `y`.
    pub fn subs_x(&self, x: &T) -> Poly1<T> {
        let dy = self.deg_y().unwrap_or(0) as usize;
        let mut coeffs = vec![T::zero(); dy + 1];
        for (&(a, b), c) in &self.terms {
            coeffs[b as usize] = coeffs[b as usize].clone() + c.clone() * pow(x, a);
        }
        Poly1::new(coeffs)
    }
}

fn pow<T: Ring>(base: &T, e: u32) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

impl<T: Ring> Add for &Poly2<T> {
    type Output = Poly2<T>;
    fn add(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, c.clone());
        }
        out
    }
}

impl<T: Ring> Sub for &Poly2<T> {
    type Output = Poly2<T>;
    fn sub(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = self.clone();
        for (&(a, b), c) in &rhs.terms {
            out.add_term(a, b, -c.clone());
        }
        out
    }
}

impl<T: Ring> Neg for &Poly2<T> {
    type Output = Poly2<T>;
    fn neg(self) -> Poly2<T> {
        Poly2 {
            terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect(),
        }
    }
}

impl<T: Ring> Mul for &Poly2<T> {
    type Output = Poly2<T>;
    fn mul(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = Poly2::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Ring + fmt::Display> Poly2<T> {
    /// One `coeff x^a y^b` term per line, degree-lexicographic order.
    /// The zero polynomial prints as a single `0`.
    pub fn to_term_list(&self) -> String {
        if self.is_zero() {
            return "0\n".to_string();
        }
        self.terms_deglex()
            .into_iter()
            .map(|(a, b, c)| format!("{c} x^{a} y^{b}\n"))
            .collect()
    }
}

impl<T: Ring + fmt::Display> fmt::Display for Poly2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms_deglex()
            .into_iter()
            .map(|(a, b, c)| format!("{c}*x^{a}*y^{b}"))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
