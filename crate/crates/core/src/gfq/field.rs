use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order accepted anywhere in the crate.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Fields up to this order use exponent/logarithm tables.
pub const TABLE_FIELD_ORDER: u64 = 1 << 16;

const NO_LOG: u32 = u32::MAX;

/// How multiplication is carried out.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    /// Exponent, logarithm and Zech-logarithm tables.
    Table,
    /// Polynomial arithmetic reduced modulo the defining polynomial on every call.
    Poly,
}

#[derive(Debug)]
enum Repr {
    Table {
        exp: Vec<u32>,
        log: Vec<u32>,
        /// `zech[i] = log(1 + g^i)`, empty in characteristic 2 where addition is XOR.
        zech: Vec<u32>,
    },
    Poly,
}

/// The finite field `F_{p^k}`.
///
/// Elements are identified with indices in `0..p^k`: the base-`p` digits of
/// an index are the coefficients (low to high) of the element written as a
/// polynomial in the class of `x` modulo `modulus`. Index 0 is zero and
/// index 1 is one; elements of the prime field have index `< p`.
#[derive(Debug)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    order: u32,
    /// Monic irreducible polynomial, coefficients low to high, length `k + 1`.
    modulus: Vec<u32>,
    /// Index of a primitive element.
    generator: u32,
    repr: Repr,
}

/// Shared handle to a field.
pub type Field = Arc<FieldSpec>;

impl FieldSpec {
    /// `F_{p^k}` with the canonical modulus: the first monic irreducible
    /// polynomial of degree `k` when the lower coefficients are read as a
    /// base-`p` integer.
    pub fn new(p: u32, k: u32) -> Result<Field> {
        let order = check_order(p, k)?;
        let regime = if order as u64 <= TABLE_FIELD_ORDER {
            Regime::Table
        } else {
            Regime::Poly
        };
        Self::build(p, k, canonical_modulus(p, k), regime)
    }

    /// Same as [`FieldSpec::new`] but with an explicit arithmetic regime.
    pub fn with_regime(p: u32, k: u32, regime: Regime) -> Result<Field> {
        check_order(p, k)?;
        Self::build(p, k, canonical_modulus(p, k), regime)
    }

    /// A field with a caller-supplied modulus, which is verified to be monic
    /// and irreducible.
    pub fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Result<Field> {
        let order = check_order(p, k)?;
        if modulus.len() != k as usize + 1 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField(format!(
                "modulus must be monic of degree {k}, got {modulus:?}"
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficient out of range".into(),
            ));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        let regime = if order as u64 <= TABLE_FIELD_ORDER {
            Regime::Table
        } else {
            Regime::Poly
        };
        Self::build(p, k, modulus, regime)
    }

    /// `F_q` for a prime power `q`.
    pub fn of_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q)
            .filter(|&(_, k)| k > 0)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p as u32, k)
    }

    fn build(p: u32, k: u32, modulus: Vec<u32>, regime: Regime) -> Result<Field> {
        let order = p.pow(k);
        let mut spec = FieldSpec {
            p,
            k,
            order,
            modulus,
            generator: 0,
            repr: Repr::Poly,
        };
        spec.generator = spec.find_generator();
        if regime == Regime::Table {
            let n = (order - 1) as usize;
            let mut exp = vec![0u32; n];
            let mut log = vec![NO_LOG; order as usize];
            let mut x = 1u32;
            for (i, slot) in exp.iter_mut().enumerate() {
                *slot = x;
                log[x as usize] = i as u32;
                x = spec.poly_mul(x, spec.generator);
            }
            let zech = if p == 2 {
                Vec::new()
            } else {
                exp.iter()
                    .map(|&e| log[spec.digit_add(1, e) as usize])
                    .collect()
            };
            spec.repr = Repr::Table { exp, log, zech };
        }
        Ok(Arc::new(spec))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn regime(&self) -> Regime {
        match self.repr {
            Repr::Table { .. } => Regime::Table,
            Repr::Poly => Regime::Poly,
        }
    }

    /// Indices of all elements, in the canonical element order.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.order
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        match &self.repr {
            Repr::Table { exp, log, zech } => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let n = self.order - 1;
                let (la, lb) = (log[a as usize], log[b as usize]);
                // a + b = a * (1 + g^(lb - la))
                let z = zech[((lb + n - la) % n) as usize];
                if z == NO_LOG {
                    0
                } else {
                    exp[((la as u64 + z as u64) % n as u64) as usize]
                }
            }
            Repr::Poly => self.digit_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut out = 0u32;
        let mut place = 1u32;
        let mut x = a;
        for _ in 0..self.k {
            let d = x % self.p;
            x /= self.p;
            out += ((self.p - d) % self.p) * place;
            place *= self.p;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.repr {
            Repr::Table { exp, log, .. } => {
                if a == 0 || b == 0 {
                    return 0;
                }
                let n = (self.order - 1) as u64;
                exp[((log[a as usize] as u64 + log[b as usize] as u64) % n) as usize]
            }
            Repr::Poly => self.poly_mul(a, b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        match &self.repr {
            Repr::Table { exp, log, .. } => {
                let n = self.order - 1;
                Some(exp[((n - log[a as usize]) % n) as usize])
            }
            Repr::Poly => Some(self.pow(a, (self.order - 2) as u64)),
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if let Repr::Table { exp, log, .. } = &self.repr {
            let n = (self.order - 1) as u64;
            return exp[((log[a as usize] as u64 * (e % n)) % n) as usize];
        }
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The `q`-th power Frobenius map. `q` must be a power of the
    /// characteristic (`q = 1` is the identity).
    pub fn frobenius(&self, a: u32, q: u64) -> Result<u32> {
        self.check_frobenius(q)?;
        Ok(self.pow_frob(a, q))
    }

    pub(crate) fn check_frobenius(&self, q: u64) -> Result<()> {
        if q == 0 || power_of(q, self.p as u64).is_none() {
            return Err(Error::InvalidFrobenius {
                q,
                p: self.p as u64,
            });
        }
        Ok(())
    }

    /// Frobenius without the exponent check. Exponents are reduced modulo the
    /// field degree first, so huge `q` are fine.
    #[inline]
    pub(crate) fn pow_frob(&self, a: u32, q: u64) -> u32 {
        let e = power_of(q, self.p as u64).unwrap_or(0) % self.k;
        if e == 0 || a <= 1 {
            return a;
        }
        self.pow(a, (self.p as u64).pow(e))
    }

    /// Whether the element lies in the subfield `F_q` (`x^q = x`).
    pub fn in_subfield(&self, a: u32, q: u64) -> bool {
        self.pow_frob(a, q) == a
    }

    pub fn elem(self: &Arc<Self>, rep: u32) -> FqElem {
        assert!(rep < self.order, "element index out of range");
        FqElem {
            field: Arc::clone(self),
            rep,
        }
    }

    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0u32; self.k as usize];
        for slot in d.iter_mut() {
            *slot = a % self.p;
            a /= self.p;
        }
        d
    }

    fn undigits(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.k {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let p = self.p as u64;
        let k = self.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for deg in (k..2 * k).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            for (i, &m) in self.modulus[..k].iter().enumerate() {
                let idx = deg - k + i;
                prod[idx] = (prod[idx] + (p - c) * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..k].iter().map(|&c| c as u32).collect();
        self.undigits(&low)
    }

    fn find_generator(&self) -> u32 {
        let n = (self.order - 1) as u64;
        if n == 1 {
            return 1;
        }
        let factors = prime_factors(n);
        let pow = |a: u32, mut e: u64| {
            let mut base = a;
            let mut acc = 1u32;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.poly_mul(acc, base);
                }
                base = self.poly_mul(base, base);
                e >>= 1;
            }
            acc
        };
        (2..self.order)
            .find(|&g| factors.iter().all(|&f| pow(g, n / f) != 1))
            .expect("multiplicative group of a finite field is cyclic")
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order)
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

fn check_order(p: u32, k: u32) -> Result<u32> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    if k == 0 {
        return Err(Error::InvalidField(
            "extension degree must be at least 1".into(),
        ));
    }
    let order = (p as u64).checked_pow(k).filter(|&o| o <= MAX_FIELD_ORDER);
    order.map(|o| o as u32).ok_or_else(|| {
        Error::InvalidField(format!("F_{{{p}^{k}}} exceeds the supported order 2^20"))
    })
}

/// A field element tied to its field.
#[derive(Clone, Debug)]
pub struct FqElem {
    pub field: Field,
    pub rep: u32,
}

impl PartialEq for FqElem {
    fn eq(&self, other: &Self) -> bool {
        self.rep == other.rep && *self.field == *other.field
    }
}

impl Eq for FqElem {}

impl FqElem {
    pub fn inv(&self) -> Option<FqElem> {
        self.field.inv(self.rep).map(|r| self.field.elem(r))
    }

    pub fn pow(&self, e: u64) -> FqElem {
        self.field.elem(self.field.pow(self.rep, e))
    }

    pub fn is_zero(&self) -> bool {
        self.rep == 0
    }
}

macro_rules! elem_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for &FqElem {
            type Output = FqElem;
            fn $method(self, rhs: &FqElem) -> FqElem {
                assert!(*self.field == *rhs.field, "elements of different fields");
                FqElem {
                    field: Arc::clone(&self.field),
                    rep: self.field.$method(self.rep, rhs.rep),
                }
            }
        }
    };
}

elem_binop!(Add, add);
elem_binop!(Sub, sub);
elem_binop!(Mul, mul);

impl Neg for &FqElem {
    type Output = FqElem;
    fn neg(self) -> FqElem {
        FqElem {
            field: Arc::clone(&self.field),
            rep: self.field.neg(self.rep),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `Some(e)` when `q = p^e` (including `q = 1`, `e = 0`).
pub fn power_of(mut q: u64, p: u64) -> Option<u32> {
    if q == 0 || p < 2 {
        return None;
    }
    let mut e = 0;
    while q % p == 0 {
        q /= p;
        e += 1;
    }
    (q == 1).then_some(e)
}

/// Decompose `q = p^e` with `p` prime. `q = 1` gives `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    power_of(q, p).map(|e| (p, e))
}

// Polynomials over F_p as coefficient vectors, low to high.

fn poly_rem(p: u32, a: &[u32], b: &[u32]) -> Vec<u32> {
    let p64 = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&c| c as u64).collect();
    let db = b.len() - 1;
    let lead_inv = modinv(b[db] as u64, p64);
    for deg in (db..r.len()).rev() {
        let c = r[deg] * lead_inv % p64;
        if c == 0 {
            continue;
        }
        for (i, &bc) in b.iter().enumerate() {
            let idx = deg - db + i;
            r[idx] = (r[idx] + p64 - c * bc as u64 % p64) % p64;
        }
    }
    r.truncate(db);
    r.into_iter().map(|c| c as u32).collect()
}

fn modinv(a: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = low;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            let r = poly_rem(p, f, &g);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// First monic irreducible of degree `k`, scanning lower coefficients as a
/// base-`p` integer from 0 upward.
pub fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for low in 0..count {
        let mut f = Vec::with_capacity(k as usize + 1);
        let mut x = low;
        for _ in 0..k {
            f.push((x % p as u64) as u32);
            x /= p as u64;
        }
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over F_p")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_modulus(2, 1), vec![0, 1]);
        assert_eq!(canonical_modulus(2, 2), vec![1, 1, 1]);
        assert_eq!(canonical_modulus(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(canonical_modulus(2, 4), vec![1, 1, 0, 0, 1]);
        assert_eq!(canonical_modulus(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FieldSpec::new(4, 1).is_err());
        assert!(FieldSpec::new(2, 0).is_err());
        assert!(FieldSpec::new(2, 21).is_err());
        assert!(FieldSpec::with_modulus(2, 2, vec![1, 0, 1]).is_err());
        assert!(FieldSpec::with_modulus(2, 2, vec![1, 1, 1]).is_ok());
    }

    fn check_axioms(f: &Field) {
        let q = f.order();
        for a in f.elements() {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            assert_eq!(f.pow(a, q as u64), a, "x^q = x");
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
        }
        let step = (q / 13).max(1);
        for a in (0..q).step_by(step as usize) {
            for b in (0..q).step_by(step as usize) {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in (0..q).step_by(step as usize * 3) {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, k) in [
            (2, 1),
            (2, 2),
            (2, 4),
            (3, 1),
            (3, 2),
            (5, 2),
            (7, 1),
            (2, 8),
        ] {
            check_axioms(&FieldSpec::new(p, k).unwrap());
        }
    }

    #[test]
    fn table_and_poly_regimes_agree() {
        for (p, k) in [(2, 4), (3, 3), (5, 2)] {
            let t = FieldSpec::with_regime(p, k, Regime::Table).unwrap();
            let s = FieldSpec::with_regime(p, k, Regime::Poly).unwrap();
            assert_eq!(s.regime(), Regime::Poly);
            for a in t.elements() {
                for b in t.elements() {
                    assert_eq!(t.mul(a, b), s.mul(a, b));
                    assert_eq!(t.add(a, b), s.add(a, b));
                }
            }
        }
    }

    #[test]
    fn large_field_uses_polynomial_regime() {
        let f = FieldSpec::new(2, 18).unwrap();
        assert_eq!(f.regime(), Regime::Poly);
        let g = f.generator();
        assert_eq!(f.pow(g, f.order() as u64 - 1), 1);
        assert_ne!(f.pow(g, (f.order() as u64 - 1) / 3), 1);
        let x = 123_457 % f.order();
        assert_eq!(f.mul(x, f.inv(x).unwrap()), 1);
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let f = FieldSpec::new(2, 4).unwrap();
        assert_eq!(f.frobenius(1, 2).unwrap(), 1);
        assert!(f.frobenius(5, 3).is_err());
        let sub4: Vec<u32> = f.elements().filter(|&a| f.in_subfield(a, 4)).collect();
        assert_eq!(sub4.len(), 4);
        let sub2: Vec<u32> = f.elements().filter(|&a| f.in_subfield(a, 2)).collect();
        assert_eq!(sub2, vec![0, 1]);
    }

    #[test]
    fn element_wrapper_ops() {
        let f = FieldSpec::new(3, 2).unwrap();
        let a = f.elem(4);
        let b = f.elem(7);
        let s = &a + &b;
        assert_eq!(&s - &b, a);
        assert_eq!(&(&a * &b) * &b.inv().unwrap(), a);
        assert_eq!(&a + &(-&a), f.elem(0));
        assert_eq!(a.pow(9), a);
    }

    #[test]
    fn prime_power_decomposition() {
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(power_of(1, 2), Some(0));
        assert_eq!(power_of(8, 2), Some(3));
        assert_eq!(power_of(6, 2), None);
    }
}
