//! Binary linear codes of length at most 128, packed one word per codeword.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest length a packed codeword can hold.
pub const MAX_LENGTH: usize = 128;

/// Default cap on the dimension for direct enumeration (`2^26` words).
pub const DEFAULT_MAX_DIM: usize = 26;

fn mask(length: usize) -> u128 {
    if length == MAX_LENGTH {
        u128::MAX
    } else {
        (1u128 << length) - 1
    }
}

/// A binary code with its generator matrix in reduced row echelon form.
/// Bit `i` of a word is coordinate `i`; the pivot of a row is its lowest bit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CodeF2 {
    length: usize,
    rows: Vec<u128>,
}

impl CodeF2 {
    /// Span of `words`.
    pub fn new(length: usize, words: impl IntoIterator<Item = u128>) -> Result<Self> {
        if length > MAX_LENGTH {
            return Err(Error::Domain(format!(
                "length {length} exceeds {MAX_LENGTH}"
            )));
        }
        let m = mask(length);
        let mut rows: Vec<u128> = Vec::new();
        for w in words {
            if w & !m != 0 {
                return Err(Error::Dimension(format!(
                    "word has bits beyond length {length}"
                )));
            }
            let mut w = w;
            for r in &rows {
                if w >> r.trailing_zeros() & 1 == 1 {
                    w ^= r;
                }
            }
            if w == 0 {
                continue;
            }
            let p = w.trailing_zeros();
            for r in rows.iter_mut() {
                if *r >> p & 1 == 1 {
                    *r ^= w;
                }
            }
            rows.push(w);
        }
        rows.sort_by_key(|r| r.trailing_zeros());
        Ok(CodeF2 { length, rows })
    }

    /// Span of 0/1 vectors (any odd entry counts as 1).
    pub fn from_vectors(length: usize, vectors: &[Vec<u8>]) -> Result<Self> {
        let words = vectors
            .iter()
            .map(|v| {
                if v.len() != length {
                    return Err(Error::Dimension(format!(
                        "vector of length {} in a code of length {length}",
                        v.len()
                    )));
                }
                Ok(pack(v))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(length, words)
    }

    pub fn zero(length: usize) -> Result<Self> {
        Self::new(length, [])
    }

    pub fn full(length: usize) -> Result<Self> {
        Self::new(length, (0..length).map(|i| 1u128 << i))
    }

    /// `{x : x_0 + ... + x_{n-1} = 0}`.
    pub fn even_weight(length: usize) -> Result<Self> {
        Self::new(length, (1..length).map(|i| 1u128 | 1u128 << i))
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Generator rows in reduced row echelon form.
    pub fn rows(&self) -> &[u128] {
        &self.rows
    }

    pub fn contains(&self, word: u128) -> bool {
        let mut w = word;
        for r in &self.rows {
            if w >> r.trailing_zeros() & 1 == 1 {
                w ^= r;
            }
        }
        w == 0
    }

    /// Orthogonal complement under the standard inner product.
    pub fn dual(&self) -> CodeF2 {
        let pivots: u128 = self.rows.iter().map(|r| 1u128 << r.trailing_zeros()).sum();
        let words = (0..self.length).filter(|&f| pivots >> f & 1 == 0).map(|f| {
            let mut v = 1u128 << f;
            for r in &self.rows {
                if r >> f & 1 == 1 {
                    v |= 1u128 << r.trailing_zeros();
                }
            }
            v
        });
        CodeF2::new(self.length, words).expect("dual words fit the length")
    }

    /// Whether `other` is a subcode.
    pub fn includes(&self, other: &CodeF2) -> bool {
        other.rows.iter().all(|&r| self.contains(r))
    }

    /// Weight distribution by enumerating every codeword.
    pub fn weight_enumerator_direct(&self, max_dim: usize) -> Result<WeightEnum> {
        let k = self.dim();
        if k > max_dim {
            return Err(Error::Capacity {
                what: format!(
                    "direct enumeration of a dimension-{k} code (use the MacWilliams route via the dual)"
                ),
                required: 1u128 << k.min(127),
                budget: 1u128 << max_dim.min(127),
            });
        }
        let counts = gray_histogram(&self.rows, self.length);
        Ok(WeightEnum {
            coeffs: counts.into_iter().map(BigInt::from).collect(),
        })
    }

    /// Weight distribution, enumerating whichever of the code and its dual is
    /// smaller and transforming when needed.
    pub fn weight_enumerator(&self, max_dim: usize) -> Result<WeightEnum> {
        if self.dim() <= max_dim || self.dim() * 2 <= self.length {
            return self.weight_enumerator_direct(max_dim);
        }
        let d = self.dual();
        let e = d.weight_enumerator_direct(max_dim)?;
        macwilliams(&e, d.dim(), self.length)
    }
}

/// Packs a 0/1 vector (odd entries are 1) into a word.
pub fn pack(v: &[u8]) -> u128 {
    v.iter()
        .enumerate()
        .filter(|(_, &x)| x & 1 == 1)
        .fold(0u128, |w, (i, _)| w | 1u128 << i)
}

pub fn unpack(w: u128, length: usize) -> Vec<u8> {
    (0..length).map(|i| (w >> i & 1) as u8).collect()
}

/// Histogram of weights over the span of independent `rows`. The top bits of
/// the coefficient space are split across threads; each thread walks its
/// coset in Gray-code order.
fn gray_histogram(rows: &[u128], length: usize) -> Vec<u64> {
    let k = rows.len();
    let split = k.min(8);
    let (low, high) = rows.split_at(k - split);
    (0u64..1 << split)
        .into_par_iter()
        .map(|chunk| {
            let mut hist = vec![0u64; length + 1];
            let mut w = high
                .iter()
                .enumerate()
                .filter(|(i, _)| chunk >> i & 1 == 1)
                .fold(0u128, |acc, (_, r)| acc ^ r);
            hist[w.count_ones() as usize] += 1;
            for i in 1u64..1 << low.len() {
                w ^= low[i.trailing_zeros() as usize];
                hist[w.count_ones() as usize] += 1;
            }
            hist
        })
        .reduce(
            || vec![0u64; length + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )
}

/// Weight distribution `coeffs[w] = #{codewords of weight w}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightEnum {
    #[serde(serialize_with = "ser_coeffs")]
    pub coeffs: Vec<BigInt>,
}

fn ser_coeffs<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match x.to_u64() {
            Some(u) => seq.serialize_element(&u)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl WeightEnum {
    pub fn length(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Smallest nonzero weight that occurs, if any.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..self.coeffs.len()).find(|&w| !self.coeffs[w].is_zero())
    }

    pub fn nonzero_terms(&self) -> Vec<(usize, BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(w, c)| (w, c.clone()))
            .collect()
    }

    /// "weight count" lines for the nonzero coefficients.
    pub fn to_lines(&self) -> String {
        self.nonzero_terms()
            .iter()
            .map(|(w, c)| format!("{w} {c}\n"))
            .collect()
    }

    /// Inverse of [`WeightEnum::to_lines`] for a code of the given length.
    pub fn parse_lines(text: &str, length: usize) -> Result<Self> {
        let mut coeffs = vec![BigInt::zero(); length + 1];
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let bad = || Error::Parse(format!("line {}: expected 'weight count'", lineno + 1));
            let w: usize = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            let c: BigInt = it.next().ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if it.next().is_some() || w > length {
                return Err(bad());
            }
            coeffs[w] += c;
        }
        Ok(WeightEnum { coeffs })
    }
}

/// Rows `0..=n` of Pascal's triangle.
fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for a in 0..=n {
        let mut row = vec![BigInt::one(); a + 1];
        for b in 1..a {
            row[b] = &rows[a - 1][b - 1] + &rows[a - 1][b];
        }
        rows.push(row);
    }
    rows
}

/// Enumerator of the dual of a `dim`-dimensional code of length `length`
/// with enumerator `e`: `2^{-dim} (1+x)^length E((1-x)/(1+x))`.
pub fn macwilliams(e: &WeightEnum, dim: usize, length: usize) -> Result<WeightEnum> {
    if e.coeffs.len() != length + 1 {
        return Err(Error::Dimension(format!(
            "enumerator has {} coefficients for length {length}",
            e.coeffs.len()
        )));
    }
    let size = BigInt::one() << dim;
    if !e.coeffs[0].is_one() || e.total() != size {
        return Err(Error::Consistency(format!(
            "enumerator is not that of a {dim}-dimensional code"
        )));
    }
    let pascal = pascal(length);
    let binom = |a: usize, b: usize| -> &BigInt { &pascal[a][b] };
    let coeffs: Vec<BigInt> = (0..=length)
        .into_par_iter()
        .map(|j| {
            // Krawtchouk sum: coefficient of x^j in (1-x)^i (1+x)^{n-i}.
            let mut acc = BigInt::zero();
            for (i, a) in e.coeffs.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let mut k = BigInt::zero();
                for h in j.saturating_sub(length - i)..=j.min(i) {
                    let t = binom(i, h) * binom(length - i, j - h);
                    if h % 2 == 0 {
                        k += t;
                    } else {
                        k -= t;
                    }
                }
                acc += a * k;
            }
            acc
        })
        .collect();
    let mut out = Vec::with_capacity(coeffs.len());
    for (j, c) in coeffs.into_iter().enumerate() {
        let (q, r) = num_integer::Integer::div_rem(&c, &size);
        if !r.is_zero() || q.is_negative() {
            return Err(Error::Consistency(format!(
                "MacWilliams transform has non-integral coefficient at weight {j}"
            )));
        }
        out.push(q);
    }
    Ok(WeightEnum { coeffs: out })
}
