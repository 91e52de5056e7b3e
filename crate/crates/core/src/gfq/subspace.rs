use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::{Field, FieldSpec};
use crate::error::{Error, Result};

/// A linear subspace of `F^n`, stored as the reduced row-echelon matrix of a
/// basis. Two subspaces are equal exactly when their matrices are.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Field,
    n: usize,
    rows: Vec<Vec<u32>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rows == other.rows && *self.field == *other.field
    }
}

impl Eq for Subspace {}

impl std::hash::Hash for Subspace {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.rows.hash(state);
    }
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Dimension first, then lexicographic on the flattened canonical matrix.
impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then(self.rows.len().cmp(&other.rows.len()))
            .then_with(|| self.rows.cmp(&other.rows))
    }
}

/// Reduced row-echelon form in place; zero rows are dropped.
pub fn rref(field: &FieldSpec, rows: &mut Vec<Vec<u32>>) {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field.inv(rows[rank][col]).expect("nonzero pivot");
        if inv != 1 {
            for x in rows[rank][col..].iter_mut() {
                *x = field.mul(*x, inv);
            }
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col] == 0 {
                continue;
            }
            let factor = field.neg(row[col]);
            for (x, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                if pv != 0 {
                    *x = field.add(*x, field.mul(factor, pv));
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
}

impl Subspace {
    /// Row space of `rows`, each of length `n`.
    pub fn new(field: &Field, n: usize, rows: Vec<Vec<u32>>) -> Result<Self> {
        for r in &rows {
            if r.len() != n {
                return Err(Error::Dimension(format!(
                    "row of length {} in ambient dimension {n}",
                    r.len()
                )));
            }
            if r.iter().any(|&x| x >= field.order()) {
                return Err(Error::Parse(format!(
                    "element index out of range for {field}"
                )));
            }
        }
        Ok(Self::from_rows_unchecked(field, n, rows))
    }

    pub(crate) fn from_rows_unchecked(field: &Field, n: usize, mut rows: Vec<Vec<u32>>) -> Self {
        rref(field, &mut rows);
        Subspace {
            field: Arc::clone(field),
            n,
            rows,
        }
    }

    /// Wrap a matrix already known to be in reduced row-echelon form.
    pub(crate) fn from_canonical(field: &Field, n: usize, rows: Vec<Vec<u32>>) -> Self {
        Subspace {
            field: Arc::clone(field),
            n,
            rows,
        }
    }

    pub fn zero(field: &Field, n: usize) -> Self {
        Self::from_canonical(field, n, Vec::new())
    }

    pub fn full(field: &Field, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        Self::from_canonical(field, n, rows)
    }

    /// The line spanned by a nonzero vector.
    pub fn span_of(field: &Field, v: &[u32]) -> Result<Self> {
        Self::new(field, v.len(), vec![v.to_vec()])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .position(|&x| x != 0)
                    .expect("rref rows are nonzero")
            })
            .collect()
    }

    /// Flattened canonical matrix, the enumeration sort key.
    pub fn flattened(&self) -> Vec<u32> {
        self.rows.iter().flatten().copied().collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if *self.field != *other.field {
            return Err(Error::Dimension(format!(
                "subspaces over different fields {} and {}",
                self.field, other.field
            )));
        }
        if self.n != other.n {
            return Err(Error::Dimension(format!(
                "ambient dimensions {} and {} differ",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// Image under the `q`-th power Frobenius: entries of the canonical basis
    /// are raised to the `q`-th power and the result re-canonicalized.
    pub fn frobenius_image(&self, q: u64) -> Result<Subspace> {
        self.field.check_frobenius(q)?;
        Ok(self.frobenius_unchecked(q))
    }

    pub(crate) fn frobenius_unchecked(&self, q: u64) -> Subspace {
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| self.field.pow_frob(x, q)).collect())
            .collect();
        Self::from_rows_unchecked(&self.field, self.n, rows)
    }

    /// Whether the subspace is defined over `F_q`, i.e. fixed by the
    /// `q`-th power Frobenius.
    pub fn is_rational_over(&self, q: u64) -> Result<bool> {
        Ok(self.frobenius_image(q)? == *self)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.sum_unchecked(other))
    }

    pub(crate) fn sum_unchecked(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Self::from_rows_unchecked(&self.field, self.n, rows)
    }

    /// Intersection by the Zassenhaus algorithm.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        Ok(self.intersect_unchecked(other))
    }

    pub(crate) fn intersect_unchecked(&self, other: &Subspace) -> Subspace {
        let n = self.n;
        let mut m: Vec<Vec<u32>> = Vec::with_capacity(self.dim() + other.dim());
        for r in &self.rows {
            let mut row = r.clone();
            row.extend_from_slice(r);
            m.push(row);
        }
        for r in &other.rows {
            let mut row = r.clone();
            row.extend(std::iter::repeat(0).take(n));
            m.push(row);
        }
        rref(&self.field, &mut m);
        let basis = m
            .into_iter()
            .filter(|row| row[..n].iter().all(|&x| x == 0))
            .map(|row| row[n..].to_vec())
            .collect();
        Self::from_rows_unchecked(&self.field, n, basis)
    }

    /// Whether `v` lies in the subspace.
    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let f = &self.field;
        let mut w = v.to_vec();
        for (row, piv) in self.rows.iter().zip(self.pivots()) {
            let c = w[piv];
            if c == 0 {
                continue;
            }
            let neg = f.neg(c);
            for (x, &r) in w.iter_mut().zip(row) {
                if r != 0 {
                    *x = f.add(*x, f.mul(neg, r));
                }
            }
        }
        w.iter().all(|&x| x == 0)
    }

    /// Whether `other` is a subspace of `self`.
    pub fn contains(&self, other: &Subspace) -> bool {
        other.dim() <= self.dim() && other.rows.iter().all(|r| self.contains_vector(r))
    }

    /// Orthogonal complement for the standard bilinear form `sum x_i y_i`.
    pub fn orthogonal_complement(&self) -> Subspace {
        let f = &self.field;
        let pivots = self.pivots();
        let mut basis = Vec::with_capacity(self.n - self.dim());
        for free in (0..self.n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u32; self.n];
            v[free] = 1;
            for (row, &piv) in self.rows.iter().zip(&pivots) {
                v[piv] = f.neg(row[free]);
            }
            basis.push(v);
        }
        Self::from_rows_unchecked(f, self.n, basis)
    }

    /// Text form: a header `p k n d` followed by `d` rows of `n` element indices.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} {} {}\n",
            self.field.characteristic(),
            self.field.degree(),
            self.n,
            self.dim()
        );
        for r in &self.rows {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// Parse the text form; the field is built with its canonical modulus.
    pub fn from_text(text: &str) -> Result<Subspace> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty subspace description".into()))?;
        let nums = parse_numbers(header)?;
        let [p, k, n, d] = nums[..] else {
            return Err(Error::Parse(format!(
                "header must be `p k n d`, got `{header}`"
            )));
        };
        let field = FieldSpec::new(p, k)?;
        let mut rows = Vec::with_capacity(d as usize);
        for _ in 0..d {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("expected {d} rows")))?;
            rows.push(parse_numbers(line)?);
        }
        if lines.next().is_some() {
            return Err(Error::Parse("trailing data after subspace rows".into()));
        }
        let s = Subspace::new(&field, n as usize, rows)?;
        if s.dim() != d as usize {
            return Err(Error::Parse(format!(
                "rows span a space of dimension {}, header says {d}",
                s.dim()
            )));
        }
        Ok(s)
    }
}

fn parse_numbers(line: &str) -> Result<Vec<u32>> {
    line.split_whitespace()
        .map(|t| {
            t.parse::<u32>()
                .map_err(|e| Error::Parse(format!("bad integer `{t}`: {e}")))
        })
        .collect()
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r:?}")?;
        }
        write!(f, "> in {}^{}", self.field, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        FieldSpec::new(2, 2).unwrap()
    }

    #[test]
    fn canonical_form_is_unique() {
        let f = f4();
        let a = Subspace::new(&f, 3, vec![vec![1, 2, 0], vec![0, 1, 1]]).unwrap();
        let b = Subspace::new(&f, 3, vec![vec![1, 3, 1], vec![0, 3, 3]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.pivots(), vec![0, 1]);
    }

    #[test]
    fn frobenius_of_a_line() {
        let f = f4();
        // omega = x has index 2, omega^2 = x + 1 has index 3
        let s = Subspace::span_of(&f, &[1, 2, 0]).unwrap();
        let t = s.frobenius_image(2).unwrap();
        assert_eq!(t.rows(), &[vec![1, 3, 0]]);
        assert_eq!(s.frobenius_image(4).unwrap(), s);
        assert!(matches!(
            s.frobenius_image(3),
            Err(Error::InvalidFrobenius { q: 3, p: 2 })
        ));
        let rational = Subspace::span_of(&f, &[1, 1, 0]).unwrap();
        assert_eq!(rational.frobenius_image(2).unwrap(), rational);
    }

    #[test]
    fn idempotence() {
        let f = f4();
        let s = Subspace::new(&f, 4, vec![vec![1, 2, 3, 0], vec![0, 0, 1, 1]]).unwrap();
        assert_eq!(s.sum(&s).unwrap(), s);
        assert_eq!(s.intersect(&s).unwrap(), s);
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = f4();
        let a = Subspace::full(&f, 3);
        let b = Subspace::full(&f, 4);
        assert!(matches!(a.sum(&b), Err(Error::Dimension(_))));
        assert!(matches!(a.intersect(&b), Err(Error::Dimension(_))));
        let g = FieldSpec::new(2, 1).unwrap();
        assert!(a.sum(&Subspace::full(&g, 3)).is_err());
    }

    #[test]
    fn complement_and_containment() {
        let f = FieldSpec::new(3, 1).unwrap();
        let s = Subspace::new(&f, 4, vec![vec![1, 2, 0, 1]]).unwrap();
        let c = s.orthogonal_complement();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.orthogonal_complement(), s);
        assert!(Subspace::full(&f, 4).contains(&c));
        assert!(!s.contains(&c));
        assert!(c.contains_vector(&[1, 1, 0, 0]));
    }

    #[test]
    fn text_round_trip_and_errors() {
        let f = f4();
        let s = Subspace::new(&f, 4, vec![vec![1, 2, 3, 0], vec![0, 0, 1, 1]]).unwrap();
        let text = s.to_text();
        assert!(text.starts_with("2 2 4 2\n"));
        assert_eq!(Subspace::from_text(&text).unwrap(), s);
        assert!(Subspace::from_text("2 2 3 1\n1 2").is_err());
        assert!(Subspace::from_text("2 2 3 2\n1 2 0\n1 2 0").is_err());
        assert!(Subspace::from_text("2 2 3 1\n1 9 0").is_err());
    }
}
