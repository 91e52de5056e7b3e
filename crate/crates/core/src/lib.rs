//! Exact computations on Frobenius incidence varieties over finite fields:
//! point-count polynomials, Betti numbers, intersection numbers of cycles,
//! the resulting integer lattices, and the codes used to certify their
//! minimal norms.

pub mod bruteforce;
pub mod chow;
pub mod codes;
pub mod error;
pub mod gfq;
pub mod lattice;
pub mod linalg;
pub mod poly;
pub mod polycount;
pub mod scalar;

pub use error::{Error, Result};

use num_bigint::BigInt;

/// Univariate polynomial with arbitrary-precision coefficients.
pub type IntPoly1 = poly::Poly1<BigInt>;
/// Bivariate polynomial with arbitrary-precision coefficients.
pub type IntPoly2 = poly::Poly2<BigInt>;
