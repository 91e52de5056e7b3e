//! Scalar traits shared by the generic algebra in this crate.
//!
//! Polynomials and power series only need a commutative ring; exact lattice
//! algorithms (fraction-free elimination, Hermite normal form) need a
//! Euclidean integer type. Both are satisfied by `i64`, `i128` and
//! [`num_bigint::BigInt`]; floating-point code is generic over
//! [`num_traits::Float`].

use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// A commutative ring with identity.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// An exact, signed, Euclidean integer type.
pub trait IntScalar: Ring + Integer + Signed + FromPrimitive + ToPrimitive + Display {}

impl<T> IntScalar for T where T: Ring + Integer + Signed + FromPrimitive + ToPrimitive + Display {}

/// Convert a small integer literal into any scalar.
pub fn lit<T: FromPrimitive>(v: i64) -> T {
    T::from_i64(v).expect("literal fits scalar type")
}
