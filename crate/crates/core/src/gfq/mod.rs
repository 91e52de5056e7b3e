//! Small finite fields and linear algebra over them.

mod enumerate;
mod field;
mod subspace;

pub use enumerate::{
    enumerate_subspaces, enumerate_subspaces_with_budget, projective_points, subspace_count,
    DEFAULT_SUBSPACE_BUDGET,
};
pub use field::{
    canonical_modulus, is_irreducible, is_prime, power_of, prime_power, Field, FieldSpec, FqElem,
    Regime, MAX_FIELD_ORDER, TABLE_FIELD_ORDER,
};
pub use subspace::{rref, Subspace};
