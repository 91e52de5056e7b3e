//! Binary and `Z/8Z` codes attached to the cycle lattices, with weight
//! enumerators and a minimal-norm certificate.

mod f2;
mod z8;

pub use f2::{macwilliams, pack, unpack, CodeF2, WeightEnum, DEFAULT_MAX_DIM, MAX_LENGTH};
pub use z8::{
    certify_min_norm, check_certificate, CertificateBranch, CodeZ8, MinNormCertificate, LEVELS,
};
