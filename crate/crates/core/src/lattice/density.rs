//! Normalized center density and the Minkowski-Hlawka bound.

use num_bigint::{BigInt, Sign};
use num_traits::{Float, FromPrimitive, Signed};
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

/// `log2 |x|` with 53 significant bits regardless of the size of `x`.
pub fn log2_bigint(x: &BigInt) -> f64 {
    let x = x.abs();
    let bits = x.bits();
    if bits <= 64 {
        let v: u64 = x.try_into().expect("fits");
        return (v as f64).log2();
    }
    let shift = bits - 64;
    let top: u64 = (x >> shift).try_into().expect("fits");
    (top as f64).log2() + shift as f64
}

/// `log2 delta = -log2(disc)/2 + (m/2) log2(min/4)`.
pub fn log2_center_density<F: Float + FromPrimitive>(log2_disc: F, rank: usize, min_norm: F) -> F {
    let half = F::from_f64(0.5).unwrap();
    let four = F::from_f64(4.0).unwrap();
    -half * log2_disc + F::from_usize(rank).unwrap() * half * (min_norm / four).log2()
}

/// `zeta(m)` for `m >= 2` by direct summation with an Euler-Maclaurin tail.
pub fn zeta(m: u32) -> f64 {
    assert!(m >= 2, "zeta needs m >= 2");
    let s = m as f64;
    let n_terms = 64u32;
    let mut sum = 0.0;
    for k in (1..n_terms).rev() {
        sum += (k as f64).powf(-s);
    }
    let n = n_terms as f64;
    // sum_{k >= N} k^{-s} ~ N^{1-s}/(s-1) + N^{-s}/2 + s N^{-s-1}/12 - ...
    sum + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0
}

/// `log2 V_m`, `V_m = pi^{m/2} / Gamma(m/2 + 1)`.
pub fn log2_unit_ball_volume(m: u32) -> f64 {
    let m = m as f64;
    (0.5 * m * std::f64::consts::PI.ln() - ln_gamma(0.5 * m + 1.0)) / std::f64::consts::LN_2
}

/// `log2(zeta(m) 2^{1-m} / V_m)`.
pub fn log2_mh_bound(m: u32) -> f64 {
    zeta(m).log2() + (1.0 - m as f64) - log2_unit_ball_volume(m)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityReport {
    pub rank: usize,
    #[serde(serialize_with = "crate::lattice::ser_bigint")]
    pub disc: BigInt,
    #[serde(serialize_with = "crate::lattice::ser_bigint")]
    pub min_norm: BigInt,
    pub delta: f64,
    pub log2_delta: f64,
    pub mh_bound: f64,
    pub log2_mh_bound: f64,
}

impl DensityReport {
    pub fn new(rank: usize, disc: &BigInt, min_norm: &BigInt) -> Self {
        assert!(disc.sign() != Sign::NoSign, "disc must be nonzero");
        let log2_delta = log2_center_density(log2_bigint(disc), rank, log2_to_value(min_norm));
        let log2_mh = log2_mh_bound(rank as u32);
        DensityReport {
            rank,
            disc: disc.clone(),
            min_norm: min_norm.clone(),
            delta: log2_delta.exp2(),
            log2_delta,
            mh_bound: log2_mh.exp2(),
            log2_mh_bound: log2_mh,
        }
    }
}

fn log2_to_value(x: &BigInt) -> f64 {
    log2_bigint(x).exp2()
}
