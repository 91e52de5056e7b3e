//! The Z/8 code of the rank-84 lattice, its filtration codes, their weight
//! enumerators, and the minimal-norm certificate.

use std::path::PathBuf;
use std::sync::OnceLock;

use frobinc::codes::{
    certify_min_norm, check_certificate, macwilliams, CodeF2, CodeZ8, WeightEnum, DEFAULT_MAX_DIM,
};
use frobinc::lattice::{build_mc, build_sigma_lattice, IntLattice};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

struct Setup {
    sigma: IntLattice,
    mc: IntLattice,
    code: CodeZ8,
    gammas: [CodeF2; 3],
}

fn setup() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let sigma = build_sigma_lattice(4, 4, 2).unwrap();
        let mc = build_mc(4, 4, 2).unwrap();
        let code = CodeZ8::from_lattice(&sigma).unwrap();
        let gammas = code.filtration().unwrap();
        Setup {
            sigma,
            mc,
            code,
            gammas,
        }
    })
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

fn terms(e: &WeightEnum) -> Vec<(usize, u64)> {
    e.nonzero_terms()
        .into_iter()
        .map(|(w, c)| (w, u64::try_from(c).unwrap()))
        .collect()
}

#[test]
fn filtration_dimensions() {
    let s = setup();
    let [g0, g1, g2] = &s.gammas;
    assert_eq!((g0.dim(), g1.dim(), g2.dim()), (16, 60, 84));
    assert_eq!(*g2, CodeF2::even_weight(85).unwrap());
    assert_eq!(g0.dim() + g1.dim() + g2.dim(), s.code.log2_size());
    // |C| = |M_C / 8 M^dual| = 8^85 / [Z^85 : M_C].
    assert_eq!(CodeZ8::from_lattice(&s.mc).unwrap(), s.code);
    assert_eq!(s.code.lift(), s.mc.basis.as_ref().unwrap());
    // The filtration is nested: Gamma_0 in Gamma_1 in Gamma_2.
    assert!(g1.includes(g0) && g2.includes(g1));
}

#[test]
fn gamma0_enumerator() {
    let e = setup().gammas[0]
        .weight_enumerator_direct(DEFAULT_MAX_DIM)
        .unwrap();
    assert_eq!(
        terms(&e),
        vec![(0, 1), (32, 3570), (40, 38080), (48, 23800), (64, 85)]
    );
}

#[test]
fn gamma1_dual_matches_fixture() {
    let dir = data_dir();
    let text = std::fs::read_to_string(dir.join("gamma1_dual_enumerator.txt")).unwrap();
    let sums = std::fs::read_to_string(dir.join("SHA256SUMS")).unwrap();
    let recorded = sums
        .lines()
        .find(|l| l.ends_with("gamma1_dual_enumerator.txt"))
        .and_then(|l| l.split_whitespace().next())
        .unwrap();
    assert_eq!(hex::encode(Sha256::digest(text.as_bytes())), recorded);

    let d = setup().gammas[1].dual();
    assert_eq!(d.dim(), 25);
    let direct = d.weight_enumerator_direct(DEFAULT_MAX_DIM).unwrap();
    assert_eq!(direct, WeightEnum::parse_lines(&text, 85).unwrap());
    assert_eq!(direct.to_lines(), text);
}

#[test]
fn gamma1_enumerator_via_macwilliams() {
    let text = std::fs::read_to_string(data_dir().join("gamma1_dual_enumerator.txt")).unwrap();
    let dual = WeightEnum::parse_lines(&text, 85).unwrap();
    let e = macwilliams(&dual, 25, 85).unwrap();
    let printed: [(usize, u64); 9] = [
        (0, 1),
        (8, 17850),
        (10, 45696),
        (12, 8020600),
        (14, 229785600),
        (16, 4668633585),
        (74, 1142400),
        (76, 23800),
        (80, 357),
    ];
    for (w, c) in printed {
        assert_eq!(e.coeffs[w], BigInt::from(c), "weight {w}");
    }
    assert_eq!(e.total(), BigInt::from(1u8) << 60);
    assert_eq!(e.min_nonzero_weight(), Some(8));
    // Nothing above 80 and nothing odd.
    assert!(e.coeffs[81..].iter().all(|c| *c == BigInt::from(0)));
    assert!(e
        .coeffs
        .iter()
        .skip(1)
        .step_by(2)
        .all(|c| *c == BigInt::from(0)));
}

#[test]
fn random_subcodes_of_gamma1_dual() {
    let d = setup().gammas[1].dual();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f20b);
    for _ in 0..10 {
        let k = rng.gen_range(1..=12);
        let words: Vec<u128> = (0..k)
            .map(|_| {
                d.rows()
                    .iter()
                    .filter(|_| rng.gen_bool(0.5))
                    .fold(0u128, |a, r| a ^ r)
            })
            .collect();
        let sub = CodeF2::new(85, words).unwrap();
        assert!(d.includes(&sub));
        let e = sub.weight_enumerator_direct(DEFAULT_MAX_DIM).unwrap();
        let perp = macwilliams(&e, sub.dim(), 85).unwrap();
        assert_eq!(perp.total(), BigInt::from(1u8) << (85 - sub.dim()));
        assert_eq!(macwilliams(&perp, 85 - sub.dim(), 85).unwrap(), e);
    }
}

#[test]
fn certificate_for_mc() {
    let s = setup();
    let cert = certify_min_norm(&s.mc, &s.code, 4, DEFAULT_MAX_DIM).unwrap();
    assert_eq!(cert.min_norm, 8);
    let bounds: Vec<Option<u64>> = cert.branches.iter().map(|b| b.norm_bound).collect();
    assert_eq!(bounds, vec![Some(8), Some(8), Some(8), Some(16)]);
    let weights: Vec<Option<usize>> = cert.branches.iter().map(|b| b.min_weight).collect();
    assert_eq!(weights, vec![Some(32), Some(8), Some(2), Some(1)]);
    check_certificate(&cert, &s.mc).unwrap();
    // The witness also lies in N_Sigma, so the sublattice has minimum 8 too.
    let w: Vec<BigInt> = cert.witness.iter().map(|&x| BigInt::from(x)).collect();
    assert!(s.sigma.contains(&w));
    let json = serde_json::to_string(&cert).unwrap();
    assert!(json.contains("\"min_norm\":8"));
}

#[test]
fn certificate_for_sigma_lattice() {
    let s = setup();
    let cert = certify_min_norm(&s.sigma, &s.code, 4, DEFAULT_MAX_DIM).unwrap();
    assert_eq!(cert.min_norm, 8);
    check_certificate(&cert, &s.sigma).unwrap();
}
