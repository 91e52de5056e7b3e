//! Cross-checks between the `e_P` frame, the intersection tables, and the
//! determinant formula for `H + M_0`.

use frobinc::chow::GramTables;
use frobinc::lattice::{
    build_h_plus_m0, build_mc, build_sigma_lattice, h_plus_m0_disc_formula, sigma_generators,
    SigmaFrame,
};
use frobinc::linalg;
use num_bigint::BigInt;
use num_traits::Zero;

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Pairing of `Sigma_Lambda - Sigma_Lambda0` and `Sigma_Lambda' - Sigma_Lambda0'`
/// from the intersection tables.
fn table_pairing(
    t: &GramTables,
    f: &SigmaFrame,
    (k, i): (usize, usize),
    (k2, j): (usize, usize),
) -> BigInt {
    let a = &f.subspaces[k - 1];
    let b = &f.subspaces[k2 - 1];
    let p = |x: &frobinc::gfq::Subspace, y: &frobinc::gfq::Subspace| {
        t.sigma_sigma_subspaces(x, y).unwrap()
    };
    p(&a[i], &b[j]) - p(&a[i], &b[0]) - p(&a[0], &b[j]) + p(&a[0], &b[0])
}

fn frame_matches_tables(n: usize, r: u64, s: u64, per_dim: usize) {
    let q = r * s;
    let frame = SigmaFrame::new(n, q, s).unwrap();
    let tables = GramTables::new(n, r, s);
    let gens = sigma_generators(&frame);
    let denom = frame.denom();
    let mut checked = 0;
    for k in 1..n {
        for k2 in 1..n {
            for i in 0..gens[k - 1].len().min(per_dim) {
                for j in 0..gens[k2 - 1].len().min(per_dim) {
                    let raw = dot(&gens[k - 1][i], &gens[k2 - 1][j]);
                    assert!((&raw % &denom).is_zero());
                    let frame_val = raw / &denom;
                    let want = table_pairing(&tables, &frame, (k, i + 1), (k2, j + 1));
                    let sign = if (n + k + k2) % 2 == 0 { 1 } else { -1 };
                    assert_eq!(frame_val * sign, want, "n={n} k={k} k'={k2} i={i} j={j}");
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn frame_matches_tables_surface() {
    frame_matches_tables(3, 2, 2, usize::MAX);
    frame_matches_tables(3, 1, 2, usize::MAX);
}

#[test]
fn frame_matches_tables_threefold() {
    frame_matches_tables(4, 2, 2, 25);
}

fn disc_via_sparse(n: usize, r: u64, s: u64) -> (usize, BigInt) {
    let (size, rows) = build_h_plus_m0(n, r, s).unwrap();
    let d = linalg::sparse_det(size, &rows);
    assert!(d.is_integer());
    (size, d.to_integer())
}

fn disc_via_bareiss(n: usize, r: u64, s: u64) -> BigInt {
    let (size, rows) = build_h_plus_m0(n, r, s).unwrap();
    let mut dense = vec![vec![BigInt::zero(); size]; size];
    for (i, row) in rows.iter().enumerate() {
        for (j, v) in row {
            dense[i][*j] = v.clone();
        }
    }
    linalg::det(&dense)
}

#[test]
fn h_plus_m0_matches_closed_form() {
    for n in 3..=5 {
        for (r, s) in [(2, 2), (2, 4), (4, 2)] {
            let (size, d) = disc_via_sparse(n, r, s);
            let want = h_plus_m0_disc_formula(n, r, s).unwrap();
            assert_eq!(d, want, "n={n} r={r} s={s}");
            if size <= 400 {
                assert_eq!(disc_via_bareiss(n, r, s), want, "n={n} r={r} s={s}");
            }
        }
    }
}

/// Dense cross-check at size 587; about a minute and a half.
#[test]
#[ignore]
fn h_plus_m0_bareiss_over_f8() {
    for (r, s) in [(2, 4), (4, 2)] {
        assert_eq!(
            disc_via_bareiss(4, r, s),
            h_plus_m0_disc_formula(4, r, s).unwrap()
        );
    }
}

#[test]
fn threefold_disc_sign_and_size() {
    // f(4) = 85 over F_4, so |disc| = 2^{2 * 84}.
    let d = h_plus_m0_disc_formula(4, 2, 2).unwrap();
    assert_eq!(d, -BigInt::from(2).pow(168));
}

#[test]
fn containment_chain() {
    let sigma = build_sigma_lattice(4, 4, 2).unwrap();
    let mc = build_mc(4, 4, 2).unwrap();
    for b in sigma.basis.as_ref().unwrap() {
        assert!(mc.contains(b));
    }
    // M_C sits in M^dual = Z^85 by construction; 8 M^dual sits in M_C.
    for p in 0..85 {
        let mut v = vec![BigInt::zero(); 85];
        v[p] = BigInt::from(8);
        assert!(mc.contains(&v));
        v[p] = BigInt::from(4);
        assert!(!mc.contains(&v));
    }
    let mut w = vec![BigInt::zero(); 85];
    w[0] = BigInt::from(4);
    w[1] = BigInt::from(-4);
    assert!(sigma.contains(&w) && mc.contains(&w));
    let sq: BigInt = w.iter().map(|x| x * x).sum();
    assert_eq!(sq / BigInt::from(4), BigInt::from(8));
}
