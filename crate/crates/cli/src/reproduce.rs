//! End-to-end pipelines that recompute the headline numbers and compare them
//! against their expected values.

use clap::ValueEnum;
use frobinc::bruteforce::{count_points, formula_count, CountOptions};
use frobinc::codes::{certify_min_norm, check_certificate, macwilliams, CodeZ8, WeightEnum};
use frobinc::lattice::{build_mc, build_sigma_lattice, decompose_n, DensityReport, SigmaFrame};
use frobinc::poly::Poly1;
use frobinc::polycount::betti;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::config::Config;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    K3Surface,
    BettiN7,
    #[value(name = "dense-84")]
    Dense84,
    #[value(name = "dense-85")]
    Dense85,
}

impl Target {
    fn name(self) -> &'static str {
        match self {
            Target::K3Surface => "k3-surface",
            Target::BettiN7 => "betti-n7",
            Target::Dense84 => "dense-84",
            Target::Dense85 => "dense-85",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// Named multi-line outputs shown alongside the checks.
#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub name: String,
    pub lines: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub target: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub sections: Vec<Section>,
}

impl Report {
    fn new(target: Target) -> Self {
        Report {
            target: target.name().to_string(),
            pass: true,
            checks: Vec::new(),
            sections: Vec::new(),
        }
    }

    fn check(&mut self, name: impl Into<String>, expected: impl ToString, computed: impl ToString) {
        let (expected, computed) = (expected.to_string(), computed.to_string());
        let pass = expected == computed;
        self.pass &= pass;
        self.checks.push(Check {
            name: name.into(),
            expected,
            computed,
            pass,
        });
    }

    fn section(&mut self, name: &str, text: &str) {
        self.sections.push(Section {
            name: name.to_string(),
            lines: text.lines().map(str::to_string).collect(),
        });
    }

    /// Plain-text rendering; failed checks get a `-expected` / `+computed`
    /// diff.
    pub fn to_text(&self) -> String {
        let mut out = format!("reproduce {}\n", self.target);
        for c in &self.checks {
            if c.pass {
                out.push_str(&format!("PASS {}: {}\n", c.name, c.computed));
            } else {
                out.push_str(&format!(
                    "FAIL {}\n- {}\n+ {}\n",
                    c.name, c.expected, c.computed
                ));
            }
        }
        for s in &self.sections {
            out.push_str(&format!("[{}]\n", s.name));
            for l in &s.lines {
                out.push_str(l);
                out.push('\n');
            }
        }
        let failed = self.checks.iter().filter(|c| !c.pass).count();
        out.push_str(&match failed {
            0 => format!("all {} checks passed\n", self.checks.len()),
            f => format!("{f} of {} checks failed\n", self.checks.len()),
        });
        out
    }
}

/// `x` cut (not rounded) to three decimals, as the values are usually quoted.
fn truncated3(x: f64) -> String {
    format!("{:.3}", (x * 1000.0).floor() / 1000.0)
}

fn p1(c: &[i64]) -> Poly1<BigInt> {
    Poly1::new(c.iter().map(|&x| BigInt::from(x)).collect())
}

pub fn run(target: Target, cfg: &Config) -> frobinc::Result<Report> {
    let mut rep = Report::new(target);
    match target {
        Target::K3Surface => k3_surface(&mut rep, cfg)?,
        Target::BettiN7 => betti_n7(&mut rep)?,
        Target::Dense84 => dense_84(&mut rep, cfg)?,
        Target::Dense85 => dense_85(&mut rep, cfg)?,
    }
    Ok(rep)
}

fn k3_surface(rep: &mut Report, cfg: &Config) -> frobinc::Result<()> {
    let opts = CountOptions {
        naive: false,
        max_pairs: cfg.max_pairs,
    };
    for (nu, want) in [(1, 105), (2, 609)] {
        rep.check(
            format!("count nu={nu}"),
            want,
            count_points(3, 1, 1, 2, 2, nu, opts)?,
        );
        rep.check(
            format!("formula nu={nu}"),
            want,
            formula_count(3, 1, 1, 2, 2, nu)?,
        );
    }
    let t = betti(3, 1, 1, 2, 2)?;
    rep.check("b2", 22, &t.b[1]);
    rep.check("betti table", "1 22 1", join(&t.b));
    Ok(())
}

fn join(v: &[BigInt]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn betti_n7(rep: &mut Report) -> frobinc::Result<()> {
    let six = |k: i64, c: i64| p1(&[c, k, k, k, k, k, k]);
    let half = [
        p1(&[1]),
        p1(&[2]),
        p1(&[5]),
        six(1, 8),
        six(2, 12),
        six(3, 14),
        p1(&[16, 4, 5, 5, 6, 6, 6, 2, 2, 1, 1]),
    ];
    // Only q = rs enters, so one admissible pair covers all of them.
    let t = betti(7, 2, 2, 1, 2)?;
    rep.check("dim", 12, t.dim());
    for i in 0..=12usize {
        let want = half.get(i.min(12 - i)).expect("index within half table");
        let got = t.symbolic.get(i).map(|p| p.to_string()).unwrap_or_default();
        rep.check(format!("b{}", 2 * i), want, got);
    }
    Ok(())
}

fn min_norm_denom(n: usize, q: u64, s: u64) -> frobinc::Result<u64> {
    SigmaFrame::new(n, q, s)?
        .denom()
        .to_u64()
        .ok_or_else(|| frobinc::Error::Domain("frame denominator too large".into()))
}

fn dense_84(rep: &mut Report, cfg: &Config) -> frobinc::Result<()> {
    let sigma = build_sigma_lattice(4, 4, 2)?;
    let sum = sigma.summary()?;
    rep.check("rank", 84, sum.rank);
    rep.check("disc", 5570560, &sum.disc);
    rep.check("even", true, sum.even);
    rep.check("positive definite", true, sum.positive_definite);

    let d = decompose_n(4, 2, 2)?;
    rep.check("N_Sigma = N_prim", true, d.sigma_equals_prim);
    rep.check("N_prim disc", 5570560, d.prim.disc()?);

    let code = CodeZ8::from_lattice(&build_mc(4, 4, 2)?)?;
    let cert = certify_min_norm(&sigma, &code, min_norm_denom(4, 4, 2)?, cfg.max_code_dim)?;
    check_certificate(&cert, &sigma)?;
    rep.check("min_norm", 8, cert.min_norm);

    let dens = DensityReport::new(84, &sum.disc, &BigInt::from(cert.min_norm));
    rep.check("log2 density", "30.795", truncated3(dens.log2_delta));
    rep.check(
        "log2 Minkowski-Hlawka bound",
        "17.546",
        truncated3(dens.log2_mh_bound),
    );
    Ok(())
}

fn dense_85(rep: &mut Report, cfg: &Config) -> frobinc::Result<()> {
    let mc = build_mc(4, 4, 2)?;
    let sum = mc.summary()?;
    rep.check("rank", 85, sum.rank);
    rep.check("disc", 1048576, &sum.disc);
    rep.check("even", true, sum.even);

    let code = CodeZ8::from_lattice(&mc)?;
    let [g0, g1, g2] = code.filtration()?;
    rep.check("dim Gamma_0", 16, g0.dim());
    rep.check("dim Gamma_1", 60, g1.dim());
    rep.check("dim Gamma_2", 84, g2.dim());

    let e0 = g0.weight_enumerator_direct(cfg.max_code_dim)?;
    let want0 = "0 1\n32 3570\n40 38080\n48 23800\n64 85\n";
    rep.check(
        "Gamma_0 enumerator",
        want0.trim_end().replace('\n', ", "),
        e0.to_lines().trim_end().replace('\n', ", "),
    );
    rep.section("Gamma_0 enumerator", &e0.to_lines());

    let dual = g1.dual();
    let ed = dual.weight_enumerator_direct(cfg.max_code_dim)?;
    let e1: WeightEnum = macwilliams(&ed, dual.dim(), 85)?;
    for (w, c) in [
        (8, 17850u64),
        (10, 45696),
        (12, 8020600),
        (14, 229785600),
        (16, 4668633585),
        (74, 1142400),
        (76, 23800),
        (80, 357),
    ] {
        rep.check(format!("Gamma_1 weight {w}"), c, &e1.coeffs[w]);
    }
    rep.section("Gamma_1 dual enumerator", &ed.to_lines());

    let cert = certify_min_norm(&mc, &code, min_norm_denom(4, 4, 2)?, cfg.max_code_dim)?;
    check_certificate(&cert, &mc)?;
    rep.check("min_norm", 8, cert.min_norm);

    let dens = DensityReport::new(85, &sum.disc, &BigInt::from(cert.min_norm));
    rep.check("log2 density", "32.500", truncated3(dens.log2_delta));
    rep.check(
        "log2 Minkowski-Hlawka bound",
        "18.429",
        truncated3(dens.log2_mh_bound),
    );
    Ok(())
}
