//! `frobinc`: command-line access to point counts, Betti numbers,
//! intersection numbers, cycle lattices and their codes.

mod config;
mod reproduce;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use frobinc::bruteforce::{count_and_compare, CountOptions};
use frobinc::chow::CyclePair;
use frobinc::codes::{certify_min_norm, check_certificate, unpack, CodeZ8, WeightEnum};
use frobinc::gfq::Subspace;
use frobinc::lattice::{
    build_mc, build_n_and_prim, build_sigma_lattice, intersection_matrix, log2_mh_bound,
    parse_gram, write_gram, DensityReport, IntLattice, SigmaFrame,
};
use frobinc::polycount::{betti, check_frobenius_pair, count_poly, tau};
use frobinc::IntPoly2;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use config::Config;
use reproduce::Target;

#[derive(Parser, Debug)]
#[command(
    name = "frobinc",
    version,
    about = "Exact computations on Frobenius incidence varieties"
)]
struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    /// Config file (flat key = value). Defaults to $FROBINC_CONFIG, then ./frobinc.conf.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Worker threads (0 = one per core). Overrides the config file.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Copy)]
struct Variety {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: u64,
    #[arg(long)]
    s: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Even Betti numbers b_0, b_2, ... of X[r,s]_l^c.
    Betti {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        c: i64,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        /// Also print each Betti number as a polynomial in q = rs.
        #[arg(long)]
        symbolic: bool,
    },
    /// The stratum polynomial tau_{l,d}(x, y) for ambient dimension n.
    Tau {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        d: i64,
    },
    /// The point-count polynomial N_l^c(x, y).
    Npoly {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        l: i64,
        #[arg(long)]
        c: i64,
    },
    /// Count rational points by enumeration and compare with the formula.
    Count {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        l: usize,
        #[arg(long)]
        c: usize,
        #[arg(long)]
        r: u64,
        #[arg(long)]
        s: u64,
        #[arg(long, default_value_t = 1)]
        nu: u32,
        /// Test every pair (L, M) instead of counting M in closed form.
        #[arg(long)]
        naive: bool,
        /// Cap on the number of (L, M) pairs. Overrides the config file.
        #[arg(long)]
        max_pairs: Option<u128>,
    },
    /// Intersection number of two cycles Sigma_Lambda in relative position
    /// (m, k), or of two cycles given as subspace files.
    Intersect {
        #[command(flatten)]
        v: Variety,
        /// dim(Lambda ∩ Lambda').
        #[arg(long, required_unless_present = "lambda")]
        m: Option<usize>,
        /// n - dim(Lambda + Lambda').
        #[arg(long, required_unless_present = "lambda")]
        k: Option<usize>,
        /// l = c for the variety X[r,s]_l^l.
        #[arg(long, default_value_t = 1)]
        l: usize,
        /// First subspace, in the `p k n d` text format.
        #[arg(long, requires = "lambda2", conflicts_with_all = ["m", "k"], value_name = "FILE")]
        lambda: Option<PathBuf>,
        /// Second subspace.
        #[arg(long, requires = "lambda", value_name = "FILE")]
        lambda2: Option<PathBuf>,
    },
    /// Intersection matrix of h_1..h_{n-1} and every Sigma_Lambda.
    Gram {
        #[command(flatten)]
        v: Variety,
        /// Field size of the cycles; must equal rs if given.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Build lattices and read invariants off Gram files.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// The Z/8 code of the cycle lattice and its binary filtration.
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Recompute a headline result and compare with the expected values.
    Reproduce {
        #[arg(value_enum)]
        target: Target,
    },
    /// Center density of a lattice from rank, discriminant and minimal norm.
    Density {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        disc: BigInt,
        #[arg(long)]
        min_norm: BigInt,
    },
    /// Minkowski-Hlawka lower bound on the best center density in a rank.
    MhBound {
        #[arg(long)]
        rank: u32,
    },
}

#[derive(Subcommand, Debug)]
enum LatticeCmd {
    /// N_Sigma, spanned by differences of cycles of equal dimension.
    BuildSigma {
        #[command(flatten)]
        v: Variety,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// N(X), or [-1]^n N_prim(X) with --prim.
    BuildN {
        #[command(flatten)]
        v: Variety,
        #[arg(long)]
        prim: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// M_C = N_Sigma + s^{n-1} M^dual.
    BuildMc {
        #[command(flatten)]
        v: Variety,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Discriminant (determinant of the Gram matrix).
    Disc {
        #[arg(long, value_name = "FILE")]
        gram: PathBuf,
    },
    /// Whether every vector has even norm.
    Even {
        #[arg(long, value_name = "FILE")]
        gram: PathBuf,
    },
    /// Center density and the Minkowski-Hlawka bound.
    Density {
        #[arg(long, value_name = "FILE")]
        gram: PathBuf,
        #[arg(long)]
        min_norm: BigInt,
    },
}

#[derive(Args, Debug, Clone, Copy)]
struct CodeVariety {
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    r: u64,
    #[arg(long, default_value_t = 2)]
    s: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Level {
    #[value(name = "0")]
    L0,
    #[value(name = "1")]
    L1,
    #[value(name = "1dual")]
    L1Dual,
    #[value(name = "2")]
    L2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CertTarget {
    Mc,
    Sigma,
}

#[derive(Subcommand, Debug)]
enum CodeCmd {
    /// Dimensions (and optionally generators) of Gamma_0, Gamma_1, Gamma_2.
    Filtration {
        #[command(flatten)]
        v: CodeVariety,
        #[arg(long)]
        generators: bool,
    },
    /// Weight enumerator as `weight count` lines.
    Weights {
        #[command(flatten)]
        v: CodeVariety,
        #[arg(long, value_enum)]
        level: Level,
    },
    /// Minimal-norm certificate.
    Certify {
        #[command(flatten)]
        v: CodeVariety,
        #[arg(long, value_enum, default_value = "mc")]
        lattice: CertTarget,
    },
}

enum Failure {
    /// Bad input or configuration: exit code 2.
    Usage(String),
    /// A computation failed: exit code 1.
    Run(String),
    /// The output was produced but reports a mismatch: exit code 1.
    Mismatch,
}

impl From<frobinc::Error> for Failure {
    fn from(e: frobinc::Error) -> Self {
        match e {
            frobinc::Error::Parse(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

type CmdResult = Result<(), Failure>;

struct Out {
    json: bool,
    digits: usize,
}

impl Out {
    fn emit(&self, text: impl FnOnce() -> String, value: impl FnOnce() -> Value) {
        if self.json {
            println!(
                "{}",
                serde_json::to_string(&value()).expect("JSON values serialize")
            );
        } else {
            print!("{}", text());
        }
    }

    fn float(&self, x: f64) -> String {
        format_significant(x, self.digits)
    }
}

fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return x.to_string();
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Integers as JSON numbers when they fit in 64 bits, strings otherwise.
fn jint(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

fn jints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(jint).collect())
}

fn poly2_terms(p: &IntPoly2) -> Value {
    Value::Array(
        p.terms_deglex()
            .iter()
            .map(|(a, b, c)| json!({"coeff": jint(c), "x": a, "y": b}))
            .collect(),
    )
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn lattice_from_file(path: &Path) -> Result<IntLattice, Failure> {
    let gram = parse_gram(&read_file(path)?)?;
    Ok(IntLattice::from_gram(gram, path.display().to_string())?)
}

fn enumerator_json(e: &WeightEnum) -> Value {
    Value::Array(
        e.nonzero_terms()
            .iter()
            .map(|(w, c)| json!([w, jint(c)]))
            .collect(),
    )
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let mut cfg = match Config::load(cli.config.as_deref()) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(t) = cli.threads {
        cfg.threads = t;
    }
    if cfg.threads > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build_global();
    }
    let out = Out {
        json: cli.json,
        digits: cfg.decimal_digits(),
    };
    match run(cli.command, &cfg, &out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Mismatch) => ExitCode::from(1),
    }
}

fn run(cmd: Command, cfg: &Config, out: &Out) -> CmdResult {
    match cmd {
        Command::Betti {
            n,
            l,
            c,
            r,
            s,
            symbolic,
        } => {
            let t = betti(n, l, c, r, s)?;
            out.emit(
                || {
                    t.b.iter()
                        .zip(&t.symbolic)
                        .enumerate()
                        .map(|(i, (b, p))| match symbolic {
                            true => format!("b{} {b} {p}\n", 2 * i),
                            false => format!("b{} {b}\n", 2 * i),
                        })
                        .collect()
                },
                || match symbolic {
                    true => json!({
                        "b": jints(&t.b),
                        "symbolic": t.symbolic.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                    }),
                    false => json!({"b": jints(&t.b)}),
                },
            );
        }
        Command::Tau { n, l, d } => {
            if n < 0 || l < 0 || d < 0 {
                return Err(Failure::Usage("n, l and d must be nonnegative".into()));
            }
            let p = tau(n, l, d);
            out.emit(|| p.to_term_list(), || json!({"terms": poly2_terms(&p)}));
        }
        Command::Npoly { n, l, c } => {
            let p = count_poly(n, l, c)?;
            out.emit(|| p.to_term_list(), || json!({"terms": poly2_terms(&p)}));
        }
        Command::Count {
            n,
            l,
            c,
            r,
            s,
            nu,
            naive,
            max_pairs,
        } => {
            let opts = CountOptions {
                naive,
                max_pairs: max_pairs.unwrap_or(cfg.max_pairs),
            };
            let rep = count_and_compare(n, l, c, r, s, nu, opts)?;
            out.emit(
                || {
                    format!(
                        "count {}\nformula {}\nmatch {}\n",
                        rep.count, rep.formula, rep.matches
                    )
                },
                || {
                    json!({
                        "count": jint(&BigInt::from(rep.count)),
                        "formula": jint(&BigInt::from(rep.formula)),
                        "match": rep.matches,
                    })
                },
            );
            if !rep.matches {
                return Err(Failure::Mismatch);
            }
        }
        Command::Intersect {
            v,
            m,
            k,
            l,
            lambda,
            lambda2,
        } => {
            check_frobenius_pair(v.r, v.s)?;
            let pair = match (lambda, lambda2) {
                (Some(a), Some(b)) => {
                    let a = Subspace::from_text(&read_file(&a)?)?;
                    let b = Subspace::from_text(&read_file(&b)?)?;
                    if a.ambient_dim() != v.n || b.ambient_dim() != v.n {
                        return Err(Failure::Usage(format!(
                            "subspaces must lie in dimension n={}",
                            v.n
                        )));
                    }
                    if a.field().order() != b.field().order() {
                        return Err(Failure::Usage("subspaces are over different fields".into()));
                    }
                    if a.dim() != b.dim() {
                        return Err(Failure::Usage(
                            "cycles Sigma_Lambda need equal dimensions".into(),
                        ));
                    }
                    CyclePair::from_subspaces(v.r, v.s, l, l, &a, &b)?
                }
                _ => CyclePair::new(
                    v.n,
                    v.r,
                    v.s,
                    l,
                    l,
                    m.expect("required by clap"),
                    k.expect("required by clap"),
                )?,
            };
            let x = pair.intersection_number()?;
            out.emit(
                || format!("{x}\n"),
                || json!({"m": pair.m, "k": pair.k, "intersection": jint(&x)}),
            );
        }
        Command::Gram { v, q } => {
            let rs = check_frobenius_pair(v.r, v.s)?;
            if let Some(q) = q.filter(|&q| q != rs) {
                return Err(Failure::Usage(format!("--q {q} differs from rs = {rs}")));
            }
            let g = intersection_matrix(v.n, v.r, v.s)?;
            out.emit(
                || write_gram(&g),
                || json!({"rank": g.len(), "gram": g.iter().map(|row| jints(row)).collect::<Vec<_>>()}),
            );
        }
        Command::Lattice { cmd } => lattice_cmd(cmd, out)?,
        Command::Code { cmd } => code_cmd(cmd, cfg, out)?,
        Command::Reproduce { target } => {
            let rep = reproduce::run(target, cfg)?;
            out.emit(
                || rep.to_text(),
                || serde_json::to_value(&rep).expect("report serializes"),
            );
            if !rep.pass {
                return Err(Failure::Mismatch);
            }
        }
        Command::Density {
            rank,
            disc,
            min_norm,
        } => density(rank, &disc, &min_norm, out)?,
        Command::MhBound { rank } => {
            if rank == 0 {
                return Err(Failure::Usage("rank must be positive".into()));
            }
            let l = log2_mh_bound(rank);
            out.emit(
                || {
                    format!(
                        "log2_mh_bound {}\nmh_bound {}\n",
                        out.float(l),
                        out.float(l.exp2())
                    )
                },
                || json!({"rank": rank, "log2_mh_bound": l, "mh_bound": l.exp2()}),
            );
        }
    }
    Ok(())
}

fn density(rank: usize, disc: &BigInt, min_norm: &BigInt, out: &Out) -> CmdResult {
    if rank == 0
        || disc.sign() == num_bigint::Sign::NoSign
        || min_norm.sign() != num_bigint::Sign::Plus
    {
        return Err(Failure::Usage(
            "need positive rank, nonzero discriminant and positive minimal norm".into(),
        ));
    }
    let r = DensityReport::new(rank, disc, min_norm);
    out.emit(
        || {
            format!(
                "rank {}\ndisc {}\nmin_norm {}\ndelta {}\nlog2_delta {}\nmh_bound {}\nlog2_mh_bound {}\n",
                r.rank,
                r.disc,
                r.min_norm,
                out.float(r.delta),
                out.float(r.log2_delta),
                out.float(r.mh_bound),
                out.float(r.log2_mh_bound)
            )
        },
        || serde_json::to_value(&r).expect("report serializes"),
    );
    Ok(())
}

fn emit_lattice(lat: &IntLattice, dest: Option<PathBuf>, out: &Out) -> CmdResult {
    let s = lat.summary()?;
    let gram_text = write_gram(&lat.gram);
    let summary_text = format!(
        "{}\nrank {}\ndisc {}\neven {}\npositive_definite {}\n",
        lat.provenance, s.rank, s.disc, s.even, s.positive_definite
    );
    let mut value = json!({
        "provenance": lat.provenance,
        "rank": s.rank,
        "disc": jint(&s.disc),
        "even": s.even,
        "positive_definite": s.positive_definite,
    });
    match dest {
        Some(path) => {
            std::fs::write(&path, &gram_text)
                .map_err(|e| Failure::Run(format!("cannot write {}: {e}", path.display())))?;
            out.emit(|| summary_text, || value);
        }
        None => {
            value["gram"] = Value::Array(lat.gram.iter().map(|row| jints(row)).collect());
            out.emit(|| gram_text, || value);
        }
    }
    Ok(())
}

fn lattice_cmd(cmd: LatticeCmd, out: &Out) -> CmdResult {
    match cmd {
        LatticeCmd::BuildSigma { v, out: dest } => {
            let q = check_frobenius_pair(v.r, v.s)?;
            emit_lattice(&build_sigma_lattice(v.n, q, v.s)?, dest, out)
        }
        LatticeCmd::BuildN { v, prim, out: dest } => {
            let (n, p) = build_n_and_prim(v.n, v.r, v.s)?;
            emit_lattice(if prim { &p } else { &n }, dest, out)
        }
        LatticeCmd::BuildMc { v, out: dest } => {
            let q = check_frobenius_pair(v.r, v.s)?;
            emit_lattice(&build_mc(v.n, q, v.s)?, dest, out)
        }
        LatticeCmd::Disc { gram } => {
            let d = lattice_from_file(&gram)?.disc()?;
            out.emit(|| format!("{d}\n"), || json!({"disc": jint(&d)}));
            Ok(())
        }
        LatticeCmd::Even { gram } => {
            let e = lattice_from_file(&gram)?.is_even();
            out.emit(|| format!("{e}\n"), || json!({"even": e}));
            Ok(())
        }
        LatticeCmd::Density { gram, min_norm } => {
            let lat = lattice_from_file(&gram)?;
            density(lat.rank(), &lat.disc()?, &min_norm, out)
        }
    }
}

fn code_of(v: CodeVariety) -> Result<(IntLattice, CodeZ8, u64), Failure> {
    let q = check_frobenius_pair(v.r, v.s)?;
    let mc = build_mc(v.n, q, v.s)?;
    let code = CodeZ8::from_lattice(&mc)?;
    let denom = SigmaFrame::new(v.n, q, v.s)?
        .denom()
        .to_u64()
        .ok_or_else(|| Failure::Run("frame denominator too large".into()))?;
    Ok((mc, code, denom))
}

fn code_cmd(cmd: CodeCmd, cfg: &Config, out: &Out) -> CmdResult {
    match cmd {
        CodeCmd::Filtration { v, generators } => {
            let (_, code, _) = code_of(v)?;
            let gammas = code.filtration()?;
            let len = code.length();
            let rows = |i: usize| -> Vec<String> {
                gammas[i]
                    .rows()
                    .iter()
                    .map(|&w| {
                        unpack(w, len)
                            .iter()
                            .map(|b| char::from(b'0' + b))
                            .collect()
                    })
                    .collect()
            };
            out.emit(
                || {
                    let mut t = String::new();
                    for (i, g) in gammas.iter().enumerate() {
                        t.push_str(&format!("Gamma_{i} {}\n", g.dim()));
                        if generators {
                            for r in rows(i) {
                                t.push_str(&format!("  {r}\n"));
                            }
                        }
                    }
                    t.push_str(&format!("log2_size {}\n", code.log2_size()));
                    t
                },
                || {
                    let mut v = json!({
                        "length": len,
                        "dims": gammas.iter().map(|g| g.dim()).collect::<Vec<_>>(),
                        "log2_size": code.log2_size(),
                    });
                    if generators {
                        v["generators"] = json!((0..gammas.len()).map(rows).collect::<Vec<_>>());
                    }
                    v
                },
            );
        }
        CodeCmd::Weights { v, level } => {
            let (_, code, _) = code_of(v)?;
            let [g0, g1, g2] = code.filtration()?;
            let (name, c) = match level {
                Level::L0 => ("0", g0),
                Level::L1 => ("1", g1),
                Level::L1Dual => ("1dual", g1.dual()),
                Level::L2 => ("2", g2),
            };
            let e = c.weight_enumerator(cfg.max_code_dim)?;
            out.emit(
                || e.to_lines(),
                || {
                    json!({
                        "level": name,
                        "length": c.length(),
                        "dim": c.dim(),
                        "enumerator": enumerator_json(&e),
                    })
                },
            );
        }
        CodeCmd::Certify { v, lattice } => {
            let (mc, code, denom) = code_of(v)?;
            let lat = match lattice {
                CertTarget::Mc => mc,
                CertTarget::Sigma => build_sigma_lattice(v.n, v.r * v.s, v.s)?,
            };
            let cert = certify_min_norm(&lat, &code, denom, cfg.max_code_dim)?;
            check_certificate(&cert, &lat)?;
            out.emit(
                || {
                    let mut t = format!("{}\n", lat.provenance);
                    for b in &cert.branches {
                        let show = |x: Option<String>| x.unwrap_or_else(|| "-".into());
                        t.push_str(&format!(
                            "level {} dim {} min_weight {} norm_bound {}\n",
                            b.level,
                            show(b.code_dim.map(|d| d.to_string())),
                            show(b.min_weight.map(|d| d.to_string())),
                            show(b.norm_bound.map(|d| d.to_string())),
                        ));
                    }
                    let w: Vec<String> = cert.witness.iter().map(|x| x.to_string()).collect();
                    t.push_str(&format!(
                        "lower_bound {}\nwitness_norm {}\nwitness {}\nmin_norm {}\n",
                        cert.lower_bound,
                        cert.witness_norm,
                        w.join(" "),
                        cert.min_norm
                    ));
                    t
                },
                || serde_json::to_value(&cert).expect("certificate serializes"),
            );
        }
    }
    Ok(())
}
