//! End-to-end runs of the `frobinc` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

/// Run in an empty directory with no config in the environment, so a stray
/// `frobinc.conf` cannot change results.
fn run_in(dir: &Path, args: &[&str], config_env: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_frobinc"));
    cmd.args(args).current_dir(dir).env_remove("FROBINC_CONFIG");
    if let Some(p) = config_env {
        cmd.env("FROBINC_CONFIG", p);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    let dir = TempDir::new().unwrap();
    run_in(dir.path(), args, None)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn betti_json() {
    assert_eq!(
        ok(&["betti", "--n", "4", "--l", "1", "--c", "1", "--r", "2", "--s", "2", "--json"]),
        "{\"b\":[1,2,87,2,1]}\n"
    );
}

#[test]
fn betti_plain_and_symbolic() {
    let out = ok(&[
        "betti",
        "--n",
        "3",
        "--l",
        "1",
        "--c",
        "1",
        "--r",
        "2",
        "--s",
        "2",
        "--symbolic",
    ]);
    assert_eq!(out, "b0 1 1\nb2 22 1*q^2 + 1*q + 2\nb4 1 1\n");
}

#[test]
fn help_lists_every_subcommand() {
    let out = ok(&["--help"]);
    for sub in [
        "betti",
        "tau",
        "npoly",
        "count",
        "intersect",
        "gram",
        "lattice",
        "code",
        "reproduce",
        "density",
        "mh-bound",
    ] {
        assert!(out.contains(sub), "--help does not mention {sub}");
    }
    let lat = ok(&["lattice", "--help"]);
    for sub in [
        "build-sigma",
        "build-n",
        "build-mc",
        "disc",
        "even",
        "density",
    ] {
        assert!(lat.contains(sub), "lattice --help does not mention {sub}");
    }
    let code = ok(&["code", "--help"]);
    for sub in ["filtration", "weights", "certify"] {
        assert!(code.contains(sub), "code --help does not mention {sub}");
    }
}

#[test]
fn parse_errors_exit_2() {
    let o = run(&[
        "betti", "--n", "abc", "--l", "1", "--c", "1", "--r", "2", "--s", "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid value 'abc'"));
    assert_eq!(run(&["betti", "--frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["code", "weights", "--level", "3"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["reproduce", "dense-86"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_1() {
    // r and s are powers of different primes.
    let o = run(&[
        "betti", "--n", "4", "--l", "1", "--c", "1", "--r", "2", "--s", "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn count_matches_formula() {
    let v = json(&[
        "count", "--n", "3", "--l", "1", "--c", "1", "--r", "2", "--s", "2", "--nu", "2", "--json",
    ]);
    assert_eq!(
        v,
        serde_json::json!({"count": 609, "formula": 609, "match": true})
    );
    let naive = json(&[
        "count", "--n", "4", "--l", "1", "--c", "1", "--r", "2", "--s", "2", "--naive", "--json",
    ]);
    assert_eq!(naive["count"], 1785);
}

#[test]
fn config_file_and_overrides() {
    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("budget.conf");
    std::fs::write(&conf, "# tiny budget\nmax_pairs = 100\n").unwrap();
    let args = [
        "count", "--n", "3", "--l", "1", "--c", "1", "--r", "2", "--s", "2",
    ];

    // 21 * 21 pairs exceed the configured budget, from either source.
    let o = run_in(dir.path(), &args, Some(&conf));
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("budget is 100"));
    let mut with_flag = vec!["--config", conf.to_str().unwrap()];
    with_flag.extend(args);
    assert_eq!(run_in(dir.path(), &with_flag, None).status.code(), Some(1));

    // The flag beats the config.
    let mut over = args.to_vec();
    over.extend(["--max-pairs", "1000"]);
    let o = run_in(dir.path(), &over, Some(&conf));
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("count 105\n"));

    // ./frobinc.conf is picked up when nothing else is set.
    std::fs::write(dir.path().join("frobinc.conf"), "max_pairs = 100\n").unwrap();
    assert_eq!(run_in(dir.path(), &args, None).status.code(), Some(1));
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    for bad in ["max_pairs 10\n", "precision = 99\n", "colour = blue\n"] {
        let conf = dir.path().join("bad.conf");
        std::fs::write(&conf, bad).unwrap();
        let o = run_in(dir.path(), &["mh-bound", "--rank", "8"], Some(&conf));
        assert_eq!(o.status.code(), Some(2), "{bad:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains("bad.conf"));
    }
    let missing = dir.path().join("missing.conf");
    let o = run_in(dir.path(), &["mh-bound", "--rank", "8"], Some(&missing));
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn precision_controls_plain_floats() {
    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("p.conf");
    std::fs::write(&conf, "precision = 20\n").unwrap();
    let o = run_in(dir.path(), &["mh-bound", "--rank", "85"], Some(&conf));
    // 20 bits give 6 significant digits.
    assert!(
        stdout(&o).starts_with("log2_mh_bound 18.4293\n"),
        "{}",
        stdout(&o)
    );
}

#[test]
fn polynomials_are_deterministic() {
    let args = ["tau", "--n", "4", "--l", "2", "--d", "1", "--json"];
    assert_eq!(ok(&args), ok(&args));
    assert_eq!(
        ok(&["tau", "--n", "3", "--l", "1", "--d", "0"]),
        "1 x^0 y^1\n-1 x^1 y^0\n1 x^0 y^2\n-1 x^2 y^0\n"
    );
    // N(x, y) = y^2 + (x^2 + x + 2) y + 1 for the surface case.
    assert_eq!(
        ok(&["npoly", "--n", "3", "--l", "1", "--c", "1"]),
        "1 x^0 y^0\n2 x^0 y^1\n1 x^0 y^2\n1 x^1 y^1\n1 x^2 y^1\n"
    );
}

#[test]
fn intersections() {
    // Two lines of P^3 meeting in a point and spanning a plane.
    assert_eq!(
        ok(&[
            "intersect",
            "--n",
            "4",
            "--r",
            "2",
            "--s",
            "2",
            "--m",
            "1",
            "--k",
            "1"
        ]),
        "1\n"
    );
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.txt");
    let b = dir.path().join("b.txt");
    std::fs::write(&a, "2 2 4 2\n1 0 0 0\n0 1 0 0\n").unwrap();
    std::fs::write(&b, "2 2 4 2\n1 0 0 0\n0 0 1 0\n").unwrap();
    let o = run_in(
        dir.path(),
        &[
            "intersect",
            "--n",
            "4",
            "--r",
            "2",
            "--s",
            "2",
            "--lambda",
            "a.txt",
            "--lambda2",
            "b.txt",
            "--json",
        ],
        None,
    );
    assert!(o.status.success());
    assert_eq!(stdout(&o), "{\"intersection\":1,\"k\":1,\"m\":1}\n");
    // Self-intersection of a line in P^3.
    let o = run_in(
        dir.path(),
        &[
            "intersect",
            "--n",
            "4",
            "--r",
            "2",
            "--s",
            "2",
            "--lambda",
            "a.txt",
            "--lambda2",
            "a.txt",
        ],
        None,
    );
    let expected = ok(&[
        "intersect",
        "--n",
        "4",
        "--r",
        "2",
        "--s",
        "2",
        "--m",
        "2",
        "--k",
        "2",
    ]);
    assert_eq!(stdout(&o), expected);
}

#[test]
fn gram_matrix() {
    let out = ok(&["gram", "--n", "3", "--r", "1", "--s", "2", "--q", "2"]);
    let mut lines = out.lines();
    // h_1, h_2 plus 7 points and 7 lines of P^2(F_2).
    assert_eq!(lines.next(), Some("16"));
    assert_eq!(lines.count(), 16);
    assert_eq!(
        run(&["gram", "--n", "3", "--r", "1", "--s", "2", "--q", "4"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn lattice_round_trip_through_gram_file() {
    let dir = TempDir::new().unwrap();
    let o = run_in(
        dir.path(),
        &[
            "lattice",
            "build-sigma",
            "--n",
            "3",
            "--r",
            "2",
            "--s",
            "2",
            "--out",
            "sigma.gram",
        ],
        None,
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("rank 20\ndisc 84\neven true\n"));
    let disc = run_in(
        dir.path(),
        &["lattice", "disc", "--gram", "sigma.gram"],
        None,
    );
    assert_eq!(stdout(&disc), "84\n");
    let even = run_in(
        dir.path(),
        &["lattice", "even", "--gram", "sigma.gram", "--json"],
        None,
    );
    assert_eq!(stdout(&even), "{\"even\":true}\n");
    let bad = dir.path().join("bad.gram");
    std::fs::write(&bad, "2\n1 2\n3\n").unwrap();
    assert_eq!(
        run_in(dir.path(), &["lattice", "disc", "--gram", "bad.gram"], None)
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn surface_n_lattice() {
    let v = json(&[
        "lattice", "build-n", "--n", "3", "--r", "2", "--s", "2", "--json",
    ]);
    assert_eq!(
        (v["rank"].clone(), v["disc"].clone()),
        (22.into(), (-4).into())
    );
    let p = json(&[
        "lattice", "build-n", "--n", "3", "--r", "2", "--s", "2", "--prim", "--json",
    ]);
    assert_eq!(
        (p["rank"].clone(), p["disc"].clone(), p["even"].clone()),
        (20.into(), 84.into(), true.into())
    );
}

#[test]
fn density_outputs() {
    let v = json(&[
        "density",
        "--rank",
        "85",
        "--disc",
        "1048576",
        "--min-norm",
        "8",
        "--json",
    ]);
    assert_eq!(v["log2_delta"], 32.5);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "delta",
            "disc",
            "log2_delta",
            "log2_mh_bound",
            "mh_bound",
            "min_norm",
            "rank"
        ]
    );
    let m = json(&["mh-bound", "--rank", "84", "--json"]);
    assert!((m["log2_mh_bound"].as_f64().unwrap() - 17.546).abs() < 1e-3);
    assert_eq!(
        run(&["density", "--rank", "4", "--disc", "0", "--min-norm", "2"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn code_commands() {
    let f = json(&["code", "filtration", "--json"]);
    assert_eq!(f["dims"], serde_json::json!([16, 60, 84]));
    assert_eq!(f["log2_size"], 160);
    assert_eq!(
        ok(&["code", "weights", "--level", "0"]),
        "0 1\n32 3570\n40 38080\n48 23800\n64 85\n"
    );
    let dual = ok(&["code", "weights", "--level", "1dual"]);
    assert!(dual.starts_with("0 1\n21 85\n24 14280\n"));
    let g1 = json(&["code", "weights", "--level", "1", "--json"]);
    assert_eq!(g1["enumerator"][1], serde_json::json!([8, 17850]));
    let cert = json(&["code", "certify", "--json"]);
    assert_eq!(cert["min_norm"], 8);
    let sigma = ok(&["code", "certify", "--lattice", "sigma"]);
    assert!(sigma.ends_with("min_norm 8\n"));
}

#[test]
fn code_budget_from_config() {
    let dir = TempDir::new().unwrap();
    let conf = dir.path().join("c.conf");
    std::fs::write(&conf, "max_code_dim = 10\n").unwrap();
    let o = run_in(
        dir.path(),
        &["code", "weights", "--level", "0"],
        Some(&conf),
    );
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
}

#[test]
fn reproduce_k3_surface() {
    let out = ok(&["reproduce", "k3-surface"]);
    assert!(out.contains("PASS count nu=1: 105\n"));
    assert!(out.contains("PASS count nu=2: 609\n"));
    assert!(out.contains("PASS b2: 22\n"));
    assert!(out.ends_with("checks passed\n"));
}

#[test]
fn reproduce_betti_n7() {
    let v = json(&["reproduce", "betti-n7", "--json"]);
    assert_eq!(v["pass"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 14);
}

#[test]
fn reproduce_dense_84() {
    let v = json(&["reproduce", "dense-84", "--json"]);
    assert_eq!(v["pass"], true);
    let get = |name: &str| {
        v["checks"]
            .as_array()
            .unwrap()
            .iter()
            .find(|c| c["name"] == name)
            .map(|c| c["computed"].as_str().unwrap().to_string())
            .unwrap()
    };
    assert_eq!(get("rank"), "84");
    assert_eq!(get("disc"), "5570560");
    assert_eq!(get("min_norm"), "8");
    assert_eq!(get("even"), "true");
}

#[test]
fn reproduce_dense_85() {
    let out = ok(&["reproduce", "dense-85"]);
    assert!(out.lines().any(|l| l == "32 3570"));
    assert!(out.contains("PASS disc: 1048576\n"));
    assert!(out.contains("PASS min_norm: 8\n"));
    assert!(!out.contains("FAIL"));
    // Byte-identical JSON across runs.
    let a = ok(&["reproduce", "dense-85", "--json"]);
    assert_eq!(a, ok(&["reproduce", "dense-85", "--json"]));
}
