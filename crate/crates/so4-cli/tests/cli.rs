use std::path::PathBuf;
use std::process::{Command, Output};

use so4_geom::claims;

fn so4(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_so4"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("so4-cli-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_n1_is_harmonic() {
    let o = so4(&["verify", "builtin:n1", "--require", "harmonic", "--format", "machine"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("harmonic = true"));
}

#[test]
fn verify_h3_reports_invariant_torsion() {
    let o = so4(&["verify", "builtin:h3", "--format", "machine"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    for line in [
        "harmonic = false",
        "torsion.lambda = -1/2",
        "torsion.mu = 1",
        "torsion.invariant = true",
    ] {
        assert!(text.contains(line), "{line}\n{text}");
    }
    assert_eq!(code(&so4(&["verify", "h3", "--require", "harmonic"])), 1);
}

#[test]
fn abelian_report_is_trivial() {
    let o = so4(&[
        "verify",
        "abelian7",
        "--require",
        "flat",
        "--require",
        "hyperkaehler",
        "--format",
        "machine",
    ]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("dalpha = 0"));
}

#[test]
fn exit_codes() {
    assert_eq!(code(&so4(&["verify", "/nonexistent/algebra.txt"])), 2);
    assert_eq!(code(&so4(&["verify", "n3", "--param", "a=oops"])), 2);
    assert_eq!(code(&so4(&["verify", "n3", "--param", "z=1"])), 2);
    let bad = scratch("not_lie.txt", "dim 4\nd e3 = 12\nd e4 = 34\n");
    assert_eq!(code(&so4(&["verify", bad.to_str().unwrap()])), 3);
    assert_eq!(
        code(&so4(&["family", "invariant", "--param", "p=1", "--param", "q=1"])),
        1
    );
    assert_eq!(code(&so4(&["orbit-dim", "h3"])), 1);
}

#[test]
fn file_input_with_coframe() {
    let algebra = scratch(
        "n2_native.txt",
        "# n2 in native coordinates\ndim 7\nlabel n2 native\nd e5 = 27 + 12\nd e6 = 37 + 13\n",
    );
    let coframe = scratch(
        "n2_coframe.txt",
        "0 1 0 0 0 -1 0\n1 0 0 0 0 0 0\n0 0 0 -1 0 0 0\n0 0 0 0 1 0 0\n0 0 sqrt3 0 0 0 0\n0 0 0 0 0 -sqrt3 0\n0 0 0 0 0 0 sqrt3\n",
    );
    let (a, c) = (algebra.to_str().unwrap(), coframe.to_str().unwrap());
    assert_eq!(code(&so4(&["harmonic", a, "--coframe", c])), 0);
    assert_eq!(code(&so4(&["harmonic", a])), 1);
    let betti = stdout(&so4(&["betti", a, "--format", "machine"]));
    assert!(
        betti.contains("b1 = 5") && betti.contains("b2 = 13") && betti.contains("b3 = 21"),
        "{betti}"
    );
}

#[test]
fn quaternionic_verbs() {
    assert_eq!(code(&so4(&["hkt", "h2"])), 0);
    assert_eq!(code(&so4(&["hkt", "h3"])), 1);
    let eh = stdout(&so4(&["eh", "h4", "--format", "machine"]));
    assert!(eh.contains("kh_zero = false"), "{eh}");
    let orbit = stdout(&so4(&["orbit-dim", "f1", "--param", "a=4", "--format", "machine"]));
    assert!(orbit.contains("orbit_dim = 2"), "{orbit}");
    let product = stdout(&so4(&["product", "h1", "--format", "machine"]));
    assert!(
        product.contains("hyperkaehler = true") && product.contains("dOmega = 0"),
        "{product}"
    );
}

#[test]
fn ricci_and_d() {
    let r = stdout(&so4(&[
        "ricci",
        "f1",
        "--param",
        "a=0",
        "--product",
        "--format",
        "machine",
    ]));
    assert!(r.contains("ric.row3 = 0, 0, -8/3, 0, 0, 0, 0, 0"), "{r}");
    assert!(r.contains("ric.row1 = 4/3, 0, 0, 0, 0, 0, -4/3*sqrt3, 0"), "{r}");
    let flat = stdout(&so4(&["ricci", "abelian7", "--format", "machine"]));
    assert!(flat.contains("flat = true"));
    let d = stdout(&so4(&["d", "h3", "5", "--format", "machine"]));
    assert!(d.contains("d = 12 - 34"), "{d}");
}

#[test]
fn stabilizer_and_family() {
    let s = stdout(&so4(&["stabilizer", "alpha", "beta", "--format", "machine"]));
    assert!(s.contains("dim = 6") && s.contains("equals_so4 = true"), "{s}");
    let s = stdout(&so4(&["stabilizer", "Omega", "--format", "machine"]));
    assert!(s.contains("dim = 13"), "{s}");
    let f = so4(&[
        "family",
        "h7",
        "--param",
        "a=2",
        "--param",
        "kappa=1/2",
        "--format",
        "machine",
    ]);
    assert_eq!(code(&f), 0);
    assert!(stdout(&f).contains("jacobi = true"));
}

#[test]
fn output_is_deterministic() {
    let args = ["verify", "n7", "--format", "machine"];
    assert_eq!(stdout(&so4(&args)), stdout(&so4(&args)));
}

#[test]
fn reproduce_paper_filter() {
    let o = so4(&["reproduce-paper", "--filter", "table1"]);
    assert_eq!(code(&o), 0);
    let text = stdout(&o);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 11, "{text}");
    assert_eq!(code(&so4(&["reproduce-paper", "--filter", "nothing"])), 2);
}

#[test]
fn reproduce_paper_exit_code_tracks_the_claims() {
    let o = so4(&["reproduce-paper", "--format", "machine"]);
    let reports = claims::run(None);
    let all_pass = reports.iter().all(|r| r.pass());
    assert_eq!(code(&o), if all_pass { 0 } else { 1 });
    if let Some((r, c)) = reports.iter().find_map(|r| r.first_failure().map(|c| (r, c))) {
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(
            err.contains(&format!("criterion {}", r.number)) && err.contains(&c.name),
            "{err}"
        );
    }
    let lines = stdout(&o)
        .lines()
        .filter(|l| l.contains(" = PASS") || l.contains(" = FAIL"))
        .count();
    assert_eq!(lines, reports.iter().map(|r| r.checks.len()).sum::<usize>());
}
