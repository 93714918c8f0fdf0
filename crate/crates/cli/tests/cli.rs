use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use chordkit_cli::{generate_instance, Distribution, GenParams, InstanceFile, Kind, ReportFile};
use chordkit_core::Verdict;
use proptest::prelude::*;
use tempfile::TempDir;

fn chordkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_chordkit")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn gen_to(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.path().join(name);
    let mut full = vec!["gen"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", s(&p)]);
    let out = chordkit(&full);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    p
}

fn verify(inst: &Path, extra: &[&str]) -> (i32, ReportFile, String) {
    let mut args = vec!["verify", "--in", s(inst)];
    args.extend_from_slice(extra);
    let out = chordkit(&args);
    let report = ReportFile::from_json(&String::from_utf8(out.stdout.clone()).unwrap()).expect("report on stdout");
    (code(&out), report, String::from_utf8(out.stderr).unwrap())
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(code(&chordkit(&["--help"])), 0);
    assert_eq!(code(&chordkit(&["--version"])), 0);
    assert_eq!(code(&chordkit(&["verify", "--help"])), 0);
}

#[test]
fn usage_errors_exit_three() {
    assert_eq!(code(&chordkit(&[])), 3);
    assert_eq!(code(&chordkit(&["frobnicate"])), 3);
    assert_eq!(code(&chordkit(&["gen", "--kind", "circle", "--n", "4", "--dist", "nope", "--seed", "1"])), 3);
    assert_eq!(code(&chordkit(&["gen", "--kind", "circle", "--n", "4", "--dist", "rational-line", "--seed", "1"])), 3);
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "bad.json", "{\"kind\": \"circle\",\n \"half_angles\": [\"0.1\" \"0.2\"]}");
    let out = chordkit(&["verify", "--in", s(&inst)]);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let sq = write(&dir, "sq.json", r#"{"kind": "circle", "half_angles": ["0", "1", "2", "3"]}"#);
    assert_eq!(code(&chordkit(&["verify", "--in", s(&sq), "--backend", "exact"])), 3);
    assert_eq!(code(&chordkit(&["verify", "--in", s(&sq), "--precision", "8"])), 3);
}

#[test]
fn square_is_consistent_at_128_bits() {
    let dir = TempDir::new().unwrap();
    let inst = gen_to(&dir, "square.json", &["--kind", "circle", "--n", "4", "--dist", "regular", "--seed", "0"]);
    let (c, report, _) = verify(&inst, &["--backend", "bigfloat", "--precision", "128"]);
    assert_eq!(c, 0);
    assert_eq!(report.path.as_deref(), Some("mcdougall"));
    assert_eq!(report.convention, "odd-minus-even");
    assert_eq!(report.trace.len(), 1);
    assert_eq!(report.trace[0].precision, 128);
    assert_eq!(report.recomputed_verdict().unwrap(), Verdict::IdentityConsistent);
    let digest = format!("sha256:{}", {
        use sha2::Digest;
        hex::encode(sha2::Sha256::digest(std::fs::read(&inst).unwrap()))
    });
    assert_eq!(report.instance_digest, digest);
}

#[test]
fn every_backend_on_the_square() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "sq.json", r#"{"kind": "circle", "half_angles": [{"pi_num": 0, "pi_den": 2}, {"pi_num": 1, "pi_den": 4}, {"pi_num": 1, "pi_den": 2}, {"pi_num": 3, "pi_den": 4}]}"#);
    for (backend, path) in [("bigfloat", "mcdougall"), ("interval", "mcdougall"), ("gaussian", "exact-jane")] {
        let (c, report, _) = verify(&inst, &["--backend", backend, "--escalate"]);
        assert_eq!(c, 0, "{backend}");
        assert_eq!(report.path.as_deref(), Some(path));
        assert_eq!(report.recomputed_verdict().unwrap(), report.verdict().unwrap());
    }
}

#[test]
fn triangle_control_reports_one_third() {
    let dir = TempDir::new().unwrap();
    let inst = gen_to(&dir, "tri.json", &["--kind", "circle", "--n", "3", "--dist", "regular", "--seed", "0"]);
    let (c, report, _) = verify(&inst, &["--escalate"]);
    assert_eq!(c, 1);
    assert_eq!(report.path.as_deref(), Some("odd-circle-control"));
    assert!(report.trace.len() >= 3);
    let residual = report.residual.unwrap().display();
    assert!(residual.starts_with("3.3333333333"), "{residual}");
}

#[test]
fn duplicate_angle_is_degenerate() {
    let dir = TempDir::new().unwrap();
    let inst = write(&dir, "dup.json", r#"{"kind": "circle", "half_angles": [{"pi_num": 1, "pi_den": 4}, "0.5", {"pi_num": 5, "pi_den": 4}]}"#);
    let (c, report, stderr) = verify(&inst, &[]);
    assert_eq!(c, 2);
    assert_eq!(report.verdict, "degenerate");
    assert!(report.path.is_none());
    assert_eq!(report.warnings, vec!["half_angles[0] and half_angles[2] coincide".to_string()]);
    assert!(stderr.contains("coincide"));
}

#[test]
fn clustered_instance_carries_a_conditioning_warning() {
    let dir = TempDir::new().unwrap();
    let inst = gen_to(&dir, "cl.json", &["--kind", "circle", "--n", "6", "--dist", "clustered", "--seed", "4", "--gap", "1e-6"]);
    let (c, report, stderr) = verify(&inst, &[]);
    assert_eq!(c, 0);
    assert_eq!(report.warnings.len(), 1);
    assert!(report.warnings[0].starts_with("ill-conditioned"));
    assert!(stderr.contains("warning: ill-conditioned"));
    let gap: f64 = report.condition.min_gap.unwrap().approx.parse().unwrap();
    assert!((gap - 1e-6).abs() < 1e-15);
}

#[test]
fn rational_line_is_exactly_zero() {
    let dir = TempDir::new().unwrap();
    let inst = gen_to(&dir, "line.json", &["--kind", "line", "--n", "7", "--dist", "rational-line", "--seed", "7"]);
    let (c, report, _) = verify(&inst, &["--backend", "exact"]);
    assert_eq!(c, 0);
    assert_eq!(report.path.as_deref(), Some("exact-collinear"));
    assert!(report.residual.unwrap().is_zero());
    let (c, report, _) = verify(&inst, &["--backend", "interval", "--escalate"]);
    assert_eq!(c, 0);
    assert_eq!(report.path.as_deref(), Some("collinear"));
}

#[test]
fn report_file_and_summary_line() {
    let dir = TempDir::new().unwrap();
    let inst = gen_to(&dir, "u.json", &["--kind", "circle", "--n", "10", "--dist", "uniform", "--seed", "5"]);
    let rep = dir.path().join("r.json");
    let out = chordkit(&["verify", "--in", s(&inst), "--escalate", "--report", s(&rep)]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("identity-consistent: residual "));
    let text = std::fs::read_to_string(&rep).unwrap();
    let report = ReportFile::from_json(&text).unwrap();
    assert_eq!(report.recomputed_verdict().unwrap(), Verdict::IdentityConsistent);
    assert_eq!(report.to_json(), text);
}

#[test]
fn sweep_writes_reproducible_csv() {
    let dir = TempDir::new().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let out = chordkit(&["sweep", "--n-min", "4", "--n-max", "12", "--n-step", "2", "--trials", "10", "--dist", "uniform", "--seed", "17", "--precision", "256", "--out", s(&p)]);
        assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
        std::fs::read_to_string(p).unwrap()
    };
    let strip = |csv: &str| csv.lines().map(|l| l.rsplit_once(',').unwrap().0.to_string()).collect::<Vec<_>>();
    let a = run("a.csv");
    let b = run("b.csv");
    assert_eq!(strip(&a), strip(&b));
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(lines.len(), 51);
    assert!(lines[1..].iter().all(|l| l.split(',').nth(3) == Some("identity-consistent")));
}

#[test]
fn sweep_row_reproduces_standalone() {
    let dir = TempDir::new().unwrap();
    let p = dir.path().join("s.csv");
    let out = chordkit(&["sweep", "--n-min", "6", "--n-max", "6", "--trials", "3", "--seed", "9", "--out", s(&p)]);
    assert_eq!(code(&out), 0);
    let csv = std::fs::read_to_string(p).unwrap();
    let row: Vec<String> = csv.lines().nth(3).unwrap().split(',').map(String::from).collect();
    assert_eq!(row[..2], ["6".to_string(), "2".to_string()]);
    let seed = chordkit_cli::trial_seed(9, 6, 2);
    assert_eq!(row[2], seed.to_string());
    let inst = gen_to(&dir, "t.json", &["--kind", "circle", "--n", "6", "--dist", "uniform", "--seed", &seed.to_string()]);
    let (_, report, _) = verify(&inst, &[]);
    assert_eq!(report.residual.unwrap().display(), row[4]);
}

#[test]
fn check_joseph_prints_value_and_verdict() {
    let dir = TempDir::new().unwrap();
    let nodes = write(&dir, "n.json", r#"{"nodes": ["2", {"num": "-1", "den": "3"}, "5", {"re": "1", "im": "1"}]}"#);
    let out = chordkit(&["check-joseph", "--in", s(&nodes), "--r", "2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "value: 0\nexact-zero: true\n");
    let out = chordkit(&["check-joseph", "--in", s(&nodes), "--r", "3"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "value: 1\nexact-zero: false\n");
    let dup = write(&dir, "d.json", r#"{"nodes": ["2", "2"]}"#);
    assert_eq!(code(&chordkit(&["check-joseph", "--in", s(&dup), "--r", "0"])), 3);
}

fn dist_strategy() -> impl Strategy<Value = Distribution> {
    proptest::sample::select(Distribution::ALL.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn generate_serialize_parse_serialize_is_identity(dist in dist_strategy(), n in 2usize..16, seed in any::<u64>()) {
        let inst = generate_instance(dist.kind(), n, dist, seed, &GenParams::default()).unwrap();
        let text = inst.to_json();
        let parsed = InstanceFile::from_json(&text).unwrap();
        prop_assert_eq!(&parsed, &inst);
        prop_assert_eq!(parsed.to_json(), text);
        prop_assert_eq!(parsed.to_configuration().unwrap().len(), n);
    }

    #[test]
    fn reports_are_self_consistent(dist in dist_strategy(), n in 2usize..10, seed in any::<u64>(), escalate in any::<bool>()) {
        let inst = generate_instance(dist.kind(), n, dist, seed, &GenParams::default()).unwrap();
        let opts = chordkit_cli::VerifyOptions { escalate, ..Default::default() };
        let report = chordkit_cli::verify_bytes(inst.to_json().as_bytes(), &opts).unwrap();
        let back = ReportFile::from_json(&report.to_json()).unwrap();
        prop_assert_eq!(back.recomputed_verdict().unwrap(), back.verdict().unwrap());
        if dist.kind() == Kind::Circle && n % 2 == 1 && n >= 3 {
            prop_assert_eq!(back.verdict().unwrap(), Verdict::Violated);
        }
    }
}
