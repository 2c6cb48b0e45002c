use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_noisy-teleport"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn temp_path(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("noisy-teleport-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn value(stdout: &[u8], key: &str) -> f64 {
    let text = String::from_utf8_lossy(stdout);
    let line = text
        .lines()
        .find(|l| l.starts_with(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("{key} missing in {text}"));
    line.rsplit(' ').next().unwrap().parse().unwrap()
}

#[test]
fn q_sweep_writes_fifty_rows_matching_closed_forms() {
    let path = temp_path("q.csv");
    let out = run(&[
        "sweep",
        "--param",
        "q",
        "--start",
        "0.001",
        "--stop",
        "0.2",
        "--steps",
        "50",
        "--alpha",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(!text.contains('\r'));
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "param,G_xi,G_xi_prime,neg_out,discord_out,fidelity"
    );
    let rows: Vec<Vec<f64>> = lines
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 50);
    for row in rows {
        let q = row[0];
        assert!((row[1] - (3.0 + q.sqrt()).powi(2) / 16.0).abs() < 1e-6);
        assert!((row[2] - (5.0 + 2.0 * q + q * q) / 8.0).abs() < 1e-6);
        assert!((row[5] - (0.2 + 0.8 * row[2])).abs() < 1e-11);
    }
}

#[test]
fn sweep_rerun_is_byte_identical() {
    let (a, b) = (temp_path("a.csv"), temp_path("b.csv"));
    for p in [&a, &b] {
        let out = run(&[
            "sweep",
            "--param",
            "epsilon",
            "--start",
            "0.01",
            "--stop",
            "0.25",
            "--steps",
            "6",
            "--alpha",
            "0.1",
            "--q",
            "0.01",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn single_step_sweep_is_rejected() {
    let out = run(&[
        "sweep", "--param", "q", "--start", "0.1", "--stop", "0.2", "--steps", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(run(&["gsf", "--q", "1.5"]).status.code(), Some(2));
    assert_eq!(run(&["gsf", "--q", "0.5", "--alpha", "0.5"]).status.code(), Some(2));
    assert_eq!(run(&["qcrit", "--alpha", "abc"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        run(&["fidelity", "--q", "0.5", "--samples", "200"]).status.code(),
        Some(2)
    );
}

#[test]
fn missing_sign_change_exits_one() {
    // at q = 0.3 the doubly damped output never carries more discord
    let out = run(&["eps-threshold", "--alpha", "0.1", "--q", "0.3"]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no sign change"));
    assert_eq!(run(&["qcrit", "--alpha", "0.24"]).status.code(), Some(1));
}

#[test]
fn scalar_commands() {
    let out = run(&["qcrit", "--alpha", "0"]);
    assert!(out.status.success());
    assert!((value(&out.stdout, "q_crit") - 0.0338454).abs() < 1e-4);

    let out = run(&["gsf", "--q", "0.25", "--alpha", "0.1", "--beta", "-0.05"]);
    assert!(out.status.success());
    assert!((value(&out.stdout, "G_xi") - 0.765625).abs() < 1e-9);

    let out = run(&["negativity", "--q", "0.3", "--alpha", "0.1", "--epsilon", "0.25"]);
    assert!(out.status.success());
    let s = 0.3f64.sqrt();
    let want = (2.0 + s + 0.3 + (s - 0.3) * (0.4 * std::f64::consts::PI).cos()) / 4.0;
    assert!((value(&out.stdout, "neg_xi_out") - want).abs() < 1e-9);
    assert!(value(&out.stdout, "neg_xi_prime_out") <= want);

    let out = run(&["discord", "--q", "0.01", "--alpha", "0.1", "--epsilon", "0.05"]);
    assert!(out.status.success());
    assert!(value(&out.stdout, "discord_xi_prime_out") > value(&out.stdout, "discord_xi_out"));

    let out = run(&["fidelity", "--q", "0.4", "--samples", "2000", "--seed", "5"]);
    assert!(out.status.success());
    let exact = value(&out.stdout, "fidelity_xi");
    let mc = value(&out.stdout, "fidelity_xi_mc");
    let se = value(&out.stdout, "fidelity_xi_mc_stderr");
    assert!((exact - mc).abs() <= 4.0 * se);
}

#[test]
fn repro_passes() {
    let out = run(&["repro"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(out.status.code(), Some(0), "{text}");
    assert!(text.contains("0.00272371"));
    assert!(text.contains("20765.4"));
    assert!(text.contains("12203.4"));
    assert!(text.contains("0.994553"));
    assert!(text.contains("0.00544741"));
    assert!(!text.contains("FAIL"));
}
