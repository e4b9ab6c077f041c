use hypscatter::commands::{cmd_lengths, cmd_zeros, RunConfig};
use hypscatter::lattices::LatticeId;
use std::path::Path;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hypscatter"))
}

fn read(dir: &Path, name: &str) -> Vec<u8> {
    std::fs::read(dir.join(name)).unwrap()
}

#[test]
fn identical_configs_give_identical_tables() {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| {
        let out = dir.path().join(sub);
        let status = bin().args(["lengths", "--compare", "gamma0(2)", "--out"]).arg(&out).status().unwrap();
        assert!(status.success());
        out
    };
    let (a, b) = (run("a"), run("b"));
    for f in ["spectrum.csv", "spectrum_compare.csv", "comparison.csv", "identity.csv", "poles.csv"] {
        assert_eq!(read(&a, f), read(&b, f), "{f}");
    }
}

#[test]
fn config_file_and_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    let out = dir.path().join("nested/out");
    std::fs::write(&cfg, format!("# zeros of gamma0(2)\nlattice = gamma0(2)\ntmax = 25\nout = {}\n", out.display())).unwrap();
    let status = bin().args(["zeros", "--tmax", "22", "--config"]).arg(&cfg).status().unwrap();
    assert!(status.success());
    let summary = String::from_utf8(read(&out, "zeros.json")).unwrap();
    assert!(summary.contains("\"t_max\": 22.0") && summary.contains("gamma0"), "{summary}");
    let zeros = String::from_utf8(read(&out, "zeros.csv")).unwrap();
    assert!(zeros.starts_with("beta,gamma,multiplicity\r\n"));
}

#[test]
fn usage_errors_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin().args(["scattering", "--lattice", "gamma0(4)", "--out"]).arg(dir.path()).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let cfg = dir.path().join("bad.cfg");
    std::fs::write(&cfg, "tmax 10\n").unwrap();
    let o = bin().args(["zeros", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bad.cfg:1"));
}

#[test]
fn degraded_modes_still_run() {
    let dir = tempfile::tempdir().unwrap();
    let o = bin().args(["scattering", "--lambda-max", "0", "--out"]).arg(dir.path()).output().unwrap();
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("series model skipped"));
    assert!(dir.path().join("residuals.csv").exists() && !dir.path().join("series.csv").exists());

    let cfg = RunConfig { t_max: 5.0, out: dir.path().join("low"), ..RunConfig::default() };
    let out = cmd_zeros(&cfg).unwrap();
    assert!(out.ok() && out.notices.iter().any(|n| n.contains("main-term fit skipped")));
    assert_eq!(read(&cfg.out, "zeros.csv"), b"beta,gamma,multiplicity\r\n");

    let cfg = RunConfig { out: dir.path().join("single"), ..RunConfig::default() };
    let out = cmd_lengths(&cfg).unwrap();
    assert!(out.notices.iter().any(|n| n.contains("comparison omitted")));
    assert!(!cfg.out.join("comparison.csv").exists());
    let poles = String::from_utf8(read(&cfg.out, "poles.csv")).unwrap();
    assert!(poles.lines().any(|l| l.starts_with("0.000000000000e0,1.000000000000e0,1,1,")), "{poles}");
}

#[test]
fn zeros_command_reproduces_the_zeta_census() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = RunConfig { lattice: LatticeId::SL2Z, t_max: 50.0, out: dir.path().to_path_buf(), ..RunConfig::default() };
    let out = cmd_zeros(&cfg).unwrap();
    assert!(out.ok(), "{:?}", out.failures);
    let rows = String::from_utf8(read(dir.path(), "zeros.csv")).unwrap().lines().count() - 1;
    assert_eq!(rows, 29);
    // a corrupted zeta-zero cache is recomputed
    let cache = dir.path().join("cache");
    for e in std::fs::read_dir(&cache).unwrap() {
        std::fs::write(e.unwrap().path(), "garbage").unwrap();
    }
    assert!(cmd_zeros(&cfg).unwrap().ok());
}

#[test]
fn verify_writes_a_passing_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("missing/dir");
    let o = bin().args(["verify", "--out"]).arg(&out).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&read(&out, "report.json")).unwrap();
    assert_eq!(report["results"]["passed"], true);
    assert_eq!(report["results"]["criteria"].as_array().unwrap().len(), 12);
    assert_eq!(report["results"]["downgraded"], true);
}
