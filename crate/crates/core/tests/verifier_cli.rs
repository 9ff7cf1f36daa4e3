use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use paranull::verifier::{
    run, CheckId, CheckStatus, RunOptions, ScenarioConfig, CHECKS, DERIVATIVES_ENV,
    EXIT_CHECK_FAILURE, EXIT_CONFIG_ERROR, EXIT_CONSTRUCTION_ERROR, EXIT_PASS, TOLERANCE_ENV,
};
use serde_json::Value;

fn manifest(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join(rel)
}

fn paranull(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_paranull"));
    cmd.args(args)
        .env_remove(TOLERANCE_ENV)
        .env_remove(DERIVATIVES_ENV);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write_config(dir: &tempfile::TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

const SIGMA: &str = r#"
model = "s2xs2"
checks = ["nullity", "eigenvalues"]
grid = [3, 3, 3]
[hypersurface]
kind = "sigma-t"
t = 0.5
"#;

#[test]
fn version_and_check_listing() {
    let o = paranull(&["version"], &[]);
    assert_eq!(code(&o), EXIT_PASS);
    assert!(stdout(&o).contains(env!("CARGO_PKG_VERSION")));

    let o = paranull(&["list-checks"], &[]);
    assert_eq!(code(&o), EXIT_PASS);
    let text = stdout(&o);
    for c in CHECKS {
        assert!(text.contains(c.name), "{} missing from list-checks", c.name);
    }
}

#[test]
fn verify_writes_json_and_markdown() {
    let dir = tempfile::tempdir().unwrap();
    let (json, md) = (dir.path().join("r.json"), dir.path().join("r.md"));
    let cfg = manifest("scenarios/sigma_t_s2.toml");
    let o = paranull(
        &[
            "verify",
            cfg.to_str().unwrap(),
            "--json",
            json.to_str().unwrap(),
            "--md",
            md.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(
        code(&o),
        EXIT_PASS,
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["overall"], "pass");
    assert_eq!(v["scenario"]["samples"], 216);
    for c in v["checks"].as_array().unwrap() {
        assert!(c["max_residual"].as_f64().unwrap() < 1e-6);
    }
    let markdown = std::fs::read_to_string(&md).unwrap();
    assert_eq!(markdown, stdout(&o));
    assert!(markdown.contains("| cmc-relation | pass | 216 |"));
    assert!(markdown.contains("**Overall: PASS**"));
}

#[test]
fn golden_reports_are_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["null_plane", "sigma_t_s2"] {
        let out = dir.path().join(format!("{name}.json"));
        let cfg = manifest(&format!("scenarios/{name}.toml"));
        let o = paranull(
            &[
                "verify",
                cfg.to_str().unwrap(),
                "--json",
                out.to_str().unwrap(),
            ],
            &[],
        );
        assert_eq!(code(&o), EXIT_PASS);
        let golden = std::fs::read(manifest(&format!("tests/golden/{name}.json"))).unwrap();
        assert!(
            std::fs::read(&out).unwrap() == golden,
            "{name} differs from its golden file"
        );
    }
}

#[test]
fn exit_codes_separate_failure_kinds() {
    let dir = tempfile::tempdir().unwrap();
    let fail = manifest("scenarios/tight_connection.toml");
    let o = paranull(&["verify", fail.to_str().unwrap()], &[]);
    assert_eq!(code(&o), EXIT_CHECK_FAILURE);
    assert!(stdout(&o).contains("| connection-relations | FAIL |"));

    for bad in [
        SIGMA.replace("nullity", "nulity"),
        SIGMA.replace("[3, 3, 3]", "[3, 3]"),
        SIGMA.replace("s2xs2", "s2xr2"),
        "not toml at all [".to_string(),
    ] {
        let p = write_config(&dir, "bad.toml", &bad);
        let o = paranull(&["verify", p.to_str().unwrap()], &[]);
        assert_eq!(code(&o), EXIT_CONFIG_ERROR, "{bad}");
    }
    let o = paranull(&["verify", "/no/such/file.toml"], &[]);
    assert_eq!(code(&o), EXIT_CONFIG_ERROR);
    assert_eq!(code(&paranull(&["frobnicate"], &[])), EXIT_CONFIG_ERROR);

    for broken in [
        SIGMA.replace("t = 0.5", "t = 1.5"),
        SIGMA.replace("t = 0.5", "t = -1.0"),
    ] {
        let p = write_config(&dir, "broken.toml", &broken);
        let o = paranull(&["verify", p.to_str().unwrap()], &[]);
        assert_eq!(code(&o), EXIT_CONSTRUCTION_ERROR);
        assert!(String::from_utf8_lossy(&o.stderr).contains("construction"));
    }
}

#[test]
fn environment_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(&dir, "s.toml", SIGMA);
    let json = dir.path().join("r.json");
    let args = [
        "verify",
        cfg.to_str().unwrap(),
        "--json",
        json.to_str().unwrap(),
    ];

    // a default tolerance far below the residuals fails every check without its own tolerance
    let o = paranull(&args, &[(TOLERANCE_ENV, "1e-300")]);
    assert_eq!(code(&o), EXIT_CHECK_FAILURE);
    let with_own = write_config(
        &dir,
        "t.toml",
        &format!("{SIGMA}[tolerances]\nnullity = 1e-8\neigenvalues = 1e-6\n"),
    );
    let o = paranull(
        &["verify", with_own.to_str().unwrap()],
        &[(TOLERANCE_ENV, "1e-300")],
    );
    assert_eq!(code(&o), EXIT_PASS);
    assert_eq!(
        code(&paranull(&args, &[(TOLERANCE_ENV, "-1")])),
        EXIT_CONFIG_ERROR
    );
    assert_eq!(
        code(&paranull(&args, &[(TOLERANCE_ENV, "abc")])),
        EXIT_CONFIG_ERROR
    );

    let o = paranull(&args, &[(DERIVATIVES_ENV, "fd")]);
    assert_eq!(code(&o), EXIT_PASS);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["environment"]["derivative_mode"], "fd");
    assert!(v["checks"][0]["fd_error"].as_f64().unwrap() > 0.0);
    assert_eq!(
        code(&paranull(&args, &[(DERIVATIVES_ENV, "spline")])),
        EXIT_CONFIG_ERROR
    );
}

#[test]
fn sweep_matches_closed_form_mean_curvatures() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("sweep.json");
    let md = dir.path().join("sweep.md");
    let o = paranull(
        &[
            "sweep",
            "sigma-t",
            "--space",
            "s2xs2",
            "--t",
            "0,0.5,-0.9",
            "--json",
            json.to_str().unwrap(),
            "--md",
            md.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(code(&o), EXIT_PASS);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows[0]["mean"].as_f64().unwrap().abs() < 1e-12);
    assert!((rows[1]["mean"].as_f64().unwrap() - 0.272166).abs() < 1e-6);
    for r in rows {
        assert!((r["minus8_l1l2"].as_f64().unwrap() - r["rbar"].as_f64().unwrap()).abs() < 1e-6);
    }
    assert!(std::fs::read_to_string(&md)
        .unwrap()
        .contains("**Overall: PASS**"));

    let o = paranull(
        &[
            "sweep",
            "sigma-t",
            "--space",
            "h2xh2",
            "--t",
            "0.5",
            "--json",
            json.to_str().unwrap(),
        ],
        &[],
    );
    assert_eq!(code(&o), EXIT_PASS);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!((v["rows"][0]["mean"].as_f64().unwrap() - 0.544331).abs() < 1e-6);
    assert_eq!(v["rows"][0]["rbar"], -4.0);

    assert_eq!(
        code(&paranull(
            &["sweep", "sigma-t", "--space", "flat", "--t", "0.5"],
            &[]
        )),
        EXIT_CONFIG_ERROR
    );
    assert_eq!(
        code(&paranull(
            &["sweep", "sigma-t", "--space", "s2xs2", "--t", "1.0"],
            &[]
        )),
        EXIT_CONSTRUCTION_ERROR
    );
}

#[test]
fn runner_examples() {
    let cfg = ScenarioConfig::load(&manifest("scenarios/null_plane.toml")).unwrap();
    let r = run(&cfg, &RunOptions::default()).unwrap();
    assert!(r.passed());
    assert_eq!(
        r.check(CheckId::TotallyGeodesic).unwrap().max_residual,
        Some(0.0)
    );

    // checks whose preconditions fail are reported, not run
    let text = SIGMA.replace(
        "[\"nullity\", \"eigenvalues\"]",
        "[\"totally-geodesic\", \"mab-counterexample\", \"minimal\"]",
    );
    let r = run(
        &ScenarioConfig::parse(&text).unwrap(),
        &RunOptions::default(),
    )
    .unwrap();
    assert!(r.passed());
    for c in &r.checks {
        assert_eq!(c.status, CheckStatus::NotApplicable);
        assert!(c.note.is_some());
    }

    // the same config twice gives identical reports
    let cfg = ScenarioConfig::load(&manifest("scenarios/full_suite_s2.toml")).unwrap();
    let a = run(&cfg, &RunOptions::default()).unwrap();
    let b = run(&cfg, &RunOptions::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    assert!(a.passed(), "{}", a.to_markdown());
}
