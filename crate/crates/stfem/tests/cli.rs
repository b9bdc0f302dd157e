//! CLI behavior: subcommands, config files, flag overrides, report
//! emission, and exit codes (0 success, 2 config error, 3 CFL violation,
//! 4 solver failure).

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_stfem"))
}

#[test]
fn list_solutions_prints_registry() {
    let out = bin().arg("list-solutions").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    for id in [
        "zero",
        "heat_sine",
        "heat_poly_exact",
        "wave_standing",
        "wave_poly_exact",
        "wave_damped_standing",
    ] {
        assert!(text.contains(id), "missing {id} in listing:\n{text}");
    }
}

#[test]
fn verify_subcommand_passes() {
    let out = bin().arg("verify").output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(text.matches("[PASS]").count(), 12, "{text}");
    assert!(!text.contains("[FAIL]"));
}

#[test]
fn missing_method_is_a_config_error() {
    let out = bin()
        .args(["solve", "--solution", "heat_sine"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_solution_is_a_config_error() {
    let out = bin()
        .args(["solve", "--method", "heat-jamet", "--solution", "bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_degree_is_a_config_error() {
    let out = bin()
        .args([
            "solve",
            "--method",
            "wave-walkington",
            "--q",
            "1",
            "--solution",
            "wave_standing",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn solve_emits_json_report_to_stdout() {
    let out = bin()
        .args([
            "solve",
            "--method",
            "heat-jamet",
            "--q",
            "1",
            "--p",
            "2",
            "--elements",
            "8",
            "--slabs",
            "4",
            "--T",
            "0.5",
            "--solution",
            "heat_sine",
            "--norms",
            "linf-l2,l2-qt",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("stdout is a JSON report");
    assert_eq!(report["levels"].as_array().unwrap().len(), 1);
    assert_eq!(report["levels"][0]["errors"].as_array().unwrap().len(), 2);
    assert!(report["levels"][0]["errors"][0]["value"].as_f64().unwrap() > 0.0);
}

#[test]
fn study_writes_csv_file_and_flags_override_config_file() {
    let dir = std::env::temp_dir().join("stfem-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("study.cfg");
    let out_path = dir.join("report.csv");
    std::fs::write(
        &config_path,
        "# refinement study\n\
         [discretization]\n\
         method = heat-jamet\n\
         q = 1\n\
         p = 2\n\
         [mesh]\n\
         elements = 16\n\
         slabs = 2\n\
         T = 0.5\n\
         [study]\n\
         solution = heat_sine\n\
         refine = tau\n\
         levels = 2\n\
         norms = linf-l2\n\
         format = json\n",
    )
    .unwrap();
    // Flags override: 3 levels and csv output.
    let out = bin()
        .args([
            "study",
            "--config",
            config_path.to_str().unwrap(),
            "--levels",
            "3",
            "--format",
            "csv",
            "--out",
            out_path.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = std::fs::read_to_string(&out_path).unwrap();
    let lines: Vec<&str> = csv.trim_end().lines().collect();
    assert_eq!(lines.len(), 4, "header + 3 levels:\n{csv}");
    assert!(lines[0].starts_with("level,param,err_linf-l2,eoc_linf-l2"));
    // Two EOC cells filled (rows 2 and 3), first row empty.
    assert!(lines[1].ends_with(','));
    assert!(!lines[3].ends_with(','));
}

#[test]
fn bad_config_file_line_is_reported() {
    let dir = std::env::temp_dir().join("stfem-cli-test-bad");
    std::fs::create_dir_all(&dir).unwrap();
    let config_path = dir.join("bad.cfg");
    std::fs::write(&config_path, "method = heat-jamet\nwhat = 1\n").unwrap();
    let out = bin()
        .args(["solve", "--config", config_path.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line 2"), "{stderr}");
}

#[test]
fn preflight_contamination_is_a_config_error() {
    // Deliberately coarse fixed spatial mesh under tau refinement.
    let out = bin()
        .args([
            "study",
            "--method",
            "heat-jamet",
            "--q",
            "2",
            "--p",
            "1",
            "--elements",
            "3",
            "--slabs",
            "2",
            "--T",
            "0.5",
            "--solution",
            "heat_sine",
            "--refine",
            "tau",
            "--levels",
            "3",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("too coarse"), "{stderr}");
}

#[test]
fn catalog_render_matches_committed_file() {
    let out = bin().arg("catalog").output().unwrap();
    assert!(out.status.success());
    let rendered = String::from_utf8_lossy(&out.stdout);
    let committed = std::fs::read_to_string(
        std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/method_catalog.md"),
    )
    .expect("docs/method_catalog.md present");
    assert_eq!(
        rendered, committed,
        "docs/method_catalog.md is stale; regenerate with `cargo run --example gen_catalog`"
    );
}

#[test]
fn identical_study_configs_reproduce_reports() {
    let args = [
        "study",
        "--method",
        "wave-walkington",
        "--q",
        "2",
        "--p",
        "2",
        "--elements",
        "8",
        "--slabs",
        "2",
        "--T",
        "0.5",
        "--solution",
        "wave_standing",
        "--refine",
        "tau",
        "--levels",
        "2",
    ];
    let a = bin().args(args).output().unwrap();
    let b = bin().args(args).output().unwrap();
    assert!(a.status.success() && b.status.success());
    let strip = |raw: &[u8]| -> serde_json::Value {
        let mut v: serde_json::Value = serde_json::from_slice(raw).unwrap();
        for level in v["levels"].as_array_mut().unwrap() {
            level["wall_seconds"] = 0.0.into();
        }
        v
    };
    // Bit-identical numeric content once timings are removed.
    assert_eq!(
        serde_json::to_string(&strip(&a.stdout)).unwrap(),
        serde_json::to_string(&strip(&b.stdout)).unwrap()
    );
}
