use std::path::Path;
use std::process::{Command, Output};

fn dtoric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dtoric")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn read(p: &Path) -> String {
    std::fs::read_to_string(p).unwrap()
}

#[test]
fn build_writes_json_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("unit.json");
    let out = dtoric(&["build", "unit", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let json: serde_json::Value = serde_json::from_str(&read(&path)).unwrap();
    assert_eq!(json["n"], 6);
    let manifest: serde_json::Value = serde_json::from_str(&read(&dir.path().join("unit.json.manifest.json"))).unwrap();
    assert_eq!(manifest["command"], "build");
    assert!(manifest["duration_seconds"].is_number());
}

#[test]
fn l_shape_origin_is_two_vertical() {
    let a = dtoric(&["build", "lshape:0,0"]);
    let b = dtoric(&["build", "two_vertical"]);
    let ja: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let jb: serde_json::Value = serde_json::from_slice(&b.stdout).unwrap();
    assert_eq!(ja["stabilizers"], jb["stabilizers"]);
    assert_eq!(ja["n"], jb["n"]);
}

#[test]
fn verify_exit_codes() {
    let out = dtoric(&["verify", "unit", "--kl"]);
    assert_eq!(code(&out), 0);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["distance"], 2);
    assert_eq!(report["distance_kl"], 2);

    let out = dtoric(&["verify", "two_vertical"]);
    assert_eq!(code(&out), 1);
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["verdict"], "mismatch");

    assert_eq!(code(&dtoric(&["verify", "unit", "--w-max", "1"])), 2);
}

#[test]
fn verify_reads_a_json_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("code.json");
    std::fs::write(&path, dtoric(&["build", "two_horizontal"]).stdout).unwrap();
    assert_eq!(code(&dtoric(&["verify", path.to_str().unwrap()])), 0);

    std::fs::write(&path, "{ not json").unwrap();
    assert_eq!(code(&dtoric(&["verify", path.to_str().unwrap()])), 64);
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&dtoric(&["frobnicate"])), 64);
    assert_eq!(code(&dtoric(&["verify", "no_such_code"])), 64);
    assert_eq!(code(&dtoric(&["dephase", "--code", "unit", "--kind", "sideways"])), 64);
    assert_eq!(code(&dtoric(&["--help"])), 0);
}

#[test]
fn dephase_csv_shape() {
    let out = dtoric(&[
        "dephase", "--code", "unit", "--kind", "global", "--theta", "1.0", "--phi", "0.5", "--gamma", "1", "--t-grid",
        "0:1:4",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 2 * 5);
    assert!(lines[1].contains(",engine,") && lines[2].contains(",closed_form,"));
    let cols = lines[0].split(',').count();
    assert!(lines[1..].iter().all(|l| l.split(',').count() == cols));
}

#[test]
fn dephase_monte_carlo_needs_seed() {
    let base = [
        "dephase",
        "--code",
        "unit",
        "--kind",
        "local",
        "--theta",
        "1.0",
        "--phi",
        "0.5",
        "--gamma",
        "1",
        "--t-grid",
        "0:1:2",
        "--mc-samples",
        "1000",
    ];
    assert_eq!(code(&dtoric(&base)), 64);
    let mut seeded = base.to_vec();
    seeded.extend(["--seed", "3"]);
    assert_eq!(code(&dtoric(&seeded)), 0);
}

#[test]
fn family_table() {
    let out = dtoric(&["family", "--p-max", "4"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "p,n,m,k,d,rate,verified,distance");
    assert_eq!(lines.len(), 5);
    assert!(lines[1].starts_with("1,6,4,2,2,"));

    assert_eq!(code(&dtoric(&["family", "--p-max", "2", "--verify-max-p", "2"])), 1);
}

#[test]
fn repeated_runs_are_byte_identical() {
    let runs = [
        vec!["verify", "grid_2x2", "--kl"],
        vec!["build", "lshape:1,1,matrix"],
        vec![
            "dephase",
            "--code",
            "unit",
            "--kind",
            "local",
            "--theta",
            "0.7",
            "--phi",
            "2",
            "--gamma",
            "0.5",
            "--t-grid",
            "0:2:4",
            "--mc-samples",
            "20000",
            "--seed",
            "11",
        ],
    ];
    for args in runs {
        let a = dtoric(&args);
        let b = dtoric(&args);
        let mut threaded = vec!["--threads", "2"];
        threaded.extend(&args);
        let c = dtoric(&threaded);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, c.stdout, "{args:?}");
    }
}
