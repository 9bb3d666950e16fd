//! Black-box tests of the `ramcert` binary: exit codes, report shapes,
//! config/flag/env precedence, and byte-level determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

const C5: &str = r#"{"vertices":5,"edges":[[0,1],[1,2],[2,3],[3,4],[0,4]]}"#;
const K2: &str = r#"{"vertices":2,"edges":[[0,1]]}"#;
const K3: &str = r#"{"vertices":3,"edges":[[0,1],[0,2],[1,2]]}"#;
const P3: &str = r#"{"vertices":3,"edges":[[0,1],[1,2]]}"#;
const TWO_POINTS: &str = r#"{"vertices":2,"facets":[[0],[1]]}"#;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ramcert"));
    // isolate from the ambient environment
    cmd.env_remove("RAMCERT_BUDGET_CELLS");
    cmd
}

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, content).expect("write fixture");
    path
}

fn run(cmd: &mut Command) -> Output {
    cmd.output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf-8 stderr")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

/// Replace the wall-clock `"ms":…` value with a constant so reports can
/// be compared byte for byte.
fn scrub_ms(report: &str) -> String {
    let Some(start) = report.find("\"ms\":") else {
        return report.to_string();
    };
    let digits_start = start + "\"ms\":".len();
    let digits_end = report[digits_start..]
        .find(|c: char| !c.is_ascii_digit())
        .map(|i| digits_start + i)
        .unwrap_or(report.len());
    format!("{}0{}", &report[..digits_start], &report[digits_end..])
}

#[test]
fn certified_chromatic_bound_exits_zero() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.json", C5);
    let out = run(bin()
        .args(["certify-chromatic", "--graph"])
        .arg(&graph)
        .args(["--colors", "2", "--p", "2", "--k", "1"]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json report");
    assert_eq!(report["verdict"], "certified");
    assert_eq!(report["kind"], "chromatic");
    assert_eq!(report["reason"], "");
    assert_eq!(report["n"], 2);
}

#[test]
fn mathematically_inconclusive_still_exits_zero() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.json", C5);
    let out = run(bin()
        .args(["certify-chromatic", "--graph"])
        .arg(&graph)
        .args(["--colors", "3", "--p", "2", "--k", "1"]));
    assert_eq!(code(&out), 0, "a completed run is not a failure");
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json report");
    assert_eq!(report["verdict"], "inconclusive");
    assert_eq!(report["reason"], "betti nonzero at degree 1");
}

#[test]
fn budget_exhaustion_exits_two() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "k3.json", K3);
    let out = run(bin()
        .args(["--budget-cells", "1000", "certify-ramsey", "--graph"])
        .arg(&graph)
        .args(["--colors", "2", "--N", "6", "--p", "2", "--k", "2"]));
    assert_eq!(code(&out), 2, "stderr: {}", stderr_of(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json report");
    assert_eq!(report["verdict"], "inconclusive");
    assert_eq!(report["reason"], "budget");
    assert_eq!(
        report["betti"],
        serde_json::json!({}),
        "no Betti table on a partial build"
    );
}

#[test]
fn errors_exit_one_with_message() {
    let dir = TempDir::new().unwrap();
    // a ground vertex that is not a face violates the certification precondition
    let complex = write(&dir, "bad.json", r#"{"vertices":2,"facets":[[0]]}"#);
    let out = run(bin()
        .args(["certify-partition", "--complex"])
        .arg(&complex)
        .args(["--colors", "2", "--p", "2", "--k", "1"]));
    assert_eq!(code(&out), 1);
    assert!(
        stderr_of(&out).starts_with("error:"),
        "stderr: {}",
        stderr_of(&out)
    );

    let out = run(bin().args(["oracle", "chromatic", "--graph", "/nonexistent.json"]));
    assert_eq!(code(&out), 1);
    assert!(stderr_of(&out).contains("cannot read"));
}

#[test]
fn malformed_json_reports_path_line_and_column() {
    let dir = TempDir::new().unwrap();
    let graph = write(
        &dir,
        "broken.json",
        "{\"vertices\": 3,\n  \"edges\": [[0,1]",
    );
    let out = run(bin().args(["oracle", "chromatic", "--graph"]).arg(&graph));
    assert_eq!(code(&out), 1);
    let err = stderr_of(&out);
    assert!(
        err.contains("parse error in") && err.contains("broken.json") && err.contains("line 2"),
        "parse errors must carry path, line, and column: {err}"
    );
}

#[test]
fn reports_are_byte_identical_across_runs_and_worker_counts() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.json", C5);
    let mut reports = Vec::new();
    for workers in ["1", "4", "4"] {
        let out = run(bin()
            .args(["--workers", workers, "certify-chromatic", "--graph"])
            .arg(&graph)
            .args(["--colors", "2", "--p", "2", "--k", "1"]));
        assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
        reports.push(scrub_ms(stdout_of(&out).trim_end()));
    }
    assert_eq!(
        reports[0], reports[1],
        "worker count must not change the report"
    );
    assert_eq!(
        reports[1], reports[2],
        "repeat runs must agree byte for byte"
    );
}

#[test]
fn selfcheck_passes_and_lists_suites() {
    let out = run(bin().args(["selfcheck", "--trials", "50"]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = stdout_of(&out);
    assert_eq!(text.lines().filter(|l| l.starts_with("ok  ")).count(), 5);
    assert!(!text.contains("FAIL"));
}

#[test]
fn config_file_supplies_command_and_arguments() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.json", C5);
    let config = write(
        &dir,
        "job.json",
        &format!(
            r#"{{"command":"oracle-chromatic","graph":{}}}"#,
            serde_json::to_string(&graph).unwrap()
        ),
    );
    let out = run(bin().arg("--config").arg(&config));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(stdout_of(&out).trim_end(), r#"{"chromatic":3}"#);
}

#[test]
fn flags_override_config_values() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "two.json", TWO_POINTS);
    let config = write(
        &dir,
        "job.json",
        &format!(
            r#"{{"command":"certify-partition","complex":{},"colors":2,"p":2,"k":1}}"#,
            serde_json::to_string(&complex).unwrap()
        ),
    );
    let from_config = run(bin().arg("--config").arg(&config));
    assert_eq!(code(&from_config), 0);
    let report: serde_json::Value =
        serde_json::from_str(&stdout_of(&from_config)).expect("json report");
    assert_eq!(report["n"], 2);

    let overridden =
        run(bin()
            .arg("--config")
            .arg(&config)
            .args(["certify-partition", "--colors", "3"]));
    assert_eq!(code(&overridden), 0);
    let report: serde_json::Value =
        serde_json::from_str(&stdout_of(&overridden)).expect("json report");
    assert_eq!(report["n"], 3, "the flag must win over the config value");
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = TempDir::new().unwrap();
    let config = write(&dir, "job.json", r#"{"command":"selfcheck","trails":9}"#);
    let out = run(bin().arg("--config").arg(&config));
    assert_eq!(code(&out), 1);
    assert!(
        stderr_of(&out).contains("trails"),
        "stderr: {}",
        stderr_of(&out)
    );
}

#[test]
fn budget_precedence_env_config_flag() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.json", C5);
    let certify = |cmd: &mut Command| {
        cmd.args(["certify-chromatic", "--graph"])
            .arg(&graph)
            .args(["--colors", "2", "--p", "2", "--k", "1"]);
        run(cmd)
    };

    // environment variable alone starves the run
    let out = certify(bin().env("RAMCERT_BUDGET_CELLS", "2"));
    assert_eq!(code(&out), 2, "tiny env budget must exhaust");

    // a config budget overrides the environment
    let config = write(&dir, "budget.json", r#"{"budget_cells":100000}"#);
    let out = certify(
        bin()
            .env("RAMCERT_BUDGET_CELLS", "2")
            .arg("--config")
            .arg(&config),
    );
    assert_eq!(code(&out), 0, "config budget must override the environment");

    // the flag overrides the config
    let out = certify(
        bin()
            .env("RAMCERT_BUDGET_CELLS", "2")
            .arg("--config")
            .arg(&config)
            .args(["--budget-cells", "2"]),
    );
    assert_eq!(code(&out), 2, "flag budget must override the config");

    // a zero budget is rejected outright
    let out = certify(bin().args(["--budget-cells", "0"]));
    assert_eq!(code(&out), 1);
}

#[test]
fn build_betti_pipeline_reproduces_the_circle() {
    let dir = TempDir::new().unwrap();
    let k2 = write(&dir, "k2.json", K2);
    let k3 = write(&dir, "k3.json", K3);
    let skeleton = dir.path().join("skeleton.json");

    let out = run(bin()
        .arg("--output")
        .arg(&skeleton)
        .args(["build", "hom", "--source"])
        .arg(&k2)
        .arg("--target")
        .arg(&k3)
        .args(["--max-dim", "2"]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    assert!(skeleton.is_file(), "--output must write the report file");
    assert!(
        stdout_of(&out).is_empty(),
        "report goes to the file, not stdout"
    );

    let out = run(bin()
        .args(["betti", "--skeleton"])
        .arg(&skeleton)
        .args(["--p", "2"]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    assert_eq!(
        stdout_of(&out).trim_end(),
        r#"{"p":2,"betti":{"-1":0,"0":0,"1":1},"truncation":1}"#,
        "Hom(K2,K3) is a hexagon: one circle"
    );
}

#[test]
fn build_part_counts_match_the_coloring_oracle() {
    let dir = TempDir::new().unwrap();
    let complex = write(&dir, "two.json", TWO_POINTS);

    // vertices of the partition complex are exactly the face colorings
    let built = run(bin()
        .args(["build", "part", "--complex"])
        .arg(&complex)
        .args(["--colors", "2", "--max-dim", "0"]));
    assert_eq!(code(&built), 0, "stderr: {}", stderr_of(&built));
    let skel: serde_json::Value = serde_json::from_str(&stdout_of(&built)).expect("json");
    assert_eq!(
        skel["dims"],
        serde_json::json!([2]),
        "two points admit exactly the two swaps"
    );
    assert_eq!(
        skel["cells"]["0"].as_array().expect("dimension 0").len(),
        2,
        "the cell list must match the declared dimension counts"
    );

    let witness = run(bin()
        .args(["oracle", "face-coloring", "--complex"])
        .arg(&complex)
        .args(["--colors", "2"]));
    assert_eq!(code(&witness), 0);
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&witness)).expect("json");
    assert_eq!(report["witness"]["assignment"], serde_json::json!([1, 2]));
}

#[test]
fn oracle_reports_have_stable_shapes() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.json", P3);

    let holds = run(bin()
        .args(["oracle", "ramsey", "--graph"])
        .arg(&p3)
        .args(["--colors", "2", "--N", "3"]));
    assert_eq!(code(&holds), 0);
    assert_eq!(stdout_of(&holds).trim_end(), r#"{"holds":true}"#);

    let fails = run(bin()
        .args(["oracle", "ramsey", "--graph"])
        .arg(&p3)
        .args(["--colors", "2", "--N", "2"]));
    assert_eq!(
        code(&fails),
        0,
        "a false Ramsey property is still a completed run"
    );
    assert_eq!(stdout_of(&fails).trim_end(), r#"{"holds":false}"#);

    let dir2 = TempDir::new().unwrap();
    let two = write(&dir2, "two.json", TWO_POINTS);
    let none = run(bin()
        .args(["oracle", "face-coloring", "--complex"])
        .arg(&two)
        .args(["--colors", "1"]));
    assert_eq!(code(&none), 0);
    assert_eq!(
        stdout_of(&none).trim_end(),
        r#"{"witness":null}"#,
        "two points cannot share one color class unless it is a face"
    );
}

#[test]
fn ramsey_certificate_and_oracle_agree_on_the_hexagon_case() {
    let dir = TempDir::new().unwrap();
    let p3 = write(&dir, "p3.json", P3);
    let out = run(bin()
        .args(["certify-ramsey", "--graph"])
        .arg(&p3)
        .args(["--colors", "2", "--N", "3", "--p", "2", "--k", "1"]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).expect("json report");
    assert_eq!(report["verdict"], "certified");
    assert_eq!(report["N"], 3);
    assert_eq!(report["cells"], serde_json::json!([6, 6]));
}

#[test]
fn missing_arguments_name_the_flag() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.json", C5);
    let out = run(bin()
        .args(["certify-chromatic", "--graph"])
        .arg(&graph)
        .args(["--p", "2", "--k", "1"]));
    assert_eq!(code(&out), 1);
    assert!(
        stderr_of(&out).contains("--colors"),
        "the error must name the missing flag: {}",
        stderr_of(&out)
    );
}

#[test]
fn output_flag_writes_the_report_file() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "c5.json", C5);
    let report_path = dir.path().join("certificate.json");
    let out = run(bin()
        .arg("--output")
        .arg(&report_path)
        .args(["certify-chromatic", "--graph"])
        .arg(&graph)
        .args(["--colors", "2", "--p", "2", "--k", "1"]));
    assert_eq!(code(&out), 0, "stderr: {}", stderr_of(&out));
    let text = std::fs::read_to_string(&report_path).expect("report file");
    let report: serde_json::Value = serde_json::from_str(&text).expect("json report");
    assert_eq!(report["verdict"], "certified");
    assert!(text.ends_with('\n'), "file reports end with a newline");
}
