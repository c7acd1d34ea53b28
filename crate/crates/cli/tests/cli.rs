use std::path::Path;
use std::process::{Command, Output};

fn errprompt(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_errprompt"))
        .args(args)
        .current_dir(dir)
        .env_remove("ERRPROMPT_SIDECAR_URL")
        .env("RUST_LOG", "warn")
        .output()
        .unwrap()
}

fn write_config(dir: &Path, extra: &str) {
    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/data");
    let text = format!(
        r#"task = "translate"
master_seed = 3
lang_pairs = ["en-de"]
models = ["mock-model"]
base_prompts = ["prompt3"]
replicates = 4
segments_per_pair = 5
{extra}

[buckets]
count = 3

[[profiles]]
kind = "orthographic"

[paths]
dataset = "{}/{{lang_pair}}.jsonl"
"#,
        data.display()
    );
    std::fs::write(dir.join("exp.toml"), text).unwrap();
}

#[test]
fn validate_run_analyze() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "");

    let out = errprompt(&["validate", "--config", "exp.toml"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));

    let out = errprompt(&["buckets", "--config", "exp.toml"], dir.path());
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("prompt3"));

    let out = errprompt(&["run", "--config", "exp.toml"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let records = std::fs::read_to_string(dir.path().join("out/records.jsonl")).unwrap();
    assert_eq!(records.lines().count(), 15);

    let out = errprompt(&["run", "--config", "exp.toml"], dir.path());
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(dir.path().join("out/records.jsonl")).unwrap(), records);

    let out = errprompt(&["analyze", "--config", "exp.toml", "--out", "reports"], dir.path());
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(dir.path().join("reports/correlations_chrf_surface_chrf.csv").exists());
    assert!(String::from_utf8_lossy(&out.stdout).contains("orthographic"));

    let out = errprompt(&["augment", "--config", "exp.toml", "--out", "prompts.jsonl"], dir.path());
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(dir.path().join("prompts.jsonl")).unwrap().lines().count(), 40);
}

#[test]
fn invalid_config_fails_loudly() {
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "max_in_flight = 0");
    let out = errprompt(&["validate", "--config", "exp.toml"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("max_in_flight"));
    let dir = tempfile::tempdir().unwrap();
    write_config(dir.path(), "colour = \"blue\"");
    let out = errprompt(&["run", "--config", "exp.toml"], dir.path());
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));
}
