use std::process::{Command, Output};

fn tqft(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tqft"))
        .args(args)
        .env_remove("TQFT_CACHE_DIR")
        .output()
        .expect("spawn tqft")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dim_of_four_punctured_sphere() {
    let o = tqft(&["dim", "--genus", "0", "--points", "1,1,1,1", "--level", "8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn dim_json() {
    let o = tqft(&["dim", "--points", "1,1,1,1", "--level", "8", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 2);
}

#[test]
fn check_at_level_six() {
    let o = tqft(&["check", "--points", "1,1,1,1", "--level", "6", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "irreducible");
    assert_eq!(v["dim"], 1);
}

#[test]
fn validate_recoupling_passes() {
    let o = tqft(&["validate-recoupling", "--level", "10", "--max-color", "3", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let entries = v["entries"].as_array().unwrap();
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["pass"] == true));
}

#[test]
fn invalid_spec_exits_one() {
    let o = tqft(&["dim", "--points", "1,1,1", "--level", "8"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tqft(&["dim", "--points", "1,1,1,1", "--level", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tqft(&["dim", "--points", "1,1,1,1"]);
    assert_eq!(o.status.code(), Some(1));
    let o = tqft(&["curve-op", "--points", "1,1,1,1", "--level", "8", "--curve", "edge:nope"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn matrix_json_round_trip_is_byte_identical() {
    for args in [
        vec!["twist", "--points", "1,1,1,1,2", "--level", "8", "--curve", "band:2..3"],
        vec!["push", "--points", "1,1,1,1,2", "--level", "8", "--gen", "3"],
        vec!["curve-op", "--points", "1,1,1,1", "--level", "10", "--curve", "cable:band:1..2:2"],
    ] {
        let o = tqft(&args);
        assert!(o.status.success(), "{args:?}");
        let text = stdout(&o);
        let m: tqft_core::matrix::Matrix = serde_json::from_str(text.trim()).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), text.trim());
    }
}

#[test]
fn cache_does_not_change_output() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["check", "--points", "1,1,2,2", "--level", "10", "--generators", "both", "--json"];
    let plain = tqft(&args);
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_tqft"))
            .args(args)
            .env("TQFT_CACHE_DIR", dir.path())
            .output()
            .unwrap()
    };
    let cold = run();
    assert!(dir.path().join("recoupling-v1-p10.json").exists());
    let warm = run();
    assert_eq!(plain.stdout, cold.stdout);
    assert_eq!(plain.stdout, warm.stdout);
}

#[test]
fn threads_do_not_change_output() {
    let base = ["check", "--points", "1,1,1,1,2", "--level", "10", "--json"];
    let one = tqft(&[&base[..], &["--threads", "1"]].concat());
    let four = tqft(&[&base[..], &["--threads", "4"]].concat());
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("basis.json");
    let o = tqft(&["basis", "--points", "1,1,1,1", "--level", "8", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.trim(), r#"[{"e1":0},{"e1":2}]"#);
}
