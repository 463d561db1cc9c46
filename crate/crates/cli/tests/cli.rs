use std::path::PathBuf;
use std::process::{Command, Output};

fn twobridge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twobridge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = twobridge(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twobridge-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn convert_reports_vector_and_even_cf() {
    let text = stdout(&["convert", "38/85"]);
    assert!(text.contains("0+[2,4,4,2]"));
    assert!(text.contains("vector (2,2,0,2,2,0,2,2)"));

    let json: serde_json::Value =
        serde_json::from_str(&stdout(&["convert", "38/85", "--json"])).unwrap();
    assert_eq!(json["even_cf"]["terms"], serde_json::json!([2, 4, 4, 2]));
    assert_eq!(json["vector"], serde_json::json!([2, 2, 0, 2, 2, 0, 2, 2]));
    assert_eq!(json["knot"], serde_json::json!({"p": 38, "q": 85}));
}

#[test]
fn negative_fractions_are_accepted() {
    let text = stdout(&["convert", "--", "-7/3"]);
    assert!(text.contains("-3+[2,-2]"));
    assert_eq!(stdout(&["cr", "--", "-1/9"]), "9\n");
}

#[test]
fn smaller_and_compare() {
    assert_eq!(stdout(&["smaller", "1/27"]), "{1/3, 1/9}\n");
    assert_eq!(stdout(&["compare", "38/85", "2/5"]), "38/85 > 2/5\n");
    assert_eq!(stdout(&["compare", "2/5", "38/85"]), "2/5 < 38/85\n");
    assert_eq!(stdout(&["compare", "1/3", "2/5"]), "1/3 || 2/5\n");
    let json = stdout(&["compare", "1/9", "1/3", "--json"]);
    assert!(json.contains(r#""relation": "greater""#));
}

#[test]
fn cm_text_and_json() {
    assert_eq!(stdout(&["cm", "5"]), "c_5 = 105\n");
    let json: serde_json::Value = serde_json::from_str(&stdout(&["cm", "5", "--json"])).unwrap();
    assert_eq!(json, serde_json::json!({"m": 5, "value": 105}));
}

#[test]
fn ek_modes() {
    assert_eq!(stdout(&["ek", "15"]), "EK(15) = 2 (witness 1/15)\n");
    assert_eq!(
        stdout(&["ek", "45", "--assisted"]),
        "EK(45) = 4 (witness 1/45)\n"
    );
    assert_eq!(stdout(&["ek", "6", "--exact"]), "EK(6) = 0\n");
}

#[test]
fn seams_negate_lift_torus() {
    assert!(stdout(&["seams", "1/27"]).contains("seams {8, 9, 17, 18}, 5 pieces"));
    assert!(stdout(&["seams", "1/27", "--wrt", "1/3"]).contains("seams {2, 3, 5, 6"));
    let negated = stdout(&["negate", "1/27", "--segments", "3,5"]);
    assert!(negated.starts_with("577/5499\n") && negated.contains("crossing number 30"));
    let all = stdout(&["negate", "1/27"]);
    assert!(all.contains("{5}\t17/315\t28"));
    assert!(stdout(&["lift", "1/3", "--target", "10"]).contains("crossing number 10"));
    assert!(stdout(&["torus", "45"]).contains("smaller {1/3, 1/5, 1/9, 1/15}"));
}

#[test]
fn enumerate_writes_a_catalog() {
    let path = scratch("catalog-7.json");
    stdout(&["enumerate", "7", "--out", path.to_str().unwrap()]);
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["n"], 7);
    assert_eq!(doc["knots"].as_array().unwrap().len(), 7);
    assert_eq!(doc["ek"], 0);
    assert!(stdout(&["enumerate", "9"]).ends_with("24 knots, EK(9) = 1\n"));
}

#[test]
fn config_file_and_flag_precedence() {
    let path = scratch("config.toml");
    std::fs::write(&path, "budget = 10\nworkers = 2\n").unwrap();
    let cfg = path.to_str().unwrap();
    let out = twobridge(&["ek", "12", "--config", cfg]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stdout(&["ek", "12", "--config", cfg, "--budget", "12"]).starts_with("EK(12) = 1 "));

    std::fs::write(&path, "budget = \"lots\"\n").unwrap();
    assert_eq!(
        twobridge(&["cm", "1", "--config", cfg]).status.code(),
        Some(2)
    );
}

#[test]
fn errors_have_distinct_codes_and_one_line_reasons() {
    let cases: [(&[&str], i32, &str); 6] = [
        (&["convert", "2/4"], 3, "invalid_fraction"),
        (&["smaller", "x/y"], 3, "invalid_fraction"),
        (&["frobnicate"], 2, "unknown_verb"),
        (&["ek", "30"], 4, "budget_exceeded"),
        (&["lift", "2/5", "--target", "11"], 5, "lift_target"),
        (
            &["cm", "1", "--config", "/nonexistent/twobridge.toml"],
            6,
            "io",
        ),
    ];
    for (args, code, kind) in cases {
        let out = twobridge(args);
        assert_eq!(out.status.code(), Some(code), "{args:?}");
        let err = String::from_utf8(out.stderr).unwrap();
        assert_eq!(err.lines().count(), 1, "{err}");
        let reason: serde_json::Value = serde_json::from_str(&err).unwrap();
        assert_eq!(reason["error"], kind);
    }
}

#[test]
fn verify_paper_is_independent_of_worker_count() {
    let one = twobridge(&["verify-paper", "--workers", "1"]);
    let four = twobridge(&["verify-paper", "--workers", "4"]);
    assert!(one.status.success());
    assert_eq!(one.stdout, four.stdout);
    let text = String::from_utf8(one.stdout).unwrap();
    assert!(text.ends_with("7/7 checks passed\n"));

    let j1 = twobridge(&["verify-paper", "--workers", "1", "--json"]);
    let j3 = twobridge(&["verify-paper", "--workers", "3", "--json"]);
    assert_eq!(j1.stdout, j3.stdout);
}
