use std::process::{Command, Output};

fn octomagic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octomagic"))
        .args(args)
        .env_remove("OCTOMAGIC_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn m3_table_as_csv() {
    let out = octomagic(&["tables", "--which", "m3", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].starts_with("row,"));
    assert!(lines[1].starts_with("R,f4(-52),f4(-52),f4(4),f4(4)"), "{}", lines[1]);
    assert!(lines[4].starts_with("O,e8(-248),e8(-24),e8(-24),e8(8)"), "{}", lines[4]);
}

#[test]
fn quaternionic_octonionic_hyperbolic_plane() {
    let out = octomagic(&["coset", "plane", "H", "O", "--kind", "H", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = stdout_json(&out);
    assert_eq!(v["schema_version"], 1);
    let t = &v["report"]["tangent"];
    assert_eq!((t["nc"].as_u64(), t["c"].as_u64()), (Some(64), Some(0)));
    assert_eq!(v["report"]["k_dim"], 69);
    assert_eq!(v["report"]["curvature"]["bianchi"], true);
}

#[test]
fn construct_e8() {
    let out = octomagic(&["construct", "m3", "O", "O", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["report"]["dim"], 248);
    assert_eq!(v["report"]["label"], "e8(-248)");
}

#[test]
fn octonionic_line_text() {
    let out = octomagic(&["coset", "line", "R", "O", "--lambda", "3/2"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("OP1: g so(9)"), "{text}");
    assert!(text.trim_end().ends_with("PASS"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["tables", "--which", "m7"][..],
        &["construct", "m4", "O", "O"],
        &["construct", "m3", "X", "O"],
        &["coset", "line", "R", "O", "--kind", "H~"],
        &["coset", "line", "R", "O", "--lambda", "-1"],
        &["frobnicate"],
    ] {
        let out = octomagic(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn report_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("acc.json");
    let out = octomagic(&["accounting", "--format", "json", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["report"].as_array().unwrap().len(), 10);
}
