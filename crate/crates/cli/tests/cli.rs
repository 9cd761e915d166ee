use std::process::{Command, Output};

fn gva(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gva"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn phi_one_in_alpha_modes() {
    let o = gva(&["phi", "--n", "1", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "3/16*a(-1)^2*e[2] - 1/8*a(-2)*e[2]");
}

#[test]
fn phi_json_round_trips_through_ope_argument() {
    let o = gva(&["phi", "--n", "2", "--format", "json", "--osc", "w"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["weight"], 5);
    assert_eq!(v["terms"].as_array().unwrap().len(), 5);
    let text = v["text"].as_str().unwrap();
    let o = gva(&["ope", "--left", text, "--right", "vac", "--n", "-1"]);
    assert_eq!(o.status.code(), Some(0));
    let again = gva(&["phi", "--n", "2"]);
    assert_eq!(stdout(&o).trim(), format!("u(-1)v = {}", stdout(&again).trim()));
}

#[test]
fn jet_of_rc_ends_in_five_q_five() {
    let o = gva(&["jet", "--ring", "RC", "--max-weight", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let series = out.lines().next().unwrap();
    assert!(series.ends_with("+ 5q^5"), "{series}");
    assert!(out.contains("first at q^5: 5 vs 4"), "{out}");
}

#[test]
fn jet_accepts_a_ring_file() {
    let dir = std::env::temp_dir().join(format!("gva-ring-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ring.json");
    std::fs::write(&path, r#"{"vars": [["x", 1]], "rels": ["x*x"]}"#).unwrap();
    let o = gva(&["jet", "--ring", path.to_str().unwrap(), "--max-weight", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 + q + q^2 + q^3 + 2q^4");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_borcherds_at_weight_four() {
    let o = gva(&["verify", "--suite", "borcherds", "--max-weight", "4"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("PASS borcherds"));
}

#[test]
fn json_is_byte_identical_across_runs() {
    let args = ["verify", "--suite", "rho", "--max-weight", "2", "--format", "json"];
    let a = gva(&args);
    let b = gva(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let args = ["commutant", "--of", "W", "--in", "VA1", "--max-weight", "5", "--format", "json"];
    assert_eq!(gva(&args).stdout, gva(&args).stdout);
}

#[test]
fn progress_stays_off_the_report_stream() {
    let o = gva(&["char", "--space", "C", "--max-weight", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert!(String::from_utf8_lossy(&o.stderr).contains("[gva]"));
}

#[test]
fn duality_and_zhu_pass() {
    let o = gva(&["duality", "--max-weight", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("duality: match"));
    let o = gva(&["zhu", "--space", "C", "--max-weight", "7", "--left", "phi1", "--right", "phi1"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("quotient by weight: 1, 1, 0, 1, 0, 1, 0, 1"), "{out}");
    assert!(out.contains("[u][v]   = 0"));
}

#[test]
fn output_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("gva-out-{}.txt", std::process::id()));
    let o = gva(&["sl2", "--max-weight", "5", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("det 5/2"));
    std::fs::remove_file(path).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(gva(&["nonsense"]).status.code(), Some(2));
    assert_eq!(gva(&["basis", "--space", "nope"]).status.code(), Some(2));
    assert_eq!(gva(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(gva(&["ope", "--left", "w(-1", "--right", "vac"]).status.code(), Some(2));
    assert_eq!(gva(&["ope", "--left", "vac", "--right", "vac", "--n", "1/3"]).status.code(), Some(2));
    assert_eq!(gva(&["zhu", "--space", "C", "--generalized"]).status.code(), Some(2));
}
