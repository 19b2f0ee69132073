use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const SQUARE: &str = r#"{"dimension":2,"points":[
  {"label":"p1","coords":["0","0"]},{"label":"p2","coords":["1","0"]},
  {"label":"p3","coords":["1","1"]},{"label":"p4","coords":["0","1"]}]}"#;

const COLLINEAR: &str = r#"{"dimension":2,"points":[
  {"label":"a","coords":["0","0"]},{"label":"b","coords":["1","1"]},
  {"label":"c","coords":["2","2"]},{"label":"d","coords":["0","1"]}]}"#;

fn galecross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galecross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn generated_files_round_trip_byte_for_byte() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("pts.json");
    let o = galecross(&["gen", "--n", "8", "--d", "4", "--kind", "moment", "-o", path_str(&f)]);
    assert_eq!(code(&o), 0);
    let before = fs::read(&f).unwrap();
    assert_eq!(code(&galecross(&["check", "--in", path_str(&f), "--normalize"])), 0);
    assert_eq!(fs::read(&f).unwrap(), before);
    for cmd in ["gale", "separations"] {
        assert_eq!(code(&galecross(&[cmd, "--in", path_str(&f)])), 0, "{cmd}");
    }
    assert_eq!(code(&galecross(&["count", "--in", path_str(&f), "--sizes", "4,4"])), 0);
    assert_eq!(code(&galecross(&["verify", "lemma4", "--fixed", path_str(&f)])), 0);
}

#[test]
fn square_diagonals_meet_at_the_centre() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("square.json");
    fs::write(&f, SQUARE).unwrap();
    let o = galecross(&["cross", "--in", path_str(&f), "--a", "p1,p3", "--b", "p2,p4", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["witness"]["point"], serde_json::json!(["1/2", "1/2"]));
    let o = galecross(&["cross", "--in", path_str(&f), "--a", "p1,p2", "--b", "p3,p4", "--json"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains(r#""crossing":false"#));
}

#[test]
fn invalid_inputs_exit_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let degenerate = dir.path().join("deg.json");
    fs::write(&degenerate, COLLINEAR).unwrap();
    let o = galecross(&["count", "--in", path_str(&degenerate), "--sizes", "2,2"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("{a,b,c}"));

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\"dimension\": 2, \"points\": [").unwrap();
    assert_eq!(code(&galecross(&["gale", "--in", path_str(&broken)])), 2);

    let bad_rational = dir.path().join("zero.json");
    fs::write(&bad_rational, r#"{"dimension":1,"points":[{"label":"a","coords":["1/0"]}]}"#).unwrap();
    assert_eq!(code(&galecross(&["check", "--in", path_str(&bad_rational)])), 2);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&galecross(&["gale", "--in", path_str(&missing)])), 2);
    assert_eq!(code(&galecross(&["verify", "lemma5", "--d", "7"])), 2);
    assert_eq!(code(&galecross(&["verify", "lemma1", "--d", "2", "--n", "12"])), 2);
    assert_eq!(code(&galecross(&["bound", "--n", "7", "--d", "4", "--cd-lower", "4"])), 2);
    assert_eq!(code(&galecross(&["count", "--bogus"])), 2);
}

#[test]
fn seeded_reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for f in [&a, &b] {
        let o = galecross(&["verify", "vkf", "--k", "1", "--trials", "20", "--seed", "5", "-o", path_str(f)]);
        assert_eq!(code(&o), 0);
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn bound_prints_exact_integers() {
    let o = galecross(&["bound", "--n", "40", "--d", "4", "--cd-lower", "4", "--provenance", "lemma4", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["pairs_choose"], "76904685");
    assert_eq!(v["implied_crossing_lower_bound"], "307618740");
}
