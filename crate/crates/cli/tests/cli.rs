use std::process::{Command, Output};

use affine_cells::{AffinePermutation, AmbcTriple};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_affine-cells"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let v: Value = serde_json::from_str(&ok(&full)).unwrap();
    assert_eq!(v["schema"], "affine-cells/1");
    v
}

const EXAMPLE_WINDOW: &str = "[12,2,-8,15,-5,5]";
const EXAMPLE_TRIPLE: &str = "({1,4|2,5|3,6},{1,4|2,6|3,5},(-2,0,2))";
const W_PRIME: &str = "[-1,2,4,3,6,7]";
const W_DOUBLE_PRIME: &str = "[0,1,4,3,5,8]";

fn inv(w: &str) -> String {
    w.parse::<AffinePermutation>().unwrap().inverse().to_string()
}

#[test]
fn ambc_worked_example() {
    assert_eq!(ok(&["ambc", EXAMPLE_WINDOW, "--shape", "2x3"]).trim(), EXAMPLE_TRIPLE);
    assert_eq!(ok(&["ambc", EXAMPLE_WINDOW]).trim(), EXAMPLE_TRIPLE);
    let v = json(&["ambc", EXAMPLE_WINDOW, "--shape", "2x3"]);
    let triple: AmbcTriple = serde_json::from_value(v["triple"].clone()).unwrap();
    assert_eq!(triple, EXAMPLE_TRIPLE.parse().unwrap());
}

#[test]
fn ambc_trivial_and_rejected() {
    assert_eq!(
        ok(&["ambc", "[3,2,1,6,5,4]", "--shape", "2x3"]).trim(),
        "({1,4|2,5|3,6},{1,4|2,5|3,6},(0,0,0))"
    );
    let out = run(&["ambc", "[1,2,3,4]", "--shape", "2x2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not in the two-sided cell"));
    assert_eq!(ok(&["ambc", "[3,0]"]).trim(), "({2|1},{1|2},(-1,1))");
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["ambc", "[1,2"][..],
        &["ambc", "[1,1]"],
        &["fbox", "2by2"],
        &["verify", "bogus"],
        &["relpos", "--c1", "[1,2,3,4]:(0,0)"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
    assert_eq!(run(&["ambc", "[2,1,4,3]", "--shape", "2x3"]).status.code(), Some(2));
}

#[test]
fn text_round_trips_through_psi() {
    for w in [EXAMPLE_WINDOW, "[15,2,-11,18,-7,4]", "[2,0,5,3]", "[4,1,5,2,6,3]"] {
        let triple = ok(&["ambc", w]);
        let back = ok(&["psi", triple.trim()]);
        assert_eq!(back.trim(), w);
        let again = ok(&["ambc", back.trim()]);
        assert_eq!(again, triple);
    }
}

#[test]
fn json_round_trips() {
    let v = json(&["psi", EXAMPLE_TRIPLE]);
    assert_eq!(v["window"], EXAMPLE_WINDOW);
    let triple: AmbcTriple = serde_json::from_value(v["triple"].clone()).unwrap();
    assert_eq!(triple.to_string(), EXAMPLE_TRIPLE);
    let w: AffinePermutation = serde_json::from_value(v["window"].clone()).unwrap();
    assert_eq!(w.to_string(), EXAMPLE_WINDOW);
}

#[test]
fn shape_and_fbox() {
    assert_eq!(ok(&["shape", EXAMPLE_WINDOW]).trim(), "(2,2,2)");
    let v = json(&["shape", "[1,2,3,4]"]);
    assert_eq!(v["partition"], serde_json::json!([4]));
    let listed = ok(&["fbox", "2x2", "--list"]);
    let windows: Vec<&str> = listed.lines().skip(1).collect();
    assert_eq!(windows.len(), 3);
    for w in windows {
        w.parse::<AffinePermutation>().unwrap();
    }
    for (shape, size) in [("2x2", 3), ("3x2", 10), ("2x3", 30)] {
        assert_eq!(json(&["fbox", shape])["size"], size);
    }
}

#[test]
fn knuth_class_dot() {
    let dir = std::env::temp_dir().join(format!("affine-cells-dot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("class.dot");
    ok(&["knuth-class", "[3,2,1,6,5,4]", "--dot", "--output", path.to_str().unwrap()]);
    let dot = std::fs::read_to_string(&path).unwrap();
    assert!(dot.starts_with("graph \"lkc_2x3\""));
    let vertices = dot.lines().filter(|l| l.trim_end().ends_with("\";")).count();
    assert_eq!(vertices, 30);

    let out = Command::new(env!("CARGO_BIN_EXE_affine-cells"))
        .args(["knuth-class", "[2,1,4,3,6,5]", "--dot"])
        .current_dir(&dir)
        .output()
        .unwrap();
    assert!(stdout(&out).contains("lkc_3x2.dot"));
    let default = std::fs::read_to_string(dir.join("lkc_3x2.dot")).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    assert_eq!(default.matches(" -- ").count(), 12);

    let v = json(&["knuth-class", "[2,1,4,3]"]);
    assert_eq!(v["vertices"].as_array().unwrap().len(), 3);
}

#[test]
fn relative_positions_of_worked_examples() {
    let c1 = "[1,2,3,4,5,6]:(0,0,0)".to_string();
    let c2 = format!("{}:(5,2,0)", inv(W_DOUBLE_PRIME));
    let out = ok(&["relpos", "--c1", &c1, "--c2", &c2]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines, [EXAMPLE_WINDOW, EXAMPLE_TRIPLE]);

    let d1 = format!("w:{};c:(1,1,0)", inv(W_PRIME));
    let d2 = format!("{}:(0,2,5)", inv(W_DOUBLE_PRIME));
    let v = json(&["relpos", "--c1", &d1, "--c2", &d2]);
    assert_eq!(v["window"], "[15,2,-11,18,-7,4]");
    assert_eq!(v["triple"]["rho"], serde_json::json!([-3, 0, 3]));

    let theta = ok(&["theta", "--c1", &c1, "--c2", &c2]);
    let dominant = theta.trim().parse::<AmbcTriple>().unwrap().dominant_representative();
    assert_eq!(dominant.to_string(), EXAMPLE_TRIPLE);
    assert_eq!(ok(&["theta", &c1]).trim(), "{1,4|2,5|3,6}");
}

#[test]
fn equivalence_of_pairs() {
    let c1 = "[1,2,3,4,5,6]:(0,0,0)";
    let c2 = format!("{}:(5,2,0)", inv(W_DOUBLE_PRIME));
    let d1 = "[1,2,3,4,5,6]:(1,0,-1)";
    let d2 = format!("{}:(6,2,-1)", inv(W_DOUBLE_PRIME));
    // Permuting c keeps the relative position; changing |c| does not.
    let e2 = format!("{}:(2,5,0)", inv(W_DOUBLE_PRIME));
    let f2 = format!("{}:(6,2,0)", inv(W_DOUBLE_PRIME));
    assert_eq!(ok(&["equiv", "--c1", c1, "--c2", &c2, "--d1", d1, "--d2", &d2]).trim(), "true");
    assert_eq!(ok(&["equiv", "--c1", c1, "--c2", &c2, "--d1", c1, "--d2", &e2]).trim(), "true");
    assert_eq!(ok(&["equiv", "--c1", c1, "--c2", &c2, "--d1", c1, "--d2", &f2]).trim(), "false");
    let same = |d: &str| ok(&["relpos", "--c1", c1, "--c2", d]).lines().next().unwrap().to_string();
    assert_eq!(same(&e2), EXAMPLE_WINDOW);
    assert_ne!(same(&f2), EXAMPLE_WINDOW);
}

#[test]
fn n2_tables_match_closed_forms() {
    let v = json(&["n2"]);
    let phi = v["fixture"]["phi_rows"].as_array().unwrap();
    // Families A, B, D start at k = 0 and C at k = 1.
    assert_eq!(phi.len(), 6 + 6 + 5 + 6);
    let row = phi.iter().find(|r| r["window"] == "[3,0]").unwrap();
    let triple: AmbcTriple = serde_json::from_value(row["triple"].clone()).unwrap();
    assert_eq!(triple.to_string(), "({2|1},{1|2},(-1,1))");
    assert_eq!(v["fixture"]["pair_rows"].as_array().unwrap().len(), 2 * 6 * 2);
}

#[test]
fn verify_suites() {
    let text = ok(&["verify", "n2"]);
    assert!(text.contains("0 failed"));
    let v = json(&["verify", "knuth", "--shape", "3x2"]);
    assert_eq!(v["ok"], true);
    assert!(v["reports"][0]["failed"] == 0);
}
