use std::process::{Command, Output};

fn octoleech(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_octoleech")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn field<'a>(text: &'a str, key: &str) -> Option<&'a str> {
    text.lines().find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(' ')))
}

#[test]
fn shortvecs_summary_and_deterministic_dump() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.txt"), dir.path().join("b.txt"));
    let out = octoleech(&["shortvecs", "--out", a.to_str().unwrap(), "--validate"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "total"), Some("196560"));
    assert_eq!(field(&text, "pairs"), Some("98280"));
    assert_eq!(field(&text, "shape s2"), Some("11520"));
    assert!(text.contains("validate ok"));
    assert!(octoleech(&["shortvecs", "--out", b.to_str().unwrap()]).status.success());
    let (da, db) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(da, db);
    assert_eq!(da.iter().filter(|&&c| c == b'\n').count(), 196560);
}

#[test]
fn group_orders() {
    for (spec, order, transitive) in [("A2", "6", "false"), ("S", "168", "false"), ("S,V0,V1,V3", "251596800", "true")] {
        let out = octoleech(&["group", "--gens", spec]);
        assert!(out.status.success(), "{spec}");
        let text = stdout(&out);
        assert_eq!(field(&text, "order"), Some(order));
        assert_eq!(field(&text, "degree"), Some("98280"));
        assert_eq!(field(&text, "transitive"), Some(transitive));
    }
}

#[test]
fn stretch_orders_need_a_flag() {
    let out = octoleech(&["group", "--gens", "S,V2,V5,V6,V0"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("--stretch"));
}

#[test]
fn bad_family_is_rejected() {
    let out = octoleech(&["group", "--gens", "S,V9"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown generator family"));
    assert!(!octoleech(&["design", "--target", "sphere", "--gens", "S"]).status.success());
}

#[test]
fn plane_designs() {
    let out = octoleech(&["design", "--target", "plane", "--gens", "S"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "points"), Some("21"));
    assert_eq!(field(&text, "strength"), Some("2"));
    assert_eq!(field(&text, "ambient"), Some("m=1 d=3"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let out = octoleech(&["design", "--target", "plane", "--gens", "S,V0,V1", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "points"), Some("819"));
    assert_eq!(field(&text, "strength"), Some("5"));
    assert_eq!(field(&text, "angles"), Some("0 1/4 1/2"));
    assert_eq!(field(&text, "tight"), Some("true"));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}

#[test]
fn plane_design_is_independent_of_workers() {
    let args = ["design", "--target", "plane", "--gens", "S,V4", "--mode", "transitive"];
    let one = octoleech(&[&["--workers", "1"], &args[..]].concat());
    let many = octoleech(&[&["--workers", "3"], &args[..]].concat());
    assert!(one.status.success() && many.status.success());
    assert_eq!(one.stdout, many.stdout);
    assert_eq!(field(&stdout(&one), "points"), Some("63"));
}

#[test]
fn real_design() {
    let out = octoleech(&["design", "--target", "real", "--gens", "S,V0,V1,V3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "points"), Some("98280"));
    assert_eq!(field(&text, "angles"), Some("0 1/16 1/4"));
    assert_eq!(field(&text, "strength"), Some("5"));
    assert_eq!(field(&text, "bound"), Some("98280"));
    assert_eq!(field(&text, "tight"), Some("true"));
    // the shortcut needs a transitive family
    assert!(!octoleech(&["design", "--target", "real", "--gens", "S"]).status.success());
}

#[test]
fn intersection_of_seven_designs() {
    let out = octoleech(&["intersect"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(field(&text, "intersection"), Some("21"));
    assert_eq!(field(&text, "equals_s_orbit"), Some("true"));
    assert_eq!(text.lines().filter(|l| l.starts_with("design ") && l.ends_with("points 819")).count(), 7);
}

#[test]
fn lattice_relations() {
    let out = octoleech(&["relations"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("L ∩ R roots 112 equal_d8 true"));
    assert!(text.contains("B closed false"));
}
