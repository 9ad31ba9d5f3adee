use std::io::Write;
use std::process::{Command, Output, Stdio};

fn legtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_legtree"))
        .args(args)
        .env_remove("LEGTREE_ORACLE_BOUND")
        .env_remove("LEGTREE_PAIRING_BOUND")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn line_value(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} = ")))
        .unwrap_or_else(|| panic!("no `{key}` in\n{out}"))
        .to_string()
}

#[test]
fn legendre_cubic_example() {
    let o = legtree(&["legendre", "--phi", "1/2*x1^2 + 1/6*x1^3", "--degree", "5"]);
    assert!(o.status.success());
    assert_eq!(line_value(&stdout(&o), "phi_bar"), "1/2*y1^2 - 1/6*y1^3 + 1/8*y1^4 - 1/8*y1^5");
}

#[test]
fn legendre_output_feeds_back_to_the_original() {
    let o = legtree(&["legendre", "--phi", "1/2*x1^2 + 1/6*x1^3", "--degree", "5"]);
    let dual = line_value(&stdout(&o), "phi_bar");
    let back = legtree(&["legendre", "--phi", &dual, "--degree", "5"]);
    assert!(back.status.success());
    assert_eq!(line_value(&stdout(&back), "phi_bar"), "1/2*y1^2 + 1/6*y1^3");
}

#[test]
fn invert_catalan_example() {
    let o = legtree(&["invert", "--map", "x1 - x1^2", "--degree", "5"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("direct: g[y1] = y1 + y1^2 + 2*y1^3 + 5*y1^4 + 14*y1^5\n"));
    assert!(out.contains("legendre: g[y1] = y1 + y1^2 + 2*y1^3 + 5*y1^4 + 14*y1^5\n"));
    assert!(out.contains("check methods_agree: ok"));
}

#[test]
fn invert_keller_map_from_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_legtree"))
        .args(["invert", "--degree", "6", "--format", "json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"# Keller map\nx1 + x2^2\nx2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    for inv in v["inverses"].as_array().unwrap() {
        assert_eq!(inv["components"], serde_json::json!(["y1 - y2^2", "y2"]));
    }
}

#[test]
fn wick_order_two_example() {
    let o = legtree(&["wick", "--order", "2", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["y_series"][2], "35/384*a^-4");
    assert_eq!(v["orders"][1]["classes"].as_array().unwrap().len(), 3);
    assert_eq!(v["orders"][1]["sum_inverse_aut"], "35/384");
}

#[test]
fn hessian_of_keller_bridge_is_one() {
    let o = legtree(&["hessian", "--map", "x1 + x2^2;x2", "--format", "structured"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("\ndeterminant: 1\n"));
    assert!(out.contains("\nclass: constant\n"));
    assert!(out.contains("\nkeller: true\n"));
}

#[test]
fn hessian_of_potential_classifies() {
    let o = legtree(&["hessian", "--phi", "x1^2*x2 + x2^3"]);
    assert!(o.status.success());
    assert_eq!(line_value(&stdout(&o), "class"), "non_constant");
}

#[test]
fn trees_with_oracle_agree() {
    let o = legtree(&["trees", "--phi", "1/2*x1^2 - x1*x2 + x2^2 + x1^3 + 1/3*x2^4", "--degree", "5", "--oracle"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let out = stdout(&o);
    assert_eq!(line_value(&out, "tree_sum"), line_value(&out, "legendre"));
}

#[test]
fn oracle_bound_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_legtree"))
        .args(["trees", "--phi", "1/2*x1^2 + x1^3", "--degree", "5", "--oracle"])
        .env("LEGTREE_ORACLE_BOUND", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bound exceeded"));
}

#[test]
fn malformed_rational_is_reported_with_position() {
    let o = legtree(&["legendre", "--phi", "1/0*x1"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("malformed rational at line 1, column 1"), "{err}");
}

#[test]
fn degree_cap_needs_override() {
    let o = legtree(&["legendre", "--phi", "1/2*x1^2", "--degree", "13"]);
    assert_eq!(o.status.code(), Some(2));
    let o = legtree(&["legendre", "--phi", "1/2*x1^2 + x1^3", "--degree", "13", "--allow-large-degree"]);
    assert!(o.status.success());
}

#[test]
fn verify_is_deterministic_per_seed() {
    let args = ["verify", "--only", "2,3,5,8", "--seed", "11", "--format", "structured"];
    let a = legtree(&args);
    let b = legtree(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("seed: 11\n"));
}

#[test]
fn structured_and_json_carry_the_same_values() {
    let base = ["legendre", "--phi", "1/2*x1^2 + x1*x2 + x2^2 + x1^3", "--degree", "4"];
    let s = stdout(&legtree(&[&base[..], &["--format", "structured"]].concat()));
    let j: serde_json::Value =
        serde_json::from_slice(&legtree(&[&base[..], &["--format", "json"]].concat()).stdout).unwrap();
    assert!(s.contains(&format!("phi_bar: {}\n", j["phi_bar"].as_str().unwrap())));
}
