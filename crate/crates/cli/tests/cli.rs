use std::process::{Command, Output};

fn data(name: &str) -> String {
    format!("{}/../core/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn kch(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kch"))
        .args(args)
        .env_remove("KCH_MAX_STEPS")
        .output()
        .expect("kch runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dga_check_unknot() {
    let o = kch(&["dga", "check", &data("unknot.dga.json")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("d(c) = 1 - X - P + Q*X*P"));
    assert!(out.contains("d^2 = 0 on every generator"));
}

#[test]
fn aug_poly_unknot() {
    let o = kch(&["aug", "poly", &data("unknot.dga.json")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 - X - P + Q*X*P");
}

#[test]
fn aug_poly_json_schema() {
    let o = kch(&["aug", "poly", &data("elim_synthetic.dga.json"), "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["principal"], true);
    assert_eq!(v["polynomial"], "-X + P^2");
    assert_eq!(v["generators"][0], "-X + P^2");
}

#[test]
fn aug_exists_on_and_off_the_curve() {
    let on = kch(&["aug", "exists", &data("unknot.dga.json"), "--point", "X=2,P=1,Q=1"]);
    assert!(stdout(&on).contains("exists"));
    let off = kch(&["aug", "exists", &data("unknot.dga.json"), "--point", "X=2,P=3,Q=1"]);
    assert!(stdout(&off).contains("none"));
}

#[test]
fn feynman_scalar_row() {
    let o = kch(&["feynman", "scalar", "--n", "1", "--q", "[[1]]", "--c", "[[[1]]]", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = out
        .lines()
        .find(|l| l.split_whitespace().next() == Some("2"))
        .expect("order 2 row");
    let cols: Vec<&str> = row.split_whitespace().collect();
    assert_eq!(cols, ["2", "15/2", "15/2", "15/2", "match"]);
}

#[test]
fn feynman_scalar_dimension_mismatch_is_usage_error() {
    let o = kch(&["feynman", "scalar", "--n", "2", "--q", "[[1]]", "--c", "[[[1]]]", "--order", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn feynman_matrix_matches_wick() {
    let o = kch(&["feynman", "matrix", "--N", "3", "--order", "2", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["match"], true);
    assert_eq!(v["rows"][2]["polynomial"], "3/2*N + 6*N^3");
    assert_eq!(v["rows"][2]["value"], "333/2");
}

#[test]
fn feynman_ribbon_single_graph() {
    let o = kch(&["feynman", "ribbon", "--pairing", "3,4,5,0,1,2"]);
    assert_eq!(stdout(&o).trim(), "genus 1 faces 1 loops 2");
}

#[test]
fn homfly_bundled_trefoil() {
    let o = kch(&["homfly", "--pd", &data("trefoil.pd")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("-a^-4 + 2*a^-2 + a^-2*z^2\n"));
    for s in ["max", "seed:3"] {
        let o = kch(&["homfly", "--pd", &data("trefoil.pd"), "--strategy", s]);
        assert!(stdout(&o).starts_with("-a^-4 + 2*a^-2 + a^-2*z^2\n"));
    }
}

#[test]
fn homfly_rejects_nonplanar_code() {
    let o = kch(&["homfly", "--pd", "X[1,4,2,3];X[3,6,4,5];X[5,2,6,1]"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("homfly") && err.contains("not planar"));
}

#[test]
fn step_cap_is_exit_one() {
    let o = Command::new(env!("CARGO_BIN_EXE_kch"))
        .args(["homfly", "--pd", &data("trefoil.pd")])
        .env("KCH_MAX_STEPS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn wilson_unknot_is_quantum_dimension() {
    let o = kch(&["wilson", "--pd", "UNKNOT", "--N", "2", "--k", "1", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    // [2] at q = exp(2 pi i / 3) is q^1/2 + q^-1/2 = 2 cos(pi/3) = 1
    assert!((v["re"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!(v["im"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn symtrace_two_eigenvalues() {
    let o = kch(&["symtrace", "--eigs", "2, 3", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("h_1 = 5"));
    assert!(out.contains("h_2 = 19"));
}

#[test]
fn mirror_branch_unknot() {
    let o = kch(&["mirror", "branch", "--poly", "1 - X - P + Q*X*P", "--order", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("P = 1 + (-1 + Q)*X + (-Q + Q^2)*X^2"));
    assert!(out.contains("residual vanishes through X^2"));
}

#[test]
fn mirror_branch_not_a_root_is_exit_one() {
    let o = kch(&["mirror", "branch", "--poly", "1 - X - P + Q*X*P", "--order", "2", "--p0", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn output_is_repeatable() {
    let args = ["feynman", "scalar", "--n", "2", "--q", "[[2,1],[1,3]]", "--c",
        "[[[1,0],[0,1]],[[0,1],[1,2]]]", "--order", "4", "--json"];
    assert_eq!(stdout(&kch(&args)), stdout(&kch(&args)));
}

#[test]
fn unknown_flag_is_usage_error() {
    assert_eq!(kch(&["homfly", "--bogus"]).status.code(), Some(2));
}
