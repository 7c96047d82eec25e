use std::process::{Command, Output};

use localchi::invariants::InvariantReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_localchi")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn chi_json_has_stable_keys_and_round_trips() {
    let o = run(&["chi", "--k", "3", "--j", "3", "--p", "z*u", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let keys = ["k", "j", "p", "width", "height", "chi", "is_instanton", "split_class", "R_used", "stabilized", "height_method"];
    let obj = v.as_object().unwrap();
    assert_eq!(obj.len(), keys.len());
    for key in keys {
        assert!(obj.contains_key(key), "missing {key}");
    }
    let r: InvariantReport = serde_json::from_value(v).unwrap();
    assert_eq!((r.width, r.height, r.chi, r.is_instanton), (0, 2, 2, true));
}

#[test]
fn trivial_bundle() {
    let o = run(&["chi", "--k", "2", "--j", "0", "--format", "csv"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "k,j,p,width,height,chi,instanton,R_used\n2,0,\"0\",0,0,0,true,1\n");
}

#[test]
fn out_of_support_is_a_validation_error() {
    let o = run(&["chi", "--k", "3", "--j", "3", "--p", "z^5*u"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("r=1, s=5"), "{err}");
}

#[test]
fn malformed_input_is_a_validation_error() {
    assert_eq!(run(&["chi", "--k", "3", "--j", "3", "--p", "z**u"]).status.code(), Some(2));
    assert_eq!(run(&["chi", "--k", "0", "--j", "3"]).status.code(), Some(2));
    assert_eq!(run(&["chi", "--k", "2", "--j", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["scan", "--k", "2", "--j", "a..b"]).status.code(), Some(2));
}

#[test]
fn scan_rows_and_csv_quoting() {
    let o = run(&["scan", "--k", "3", "--j", "0..3", "--samples", "3", "--seed", "1", "--format", "csv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("k,j,p,width,height,chi,instanton,R_used"));
    let chis: Vec<u32> = lines
        .map(|l| {
            assert_eq!(l.matches('"').count(), 2, "{l}");
            l.rsplit(',').nth(2).unwrap().parse().unwrap()
        })
        .collect();
    assert_eq!(&chis[..3], &[0, 0, 1]);
    assert!(chis[3..].iter().all(|&c| c == 2));
}

#[test]
fn scan_single_and_empty() {
    let o = run(&["scan", "--k", "2", "--j", "2", "--samples", "1", "--seed", "1", "--format", "csv"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    assert!(stdout(&o).ends_with(",1,true,4\n"));
    let o = run(&["scan", "--k", "2", "--j", "3..2", "--format", "json"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "[]");
}

#[test]
fn gaps_pass() {
    let o = run(&["gaps", "--k", "3", "--jmax", "4", "--samples", "3", "--seed", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("PASS k = 3: min chi = 2"));
    let o = run(&["gaps", "--k", "1", "--jmax", "3", "--quiet"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
}

#[test]
fn extdim_elm_ring() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&run(&["extdim", "--k", "2", "--j", "2", "--format", "json"]))).unwrap();
    assert_eq!(v["count"], 1);
    assert_eq!(v["slots"], serde_json::json!([[1, 1]]));
    let out = stdout(&run(&["elm", "--k", "3", "--j", "3", "--p", "z*u"]));
    assert!(out.contains("splitting type 3 -> 6"));
    assert!(out.contains("class 0 mod 3"));
    let out = stdout(&run(&["ring", "--k", "2"]));
    assert!(out.contains("x0*x2 - x1^2"));
    assert!(out.contains("x0 -> u") && out.contains("x1 -> z*u") && out.contains("x2 -> z^2*u"));
}

#[test]
fn prime_field_agrees_with_rationals() {
    let q = stdout(&run(&["chi", "--k", "2", "--j", "4", "--p", "u + z*u", "--format", "json"]));
    let p = stdout(&run(&["chi", "--k", "2", "--j", "4", "--p", "u + z*u", "--format", "json", "--field", "gfp"]));
    assert_eq!(q, p);
}

#[test]
fn fixed_truncation_is_reported() {
    let o = run(&["chi", "--k", "2", "--j", "2", "--p", "z*u", "--rmax", "5", "--format", "json"]);
    let r: InvariantReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!((r.r_used, r.stabilized, r.chi), (5, false, 1));
}

#[test]
fn output_is_deterministic() {
    let args = ["scan", "--k", "2", "--j", "2..4", "--samples", "4", "--seed", "9", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}
