use std::process::{Command, Output};

use serde_json::Value;

fn qram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qram")).args(args).output().expect("spawn qram")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).expect("utf-8")
}

#[test]
fn derive_eps_index_two() {
    let o = qram(&["derive", "--family", "eps", "--index", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "135𝒫^2 - 240𝒫ℰ + 64ℰ^2 + 42𝒬");
}

#[test]
fn derive_json_and_phi() {
    let o = qram(&["derive", "--family", "T", "--index", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["poly"], "P");
    assert_eq!(v["numerator"], "T2");
    assert_eq!(v["denominator"], "T0");
    assert_eq!(v["weight"], 2);
    assert_eq!(v["ring"], "classical");

    let o = qram(&["derive", "--series", "phi_0_3"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(1/240)Q - 1/240");

    let o = qram(&["derive", "--series", "T4"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn expand_matches_library() {
    let o = qram(&["expand", "--series", "T4", "--order", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let want = qram_core::generators::family(qram_core::generators::Family::T, 4, 8).unwrap();
    let got: Vec<String> = v["coeffs"].as_array().unwrap().iter().map(|c| c.as_str().unwrap().to_string()).collect();
    let want: Vec<String> = want.coeffs().iter().map(ToString::to_string).collect();
    assert_eq!(got, want);
    assert_eq!(v["order"], 8);
    assert_eq!(v["series"], "T4");
}

#[test]
fn expand_text() {
    let o = qram(&["expand", "--series", "psi", "--order", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "ψ = 1 + q + q^3 + q^6 + O(q^7)");
}

#[test]
fn unknown_names_exit_two_with_valid_list() {
    let o = qram(&["expand", "--series", "T3"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("hahnQ"));
    assert!(o.stdout.is_empty());

    let o = qram(&["verify", "--identity", "no.such"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("t1.T2"));

    let o = qram(&["convolve", "--identity", "t1.T2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("t9"));

    let o = qram(&["eval", "--value", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("ct5b.phi09"));

    let o = qram(&["derive", "--family", "G", "--index", "1"]);
    assert_eq!(o.status.code(), Some(2));

    let o = qram(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));

    let o = qram(&["eval", "--value", "ct5b.phi09", "--precision", "32"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_all_json() {
    let o = qram(&["verify", "--all", "--order", "100", "--nmax", "50", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let arr = v.as_array().unwrap();
    assert_eq!(arr.len(), qram_core::identities::registry().len());
    let ids: Vec<&str> = arr.iter().map(|r| r["id"].as_str().unwrap()).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
    for r in arr {
        assert_eq!(r["status"], "pass", "{r}");
        assert!(r.get("first_failure").is_none());
    }
}

#[test]
fn verify_text_footer_counts_registry() {
    let o = qram(&["verify", "--all", "--order", "40", "--nmax", "20"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let n = qram_core::identities::registry().len();
    assert!(text.trim_end().ends_with(&format!("{n}/{n} passed; {n} of {n} registered identities checked")), "{text}");
}

#[test]
fn json_output_is_byte_stable() {
    let args = ["verify", "--all", "--order", "60", "--nmax", "30", "--format", "json"];
    let a = qram(&args);
    let b = qram(&args);
    assert_eq!(a.stdout, b.stdout);
    let args = ["eval", "--all", "--precision", "128", "--format", "json"];
    assert_eq!(qram(&args).stdout, qram(&args).stdout);
}

#[test]
fn json_keys_sorted() {
    let o = qram(&["eval", "--value", "ct5b.phi09", "--format", "json"]);
    let text = stdout(&o);
    let keys: Vec<&str> = text
        .lines()
        .filter_map(|l| l.trim().strip_prefix('"'))
        .filter_map(|l| l.split_once("\":").map(|(k, _)| k))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn eval_reports_agreement() {
    let o = qram(&["eval", "--value", "ct5b.phi09", "--precision", "256", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v[0];
    assert_eq!(r["id"], "ct5b.phi09");
    assert_eq!(r["precision_bits"], 256);
    assert_eq!(r["status"], "pass");
    assert!(r["series_value"].as_str().unwrap().starts_with("-3.875000000000000000000000000000"));
}

#[test]
fn single_identity_and_convolution() {
    let o = qram(&["verify", "--identity", "t4.eps5", "--order", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass  t4.eps5"));

    let o = qram(&["convolve", "--identity", "t12", "--nmax", "21", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["checked_up_to"], 21);

    let o = qram(&["convolve", "--all", "--nmax", "20"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn list_covers_registry() {
    let o = qram(&["list", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["identities"].as_array().unwrap().len(), qram_core::identities::registry().len());
    assert_eq!(v["specials"].as_array().unwrap().len(), qram_core::numeric::specials().len());
}
