use std::process::Command;

use lincoprime::num_bigint::BigInt;
use lincoprime_cli::{run, trace_from_json, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE, EXIT_ZERO_DENSITY};
use proptest::prelude::*;
use serde_json::Value;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("lincoprime").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = invoke(args);
    assert_eq!(code, EXIT_OK, "{args:?}: {err}");
    assert!(err.is_empty(), "unexpected diagnostics: {err}");
    out
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    serde_json::from_str(&ok(&all)).unwrap()
}

#[test]
fn decide_positive_exits_zero() {
    assert_eq!(ok(&["decide", "1", "0", "1", "1"]), "POSITIVE\n");
}

#[test]
fn decide_zero_exits_one() {
    let (code, out, err) = invoke(&["decide", "6", "4", "4", "2"]);
    assert_eq!(code, EXIT_ZERO_DENSITY);
    assert_eq!(out, "ZERO common-factor 2\n");
    assert!(err.is_empty());

    let (code, out, _) = invoke(&["decide", "2", "3", "4", "6"]);
    assert_eq!(code, EXIT_ZERO_DENSITY);
    assert_eq!(out, "ZERO proportional\n");
}

#[test]
fn decide_json_reason() {
    let (code, out, _) = invoke(&["decide", "6", "4", "4", "2", "--format", "json"]);
    assert_eq!(code, EXIT_ZERO_DENSITY);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["verdict"], "ZERO");
    assert_eq!(v["reason"], "common-factor");
    assert_eq!(v["divisor"], 2);
}

#[test]
fn density_json_fields() {
    let out = ok(&["density", "3", "1", "1", "1", "--format", "json"]);
    assert!(
        out.starts_with(r#"{"u":1,"v":1,"s":2,"density":"1/2","#),
        "{out}"
    );
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["decimal"], "0.500000");
    assert_eq!(v["period"], 2);
    assert_eq!(v["coprime_residues"], 1);
    assert_eq!(v["positive"], true);
    assert_eq!(v["local_factors"]["2"], "1/2");
}

#[test]
fn density_proportional_case() {
    let v = json(&["density", "2", "3", "4", "6"]);
    assert_eq!(v["s"], 0);
    assert_eq!(v["density"], "0/1");
    assert_eq!(v["period"], 1);
    assert_eq!(v["positive"], false);
}

#[test]
fn density_human_and_csv() {
    let out = ok(&["density", "3", "1", "1", "1"]);
    assert!(out.contains("density 1/2 = 0.500000"));
    assert!(out.contains("local factor 2: 1/2"));
    let out = ok(&["density", "3", "1", "1", "1", "--format", "csv"]);
    assert_eq!(
        out,
        "u,v,s,density,decimal,period,coprime_residues,positive\n1,1,2,1/2,0.500000,2,1,true\n"
    );
}

#[test]
fn reduce_human_shows_trace() {
    let out = ok(&["reduce", "6", "4", "4", "2"]);
    assert!(
        out.contains("step 1: 6x + 4 = 1*(4x + 2) + (2x + 2)"),
        "{out}"
    );
    assert!(
        out.contains("step 2: 4x + 2 = 2*(2x + 2) + (0x - 2)"),
        "{out}"
    );
    assert!(out.contains("terminal: u = 2, v = 2, s = -2 (m = 4)"));
    assert!(out.ends_with("(u, v, s) = (2, 0, 2)\n"));
}

#[test]
fn reduce_csv_has_one_row_per_step() {
    let out = ok(&["reduce", "6", "4", "4", "2", "--format", "csv"]);
    assert_eq!(
        out,
        "step,a_i,b_i,a_next,b_next,e_next\n1,6,4,4,2,1\n2,4,2,2,2,2\n"
    );
}

#[test]
fn reduce_json_round_trips() {
    let v = json(&["reduce", "-6", "4", "4", "-2"]);
    let trace = trace_from_json(&v).unwrap();
    trace.verify_replay().unwrap();
    assert!(trace.f_negated);
    assert_eq!(v["u"], 2);
    assert_eq!(trace.reduced.u(), &BigInt::from(2));
    assert_eq!(trace.reduced.v(), &BigInt::from(0));
    assert_eq!(trace.reduced.s(), &BigInt::from(2));
}

#[test]
fn reduce_json_tampering_is_detected() {
    let mut v = json(&["reduce", "6", "4", "4", "2"]);
    v["steps"][1]["e_next"] = 3.into();
    let trace = trace_from_json(&v).unwrap();
    assert!(trace.verify_replay().is_err());
}

#[test]
fn witness_outputs() {
    assert_eq!(ok(&["witness", "3", "1", "1", "1"]), "0 modular-inverse\n");
    assert_eq!(ok(&["witness", "6", "4", "4", "2"]), "NONE\n");
    // s = 0 never yields a witness, even though gcd(x, x) = 1 at x = 1
    assert_eq!(ok(&["witness", "1", "0", "1", "0"]), "NONE\n");
    let v = json(&["witness", "6", "4", "4", "2"]);
    assert_eq!(v["x"], Value::Null);
    assert_eq!(v["method"], "none");
}

#[test]
fn witness_period_scan() {
    // 2x + 1 and 4x + 4: u = 2, s = 2, so the inverse route is unavailable
    let v = json(&["witness", "2", "1", "4", "4"]);
    assert_eq!(v["method"], "period-scan");
    let x = v["x"].as_i64().unwrap();
    let g = lincoprime::gcd(&(2 * x + 1), &(4 * x + 4));
    assert_eq!(g, 1);
}

#[test]
fn everywhere_outputs() {
    assert_eq!(ok(&["everywhere", "1", "0", "1", "1"]), "true\n");
    assert_eq!(ok(&["everywhere", "3", "1", "1", "1"]), "false\n");
    assert_eq!(ok(&["everywhere", "2", "1", "2", "3"]), "true\n");
    assert_eq!(
        json(&["everywhere", "2", "1", "2", "3"])["everywhere_coprime"],
        true
    );
}

#[test]
fn verify_csv_rows() {
    let out = ok(&["verify", "3", "1", "1", "1", "--N", "10", "--format", "csv"]);
    assert_eq!(
        out,
        "N,empirical,exact,abs_error,bound\n10,11/21,1/2,1/42,2/21\n"
    );
    let out = ok(&[
        "verify", "6", "4", "4", "2", "--N", "5", "--table", "50", "--format", "csv",
    ]);
    assert_eq!(
        out,
        "N,empirical,exact,abs_error,bound\n5,0/1,0/1,0/1,2/11\n50,0/1,0/1,0/1,2/101\n"
    );
}

#[test]
fn verify_merges_n_and_table() {
    let v = json(&[
        "verify", "3", "1", "1", "1", "--N", "100", "--table", "10,1000",
    ]);
    let ns: Vec<u64> = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["N"].as_u64().unwrap())
        .collect();
    assert_eq!(ns, vec![10, 100, 1000]);
    assert!(v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .all(|r| r["within_bound"] == true));
}

#[test]
fn scan_report_fields() {
    let v = json(&["scan", "--bound", "1"]);
    let obj = v.as_object().unwrap();
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    assert_eq!(
        &keys[..6],
        &[
            "bound",
            "quadruples_checked",
            "mismatches",
            "lemma2_failures",
            "determinant_failures",
            "pointwise_failures"
        ]
    );
    assert_eq!(*keys.last().unwrap(), "elapsed");
    assert_eq!(v["bound"], 1);
    assert_eq!(v["quadruples_checked"], 36);
    assert_eq!(v["mismatches"], Value::Array(vec![]));

    let out = ok(&["scan", "--bound", "2"]);
    assert!(out.contains("quadruples_checked 400"));
    assert!(out.trim_end().ends_with("CLEAN"));
    assert_eq!(
        ok(&["scan", "--bound", "2", "--format", "csv"]),
        "kind,a,b,c,d,detail\n"
    );
}

#[test]
fn negative_coefficients_need_no_escape() {
    assert_eq!(ok(&["decide", "-3", "-1", "-1", "-1"]), "POSITIVE\n");
    let v = json(&["density", "-3", "1", "1", "1"]);
    assert_eq!(v["s"], 4);
}

#[test]
fn big_coefficients() {
    let v = json(&[
        "reduce",
        "123456789012345678901234567890",
        "1",
        "987654321098765432109876543210",
        "-1",
    ]);
    let trace = trace_from_json(&v).unwrap();
    trace.verify_replay().unwrap();
    assert_eq!(v["u"].to_string(), "9000000000900000000090");
}

#[test]
fn domain_errors_exit_three() {
    for cmd in ["reduce", "density", "decide", "witness", "everywhere"] {
        let (code, out, err) = invoke(&[cmd, "0", "1", "1", "1"]);
        assert_eq!(code, EXIT_DOMAIN, "{cmd}");
        assert!(out.is_empty());
        assert!(err.contains("nonzero"));
    }
    let (code, _, _) = invoke(&["verify", "1", "1", "0", "1", "--N", "5"]);
    assert_eq!(code, EXIT_DOMAIN);
}

#[test]
fn usage_errors_exit_two() {
    let cases: &[&[&str]] = &[
        &[],
        &["decide", "1", "2", "3"],
        &["decide", "1", "2", "3", "x"],
        &["decide", "1.5", "2", "3", "4"],
        &["frobnicate"],
        &["scan"],
        &["scan", "--bound", "0"],
        &["scan", "--bound", "-1"],
        &["verify", "3", "1", "1", "1"],
        &["verify", "3", "1", "1", "1", "--N", "0"],
        &["density", "1", "1", "1", "1", "--format", "xml"],
    ];
    for args in cases {
        let (code, out, err) = invoke(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
        assert!(!err.is_empty(), "{args:?}");
    }
}

#[test]
fn help_goes_to_stdout() {
    let out = ok(&["--help"]);
    assert!(out.contains("scan"));
    let out = ok(&["witness", "--help"]);
    assert!(out.contains("NONE"));
}

#[test]
fn output_is_stable_across_runs() {
    for args in [
        &["reduce", "17", "-5", "12", "9", "--format", "json"][..],
        &["density", "30", "7", "12", "1"][..],
        &[
            "verify", "5", "2", "3", "1", "--table", "10,20,30", "--format", "csv",
        ][..],
    ] {
        assert_eq!(ok(args), ok(args));
    }
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_lincoprime");
    let status = |args: &[&str]| Command::new(bin).args(args).output().unwrap();
    let o = status(&["decide", "1", "0", "1", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(o.stdout, b"POSITIVE\n");
    assert!(o.stderr.is_empty());
    assert_eq!(
        status(&["decide", "6", "4", "4", "2"]).status.code(),
        Some(1)
    );
    assert_eq!(status(&["decide", "6", "4"]).status.code(), Some(2));
    assert_eq!(
        status(&["decide", "0", "4", "1", "1"]).status.code(),
        Some(3)
    );
}

proptest! {
    #[test]
    fn reduce_json_replays(a in -10_000i64..10_000, b in -10_000i64..10_000, c in -10_000i64..10_000, d in -10_000i64..10_000) {
        prop_assume!(a != 0 && c != 0);
        let args: Vec<String> = [a, b, c, d].iter().map(|n| n.to_string()).collect();
        let refs: Vec<&str> = ["reduce"].into_iter().chain(args.iter().map(String::as_str)).collect();
        let v = json(&refs);
        let trace = trace_from_json(&v).unwrap();
        prop_assert!(trace.verify_replay().is_ok());
        let direct = lincoprime::reduce_coeffs(a, b, c, d).unwrap().reduced;
        prop_assert_eq!(v["u"].as_i64().unwrap(), *direct.u());
        prop_assert_eq!(v["v"].as_i64().unwrap(), *direct.v());
        prop_assert_eq!(v["s"].as_i64().unwrap(), *direct.s());
    }
}
