//! End-to-end checks of the `defw` binary: exit status contract, byte
//! stability across runs, the JSON round-trip of element payloads, and the
//! golden classification report.

use std::process::{Command, Output};

use defw::context::AlgebraContext;
use defw::serialize::{element_from_json, element_from_json_text};

fn defw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_defw"))
        .args(args)
        .env_remove("DEFW_THREADS")
        .output()
        .expect("binary runs")
}

#[test]
fn gv_cell_from_the_command_line() {
    let out = defw(&[
        "cohomology",
        "--q",
        "1",
        "--r",
        "inf",
        "--degree",
        "3",
        "--order",
        "0",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cell = &v["payload"]["cells"][0];
    assert_eq!(cell["dim"], 1);
    assert_eq!(cell["basis"][0]["text"], "h[1,0]*c[1,0]");
}

#[test]
fn f_lambda_grid_all_zero_at_order_4() {
    let out = defw(&[
        "cohomology",
        "--q",
        "1",
        "--r",
        "inf",
        "--f-lambda",
        "0",
        "--order",
        "4",
        "--degree",
        "0..8",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let cells = v["payload"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 9);
    assert!(cells.iter().all(|c| c["dim"] == 0));
}

#[test]
fn typed_f_lambda_cell() {
    let out = defw(&[
        "cohomology",
        "--q",
        "1",
        "--r",
        "inf",
        "--f-lambda",
        "0",
        "--order",
        "5",
        "--degree",
        "6",
        "--type",
        "2,2",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["payload"]["cells"][0]["dim"], 1);
}

#[test]
fn exit_status_contract() {
    // usage errors exit with 2
    let out = defw(&["cohomology", "--q", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = defw(&["cohomology", "--degree", "5..2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = defw(&["report-section10", "--q", "2"]);
    assert_eq!(out.status.code(), Some(2));
    let out = defw(&["no-such-command"]);
    assert_eq!(out.status.code(), Some(2));
    // a passing check run exits 0
    let out = defw(&[
        "invariants",
        "check",
        "--q",
        "2",
        "--r",
        "2",
        "--trials",
        "20",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn output_is_byte_stable_across_runs() {
    let args = [
        "cohomology",
        "--q",
        "1",
        "--degree",
        "0..5",
        "--order",
        "0..3",
        "--format",
        "json",
    ];
    let a = defw(&args);
    let b = defw(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    // parallel fan-out does not change the bytes
    let c = Command::new(env!("CARGO_BIN_EXE_defw"))
        .args(args)
        .env("DEFW_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn element_payloads_round_trip_through_the_text_parser() {
    let out = defw(&[
        "cohomology",
        "--q",
        "1",
        "--degree",
        "0..6",
        "--order",
        "0..4",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let ctx = AlgebraContext::free(1);
    let mut seen = 0;
    for cell in v["payload"]["cells"].as_array().unwrap() {
        for b in cell["basis"].as_array().unwrap() {
            let structured = element_from_json(b, ctx).unwrap();
            let reparsed = element_from_json_text(b, ctx).unwrap();
            assert_eq!(structured, reparsed);
            seen += 1;
        }
    }
    assert!(seen > 0);
}

#[test]
fn invariants_eval_reports_exact_values() {
    let out = defw(&[
        "invariants",
        "eval",
        "--q",
        "1",
        "--r",
        "1",
        "--k",
        "1",
        "--l",
        "1",
        "--seed",
        "9",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    // C'(1,1) carries the transcendental tag of weight one and equals the
    // [t^1] coefficient of the sample's trace
    assert_eq!(v["payload"]["Cprime_kl"]["pi_exponent"], 1);
    assert_eq!(
        v["payload"]["Cprime_kl"]["rational_part"], v["payload"]["c_kl"]["rational_part"],
        "c(1,1) must equal C'(1,1)"
    );
}

#[test]
fn section10_golden_report() {
    for (format, golden) in [
        ("json", include_str!("golden/section10.json")),
        ("md", include_str!("golden/section10.md")),
    ] {
        let out = defw(&["report-section10", "--q", "1", "--format", format]);
        assert!(out.status.success());
        let got = String::from_utf8(out.stdout).unwrap();
        assert_eq!(got, golden, "golden {format} report drifted");
    }
}

#[test]
fn out_flag_writes_the_artifact() {
    let dir = std::env::temp_dir().join(format!("defw-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cell.json");
    let out = defw(&[
        "cohomology",
        "--q",
        "1",
        "--degree",
        "3",
        "--order",
        "0",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let contents = std::fs::read_to_string(&path).unwrap();
    assert!(contents.contains("h[1,0]*c[1,0]"));
    std::fs::remove_dir_all(&dir).ok();
}
