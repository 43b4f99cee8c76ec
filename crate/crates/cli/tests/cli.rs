use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

use permcode_core::channel::{random_permutation, seeded_rng};
use permcode_core::Permutation;

fn run(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_permcode"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child
        .stdin
        .take()
        .expect("stdin piped")
        .write_all(stdin.as_bytes())
        .expect("stdin written");
    child.wait_with_output().expect("binary finishes")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn json(o: &Output) -> Value {
    assert!(
        o.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(o)).expect("JSON output")
}

#[test]
fn golden_decode_from_stdin() {
    let o = run(
        &[
            "coset",
            "decode",
            "--n",
            "10",
            "--t",
            "2",
            "--labeling",
            "paper",
            "--alpha",
            "16,0,86,44,61,9,49",
        ],
        "[8,6,9,10,5,1,2,4,7,3]",
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "(2,4,7,3,5,1,8,6,9,10)");
}

#[test]
fn coset_encode_then_decode_through_pipes() {
    let mut rng = seeded_rng(11);
    for _ in 0..5 {
        let pi = random_permutation(10, &mut rng);
        let text = serde_json::to_string(&pi).unwrap();
        let alpha = json(&run(
            &["--json", "coset", "encode", "--n", "10", "--t", "2"],
            &text,
        ));
        let alpha: Vec<String> = alpha
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap().to_string())
            .collect();
        let alpha = alpha.join(",");
        let out = json(&run(
            &[
                "--json", "coset", "decode", "--n", "10", "--t", "2", "--alpha", &alpha,
            ],
            &text,
        ));
        let back: Permutation = serde_json::from_value(out).unwrap();
        assert_eq!(back, pi);
    }
}

#[test]
fn ball_bounds_for_length_ten() {
    let v = json(&run(
        &[
            "--json", "analyze", "ball", "--n", "10", "--t", "2", "--metric", "block",
        ],
        "",
    ));
    assert_eq!(v["lower"], "72");
    assert_eq!(v["upper"], "720");
    assert_eq!(v["exact"], Value::Null);
    let text = stdout(&run(
        &[
            "analyze", "ball", "--n", "10", "--t", "2", "--metric", "block",
        ],
        "",
    ));
    assert!(text.contains("72") && text.contains("720"));
}

#[test]
fn systematic_simulation_at_minimal_parameters() {
    let v = json(&run(
        &[
            "--json", "sys", "simulate", "--n", "871", "--k", "28", "--t", "1", "--trials", "100",
            "--seed", "7",
        ],
        "",
    ));
    assert_eq!(v["successes"], 100);
    assert_eq!(v["trials"], 100);
    assert_eq!(v["seed"], 7);
}

#[test]
fn simulation_is_deterministic_per_seed() {
    let args = [
        "--json", "coset", "simulate", "--n", "9", "--t", "2", "--trials", "50", "--errors", "3",
        "--seed", "5",
    ];
    let mut a = json(&run(&args, ""));
    let mut b = json(&run(&args, ""));
    a.as_object_mut().unwrap().remove("wall_time_ms");
    b.as_object_mut().unwrap().remove("wall_time_ms");
    assert_eq!(a, b);
    assert_eq!(a["seed"], 5);
}

#[test]
fn zero_trials_give_an_empty_summary() {
    let v = json(&run(
        &[
            "--json", "coset", "simulate", "--n", "10", "--t", "2", "--trials", "0",
        ],
        "",
    ));
    assert_eq!(v["successes"], 0);
    assert_eq!(v["failures"], serde_json::json!({}));
}

#[test]
fn block_simulation_recovers_everything_within_budget() {
    let v = json(&run(
        &[
            "--json", "coset", "simulate", "--n", "10", "--t", "2", "--trials", "500", "--seed",
            "1",
        ],
        "",
    ));
    assert_eq!(v["successes"], 500);
}

#[test]
fn exit_codes() {
    // usage
    assert_eq!(
        run(&["coset", "encode", "--n", "10"], "").status.code(),
        Some(1)
    );
    assert_eq!(
        run(
            &["coset", "encode", "--n", "10", "--t", "2"],
            "not a permutation"
        )
        .status
        .code(),
        Some(1)
    );
    // decode failure
    let o = run(
        &[
            "coset", "decode", "--n", "10", "--t", "1", "--alpha", "1,2,3",
        ],
        "[1,2,3,4,5,6,7,8,9,10]",
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    // parameter violations
    assert_eq!(
        run(&["sys", "encode", "--n", "870", "--t", "1"], "")
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["coset", "encode", "--n", "10", "--t", "2"], "[1,1]")
            .status
            .code(),
        Some(3)
    );
    assert_eq!(
        run(&["analyze", "rate", "--n", "8", "--t", "1"], "")
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["--help"], "").status.code(), Some(0));
}

#[test]
fn analysis_outputs_parse() {
    let fm = json(&run(&["--json", "analyze", "fm", "--n", "5"], ""));
    assert_eq!(fm["1"], "4");
    let lcm = json(&run(
        &[
            "--json", "analyze", "lcm", "--n", "17", "--k", "4", "--y", "1,2,3",
        ],
        "",
    ));
    assert_eq!(lcm[0]["lcm"], "3420");
    assert_eq!(lcm[0]["holds"], true);
    let md = json(&run(
        &[
            "--json", "analyze", "mindist", "--n", "6", "--t", "1", "--q", "31",
        ],
        "",
    ));
    assert!(md["min_distance"].as_u64().unwrap() >= 3);
    let rate = json(&run(
        &["--json", "analyze", "rate", "--n", "100", "--t", "2"],
        "",
    ));
    assert!(rate["lower"].as_f64().unwrap() <= rate["upper"].as_f64().unwrap());
}
