use std::process::{Command, Output};

fn bohr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bohr")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value_line(o: &Output) -> f64 {
    stdout(o).lines().find_map(|l| l.strip_prefix("value ")).unwrap().parse().unwrap()
}

#[test]
fn radius_examples() {
    let o = bohr(&["radius", "--family", "qc-bounded", "--K", "1e12"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("value 0.299823576294"), "{}", stdout(&o));
    assert!(stdout(&o).contains("method bisection"));
    let o = bohr(&["radius", "--family", "log-u", "--lambda", "1"]);
    assert!((value_line(&o) - (1.0 - (-0.5f64).exp())).abs() < 1e-12);
    let o = bohr(&["radius", "--family", "loc-univalent", "--lambda", "1"]);
    assert!((value_line(&o) - 0.262530315910).abs() < 1e-11);
}

#[test]
fn exit_codes() {
    assert_eq!(bohr(&["radius", "--family", "qc-convex", "--K", "0.2"]).status.code(), Some(2));
    assert_eq!(bohr(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bohr(&["verify", "--theorem", "3.3", "--lambda", "0.5"]).status.code(), Some(2));
    assert_eq!(bohr(&["--help"]).status.code(), Some(0));
    let o = bohr(&["harness", "--replay", "lemma1 8398340719150378744 order=200 r=0.5"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn verify_reports() {
    let o = bohr(&["verify", "--theorem", "2.2", "--K", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.matches("result pass").count(), 2, "{text}");
    let o = bohr(&["verify", "--theorem", "remark-convex", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v[0]["passed"], true);
}

#[test]
fn sweep_formats() {
    let args = ["sweep", "--family", "qc-univalent", "--param", "K", "--min", "1", "--max", "10", "--steps", "10"];
    let o = bohr(&args);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("param,r0,residual"));
    let r0: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(r0.len(), 10);
    assert!(r0.windows(2).all(|w| w[1] < w[0]));
    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&bohr(&json_args).stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 10);
    assert_eq!(bohr(&["sweep", "--family", "log-u", "--param", "lambda", "--min", "0.5", "--max", "0.4", "--steps", "3"]).status.code(), Some(2));
}

#[test]
fn harness_output_is_reproducible() {
    let args = ["harness", "--seed", "11", "--samples", "20", "--order", "40"];
    let a = bohr(&args);
    let b = bohr(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("lemma1 20/20"));
}

#[test]
fn series_and_list() {
    let o = bohr(&["series", "--function", "half-plane", "--order", "4", "--log"]);
    let lines: Vec<String> = stdout(&o).lines().map(str::to_owned).collect();
    // gamma_n = 1/(2n) for z/(1-z)
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("2 0.25"));
    let o = bohr(&["series", "--function", "harmonic-q", "--K", "3", "--part", "g", "--order", "2"]);
    assert_eq!(stdout(&o), "0 0 0\n1 0.5 0\n2 0.5 0\n");
    let o = bohr(&["list"]);
    assert_eq!(stdout(&o).lines().count(), 6);
}
