use std::path::PathBuf;
use std::process::{Command, Output};

fn galcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galcoh"))
        .args(args)
        .env_remove("GALCOH_MAX_ORBITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("galcoh-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn entry_file(name: &str) -> PathBuf {
    let o = galcoh(&["catalog", "build", name]);
    assert_eq!(o.status.code(), Some(0));
    tmp(&format!("{name}.json"), &stdout(&o))
}

#[test]
fn appendix_a_period_and_index() {
    let f = entry_file("appendix_a_rank6");
    let c = f.to_str().unwrap();
    let o = galcoh(&[
        "period", "--config", c, "--class", "(1,1,1)", "--format", "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["period"], 2);

    let o = galcoh(&[
        "index",
        "--config",
        c,
        "--class",
        "(1,1,1)",
        "--local",
        "v",
        "--max-degree",
        "8",
        "--strict-quadratic",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["lower_bound"], 4);
}

#[test]
fn verify_targets_and_exit_codes() {
    for t in ["appendix-a", "gille", "pu3", "period2-list"] {
        let o = galcoh(&["verify", t]);
        assert_eq!(o.status.code(), Some(0), "{t}: {}", stdout(&o));
    }
    assert_eq!(
        galcoh(&["verify", "pgl", "--n", "3"]).status.code(),
        Some(0)
    );
    assert_eq!(galcoh(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(
        galcoh(&["verify", "gille", "--n", "3"]).status.code(),
        Some(2)
    );
}

#[test]
fn input_errors_exit_two() {
    assert_eq!(galcoh(&["period", "--class", "(1)"]).status.code(), Some(2));
    let bad = tmp(
        "bad.json",
        "{\"group\": {\"order\": \"1\"},\n \"module\": 7}",
    );
    let o = galcoh(&["dump", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
    let f = entry_file("zi_torus");
    let o = galcoh(&[
        "period",
        "--config",
        f.to_str().unwrap(),
        "--class",
        "(1,2)",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = galcoh(&[
        "h1",
        "--config",
        f.to_str().unwrap(),
        "--global",
        "--seed",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn dump_round_trips() {
    let f = entry_file("zi_torus");
    let c = f.to_str().unwrap();
    let first = stdout(&galcoh(&["dump", "--config", c]));
    let again = tmp("again.json", &first);
    let second = stdout(&galcoh(&["dump", "--config", again.to_str().unwrap()]));
    assert_eq!(first, second);
    let h = |p: &str| {
        stdout(&galcoh(&[
            "h1", "--config", p, "--global", "--format", "json",
        ]))
    };
    assert_eq!(h(c), h(again.to_str().unwrap()));
}

#[test]
fn json_output_is_stable() {
    let f = entry_file("pgl");
    let c = f.to_str().unwrap();
    let args = [
        "h1",
        "--config",
        c,
        "--global",
        "--enumerate",
        "--format",
        "json",
    ];
    let a = galcoh(&args);
    let b = galcoh(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(v["classes"], 64);
}

#[test]
fn glue_and_obstruction() {
    let f = entry_file("zi_torus");
    let c = f.to_str().unwrap();
    let o = galcoh(&["glue", "--config", c, "--at", "v=(1)", "--at", "u=(1)"]);
    assert!(stdout(&o).contains("glued"));
    let o = galcoh(&["glue", "--config", c, "--at", "v=(1)", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["outcome"], "obstruction");
    assert_eq!(v["obstruction"], "(1)");
}

#[test]
fn orbit_guard_env() {
    let f = entry_file("zi_torus");
    let o = Command::new(env!("CARGO_BIN_EXE_galcoh"))
        .args(["h1", "--config", f.to_str().unwrap(), "--global"])
        .env("GALCOH_MAX_ORBITS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("orbits"));
}

#[test]
fn checks_and_sampling() {
    let f = entry_file("norm_one_klein");
    let c = f.to_str().unwrap();
    let o = galcoh(&["check", "sha", "--config", c, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["trivial"], false);
    assert_eq!(v["stable"], true);
    let o = galcoh(&["check", "sylow-cyclic", "--config", c, "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["holds"], false);

    let p = entry_file("pgl");
    let o = galcoh(&[
        "sample",
        "--config",
        p.to_str().unwrap(),
        "--cases",
        "200",
        "--seed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = galcoh(&[
        "split-bound",
        "--config",
        p.to_str().unwrap(),
        "--n",
        "4",
        "--global",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = galcoh(&[
        "power",
        "--config",
        p.to_str().unwrap(),
        "--d",
        "-1",
        "--class",
        "(1,0,0)",
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
}
