use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symgame")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_json_reports_equal_orders() {
    let out = run(&["solve", "--graph", "P5", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["maxmin"], v["minmax"]);
    assert_eq!(v["maxmin"], 2);
}

#[test]
fn bounds_rows_clear_the_lower_bound() {
    let out = run(&["bounds", "--family", "path", "--odd", "--n", "9..41", "--b", "translated", "--a", "breaker-path", "--zero-elapsed"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("n,family,variant,a_strategy,b_strategy,seed,rounds,lower_bound,upper_bound,pass,elapsed_ms"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 17);
    for row in rows {
        let n: f64 = row[0].parse().unwrap();
        let rounds: f64 = row[6].parse().unwrap();
        // independent recomputation of the printed bound
        let lower = 0.5 * (n - 1.0).log2() - 1.0;
        assert_eq!(row[7], format!("{lower:.4}"));
        assert!(rounds > lower);
        assert_eq!(row[9], "true");
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let args = ["bounds", "--family", "cycle", "--odd", "--n", "9..31", "--b", "greedy-copy", "--a", "random", "--seeds", "1,2", "--zero-elapsed"];
    assert_eq!(stdout(&run(&args)), stdout(&run(&args)));
}

#[test]
fn config_file_with_overrides() {
    let dir = std::env::temp_dir().join(format!("symgame-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config = dir.join("run.json");
    let csv = dir.join("rows.csv");
    std::fs::write(&config, r#"{"family": "cycle", "n_min": 9, "n_max": 15, "a_strategy": "breaker-cycle", "b_strategy": "translated", "zero_elapsed": true}"#).unwrap();
    let out = run(&["bounds", "--config", config.to_str().unwrap(), "--set", "n_max=11", "--output", csv.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("9,cycle,sym,breaker-cycle,translated,0,"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn bad_config_is_a_usage_error() {
    let out = run(&["bounds", "--a", "mirror"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("mirror"));
    assert_eq!(run(&["bounds", "--set", "nonsense=1"]).status.code(), Some(2));
}

#[test]
fn verify_runs_selected_criteria() {
    let out = run(&["verify", "--criterion", "2", "--criterion", "3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_eq!(text.lines().filter(|l| l.contains("PASS")).count(), 2);
    assert_eq!(run(&["verify", "--criterion", "12"]).status.code(), Some(2));
}

#[test]
fn ef_and_eval() {
    assert_eq!(stdout(&run(&["ef", "--g0", "P3", "--g1", "P4"])).trim(), "EF(P3, P4) = 2");
    assert_eq!(stdout(&run(&["eval", "--graph", "K3", "--formula", "(exists x (exists y (exists z (and (E x y) (E y z) (E x z)))))"])).trim(), "true");
    assert_eq!(stdout(&run(&["eval", "--graph", "P4", "--formula", "(exists x (exists y (exists z (and (E x y) (E y z) (E x z)))))"])).trim(), "false");
}

#[test]
fn human_play_reads_moves_from_stdin() {
    use std::io::Write;
    use std::process::Stdio;
    let mut child = Command::new(env!("CARGO_BIN_EXE_symgame"))
        .args(["play", "--graph", "P4", "--human", "b", "--a", "random", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    // junk then every edge; only free, keeping replies are accepted
    child.stdin.take().unwrap().write_all(b"x\n1\n2\n3\n4\n1\n2\n3\n4\n").unwrap();
    let out = child.wait_with_output().unwrap();
    assert!(stdout(&out).contains("not a free edge"));
}

#[test]
fn play_writes_a_transcript() {
    let path = std::env::temp_dir().join(format!("symgame-transcript-{}.json", std::process::id()));
    let out = run(&["play", "--graph", "P4", "--a", "random", "--b", "mirror", "--seed", "5", "--transcript", path.to_str().unwrap()]);
    assert!(out.status.success());
    let t: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(t["outcome"]["winner"], "B");
    assert_eq!(t["rounds"].as_array().unwrap().len(), 2);
    std::fs::remove_file(path).unwrap();
}
