use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn ndist(args: &[&str]) -> Output {
    ndist_env(args, &[])
}

fn ndist_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_ndist"));
    cmd.args(args).env_remove("NDIST_SEED");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

/// Value column of a one-row CSV report with the given header field.
fn field(csv_text: &str, name: &str) -> String {
    let mut lines = csv_text.lines().filter(|l| !l.starts_with('#'));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap_or_else(|| panic!("no column {name}"));
    row[i].to_string()
}

#[test]
fn eval_unit_square_mst() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "square.csv", "x,y\n0,0\n1,0\n1,1\n0,1\n");
    let out = ndist(&["eval", "--kind", "mst", "-i", &f]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "value"), "3");
}

#[test]
fn eval_cardinality_with_duplicates() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "dup.csv", "# two distinct points\n0,0\n0,0\n2,3\n2,3\n");
    let out = ndist(&["eval", "--kind", "cardinality", "-i", &f]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "value"), "1");
}

#[test]
fn eval_inner_balls_on_drawn_examples() {
    let dir = TempDir::new().unwrap();
    let cube = write(&dir, "cube.csv", "0.5,2\n1.5,3\n3.5,2.5\n2,1.6\n4.5,1\n");
    let out = ndist(&["eval", "--kind", "inner-chebyshev", "-i", &cube]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(field(&text, "value"), "2.5");
    assert_eq!(field(&text, "witness"), "3-4");

    let ball = write(&dir, "ball.csv", "0.7,2.3\n1,0.5\n2.5,2\n3.5,2\n5,1\n");
    let out = ndist(&["eval", "--kind", "inner-euclidean", "-i", &ball]);
    let value: f64 = field(&stdout(&out), "value").parse().unwrap();
    assert!((value - 1.5 * 2f64.sqrt()).abs() < 1e-12);
    assert_eq!(field(&stdout(&out), "witness"), "1-2");
}

#[test]
fn eval_json_input_and_output() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "pts.json", r#"{"q": 2, "points": [[0, 0], [1, 0], [0.5, 0.5]]}"#);
    let out = ndist(&["eval", "--kind", "inner-euclidean", "-i", &f, "--format", "json"]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["value"], 1.0);
    assert_eq!(v["kind"], "inner-euclidean");
}

#[test]
fn ratio_chebyshev_axis_aligned_sum() {
    // z is the last CSV row.
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "tri.csv", "0,0\n1,0\n0.5,0\n0.5,0\n");
    let out = ndist(&["ratio", "--kind", "inner-chebyshev", "-i", &f]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert_eq!(field(&text, "n"), "3");
    let z = ndist(&["ratio", "--kind", "inner-chebyshev", "-i", &write(&dir, "tri3.csv", "0,0\n1,0\n0.5,0\n"), "--z", "0.5,0"]);
    assert_eq!(stdout(&z), text);
}

#[test]
fn ratio_z_from_json_field() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "c.json", r#"{"q": 2, "points": [[0, 0], [1, 0], [0, 1]], "z": [0.25, 0.25]}"#);
    let out = ndist(&["ratio", "--kind", "cardinality", "-i", &f]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "ratio"), "0.33333333333333331");
}

#[test]
fn usage_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "line.csv", "0\n1\n3\n");
    for args in [
        vec!["eval", "--kind", "no-such-kind", "-i", &f],
        vec!["eval", "--kind", "lines", "-i", &f],
        vec!["eval", "--kind", "mst", "-i", "/nonexistent/points.csv"],
        vec!["check", "--kind", "mst", "-n", "4", "--trials", "0"],
        vec!["check", "--kind", "steiner", "-n", "9"],
        vec!["check", "--kind", "enclosing-area", "-n", "2"],
        vec!["construct", "figure4", "-n", "4"],
        vec!["construct", "circle-arc", "-n", "5", "--epsilon", "-1"],
        vec!["reproduce", "everything"],
        vec![],
    ] {
        let out = ndist(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(code(&ndist(&["--help"])), 0);
}

#[test]
fn ragged_csv_is_a_usage_error() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "bad.csv", "0,0\n1,0\nnot,a number\n");
    assert_eq!(code(&ndist(&["eval", "--kind", "mst", "-i", &f])), 2);
}

#[test]
fn check_is_clean_for_metric_distances() {
    let out = ndist(&["check", "--kind", "mst", "-n", "4", "--trials", "300", "--sampler", "collapse"]);
    assert_eq!(code(&out), 0);
    assert_eq!(field(&stdout(&out), "violations"), "0");
}

#[test]
fn seed_from_environment_matches_flag() {
    let args = ["check", "--kind", "inner-euclidean", "-n", "5", "--trials", "200"];
    let env = stdout(&ndist_env(&args, &[("NDIST_SEED", "17")]));
    let mut with_flag = args.to_vec();
    with_flag.extend(["--seed", "17"]);
    assert_eq!(env, stdout(&ndist(&with_flag)));
    assert_ne!(env, stdout(&ndist(&args)));
    assert_eq!(field(&env, "seed"), "17");
}

#[test]
fn output_is_byte_stable_across_runs_and_workers() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let base = ["kstar", "--kind", "lines", "-n", "4", "--restarts", "4", "--iters", "20", "--seed", "3"];
    let mut first = base.to_vec();
    first.extend(["--workers", "1", "-o", a.to_str().unwrap()]);
    let mut second = base.to_vec();
    second.extend(["--workers", "4", "-o", b.to_str().unwrap()]);
    assert_eq!(code(&ndist(&first)), 0);
    assert_eq!(code(&ndist(&second)), 0);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert!(stdout(&ndist(&first)).is_empty());
}

#[test]
fn construct_output_feeds_ratio() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("arc.csv");
    let out = ndist(&["construct", "circle-arc", "-n", "6", "--kind", "inner-euclidean", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(&path).unwrap();
    let reported = text
        .lines()
        .find_map(|l| l.strip_prefix("# kind=inner-euclidean ratio="))
        .expect("ratio comment")
        .to_string();
    let again = ndist(&["ratio", "--kind", "inner-euclidean", "-i", path.to_str().unwrap()]);
    assert_eq!(code(&again), 0);
    assert_eq!(field(&stdout(&again), "ratio"), reported);
}

#[test]
fn construct_json_round_trips_exactly() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("f4.json");
    let out = ndist(&["construct", "figure4", "-n", "3", "--epsilon", "0.01", "--format", "json", "-o", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let csv_ratio = ndist(&["construct", "figure4", "-n", "3", "--epsilon", "0.01", "--kind", "inner-euclidean"]);
    let expected = stdout(&csv_ratio)
        .lines()
        .find_map(|l| l.strip_prefix("# kind=inner-euclidean ratio=").map(str::to_string))
        .unwrap();
    let ratio = ndist(&["ratio", "--kind", "inner-euclidean", "-i", path.to_str().unwrap()]);
    assert_eq!(field(&stdout(&ratio), "ratio"), expected);
}

#[test]
fn reproduce_table1_passes() {
    let out = ndist(&["reproduce", "table1"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.starts_with("4,")));
    assert!(text.lines().any(|l| l.starts_with("80,")));
}

#[test]
fn output_file_parent_must_exist() {
    let missing = Path::new("/nonexistent-dir/out.csv");
    let out = ndist(&["reproduce", "table1", "-o", missing.to_str().unwrap()]);
    assert_eq!(code(&out), 2);
}
