use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn ohs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ohs")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Compares against `tests/golden/<name>`; `UPDATE_GOLDEN=1` rewrites it.
fn golden(name: &str, actual: &str) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        fs::write(&path, actual).unwrap();
    }
    let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden {}", path.display()));
    assert_eq!(actual, expected, "golden {name}");
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn rank_examples() {
    let o = ohs(&["rank", "--instance", path_str(&data("path8.json")), "--strategy", "path-ruler"]);
    assert!(o.status.success());
    golden("rank_path8.json", &stdout(&o));
    let o = ohs(&["rank", "--instance", path_str(&data("star.json")), "--strategy", "tree-centroid"]);
    assert!(stdout(&o).contains(r#""colors":[2,1,1,1,1]"#));
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("k3.json");
    let o = ohs(&["rank", "--instance", path_str(&data("k3.json")), "--out", path_str(&out)]);
    assert_eq!(stdout(&o), "colors 3\n");
    let o = ohs(&["verify", "--instance", path_str(&data("k3.json")), "--coloring", path_str(&out), "--mode", "ranking"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"colors":[1,1,2]}"#).unwrap();
    let k3 = data("k3.json");
    let o = ohs(&["verify", "--instance", path_str(&k3), "--coloring", path_str(&bad), "--mode", "ranking"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ohs(&["verify", "--instance", path_str(&k3), "--coloring", path_str(&bad), "--mode", "um"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ohs(&["verify", "--instance", path_str(&k3), "--coloring", path_str(&bad), "--mode", "umin"]);
    assert_eq!(o.status.code(), Some(1));
    let o = ohs(&["verify", "--instance", "/no/such/file.json", "--coloring", path_str(&bad), "--mode", "um"]);
    assert_eq!(o.status.code(), Some(2));
    let short = dir.path().join("short.json");
    fs::write(&short, r#"{"colors":[1]}"#).unwrap();
    let o = ohs(&["verify", "--instance", path_str(&k3), "--coloring", path_str(&short), "--mode", "um"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn nested_interval_run() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let transcript = dir.path().join("t.json");
    let args = [
        "run", "--alg", "algc", "--adversary", "nested", "--n", "16", "--check-bound", "interval",
        "--report", path_str(&report), "--transcript", path_str(&transcript),
    ];
    let o = ohs(&args);
    assert_eq!(o.status.code(), Some(0));
    golden("nested16.csv", &stdout(&o));
    golden("nested16_report.json", &fs::read_to_string(&report).unwrap());
    let first = fs::read_to_string(&transcript).unwrap();
    ohs(&args);
    assert_eq!(fs::read_to_string(&transcript).unwrap(), first);
}

#[test]
fn disc_adversary_run() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("d.svg");
    let o = ohs(&["run", "--alg", "algd", "--adversary", "collinear-discs", "--n", "16", "--svg-out", path_str(&svg)]);
    assert_eq!(o.status.code(), Some(0));
    let row = stdout(&o).lines().nth(1).unwrap().to_string();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[4], "1");
    assert!(fields[3].parse::<usize>().unwrap() >= 5, "{row}");
    golden("collinear16.svg", &fs::read_to_string(&svg).unwrap());
}

#[test]
fn parabola_run_and_svg() {
    let dir = tempfile::tempdir().unwrap();
    let transcript = dir.path().join("t.json");
    let o = ohs(&[
        "run", "--alg", "algp", "--instance", path_str(&data("parabola8.json")), "--queries",
        path_str(&data("halfplanes.jsonl")), "--transcript", path_str(&transcript), "--check-bound", "halfplane",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = dir.path().join("p.svg");
    let o = ohs(&[
        "svg", "--instance", path_str(&data("parabola8.json")), "--alg", "algp", "--transcript",
        path_str(&transcript), "--svg-out", path_str(&svg),
    ]);
    assert!(o.status.success());
    golden("parabola8_run.svg", &fs::read_to_string(&svg).unwrap());

    let o = ohs(&["run", "--alg", "algp", "--adversary", "parabola", "--n", "8"]);
    assert!(stdout(&o).contains("parabola-8,8,algp,4,1,4"));
}

#[test]
fn svg_without_transcript() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("s.svg");
    let o = ohs(&["svg", "--instance", path_str(&data("scatter.json")), "--alg", "algd", "--svg-out", path_str(&svg)]);
    assert!(o.status.success());
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("crimson").count(), 0);
    golden("scatter_instance.svg", &text);
}

#[test]
fn disc_query_file_run() {
    let dir = tempfile::tempdir().unwrap();
    let transcript = dir.path().join("t.json");
    let o = ohs(&[
        "run", "--alg", "algd", "--instance", path_str(&data("scatter.json")), "--queries",
        path_str(&data("discs.jsonl")), "--transcript", path_str(&transcript), "--check-bound", "disc",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    golden("scatter_discs.json", &fs::read_to_string(&transcript).unwrap());
}

#[test]
fn seeded_runs_repeat() {
    let run = |seed: &str| {
        stdout(&ohs(&[
            "run", "--alg", "algp", "--instance", path_str(&data("scatter.json")), "--random-queries", "20",
            "--seed", seed,
        ]))
    };
    assert_eq!(run("9"), run("9"));
}

#[test]
fn decompose_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let forest = dir.path().join("f.json");
    let coloring = dir.path().join("c.json");
    let o = ohs(&[
        "decompose", "--instance", path_str(&data("h.json")), "--forest-out", path_str(&forest),
        "--coloring-out", path_str(&coloring),
    ]);
    assert!(o.status.success());
    golden("h_forest.json", &fs::read_to_string(&forest).unwrap());
    let o = ohs(&["verify", "--instance", path_str(&data("h.json")), "--coloring", path_str(&coloring), "--mode", "umin"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ohs(&["decompose", "--instance", path_str(&data("star.json")), "--alg", "lowest"]);
    assert_eq!(stdout(&o), "nodes 5 depth 2 colors 2\n");
}

#[test]
fn input_errors_exit_two() {
    let o = ohs(&["run", "--alg", "algp", "--adversary", "nested", "--n", "8"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ohs(&["run", "--alg", "algc", "--adversary", "nested"]);
    assert_eq!(o.status.code(), Some(2));
    let o = ohs(&["rank", "--instance", path_str(&data("star.json")), "--strategy", "path-ruler"]);
    assert_eq!(o.status.code(), Some(2));
}
