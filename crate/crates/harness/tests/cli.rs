use std::path::Path;
use std::process::{Command, Output};

fn tourpath(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tourpath")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn embed_exit_codes() {
    let ok = tourpath(&["embed", "T:3:5", "FF"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).starts_with("witness: "));
    let exc = tourpath(&["embed", "T:3:5", "-+"]);
    assert_eq!(exc.status.code(), Some(1));
    assert!(stdout(&exc).starts_with("exception: T3"));
    assert_eq!(tourpath(&["embed", "T:3:5", "+-+"]).status.code(), Some(2));
    assert_eq!(tourpath(&["embed", "T:3:zz", "+-"]).status.code(), Some(2));
    assert_eq!(tourpath(&["embed", "T:3:5", "+x"]).status.code(), Some(2));
    assert_eq!(tourpath(&["bogus"]).status.code(), Some(2));
}

#[test]
fn oracle_matches_embed_on_exceptions() {
    let o = tourpath(&["oracle", "T:3:5", "-+"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("exception: T3"));
    assert_eq!(tourpath(&["oracle", "T:4:09", "+--"]).status.code(), Some(0));
}

#[test]
fn matrix_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.txt");
    let text = tourpath_core::Tournament::rotational(5).to_text();
    std::fs::write(&path, text).unwrap();
    let o = tourpath(&["embed", path.to_str().unwrap(), "+-+-"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("exception: T5"));
}

#[test]
fn gen_is_deterministic() {
    let a = tourpath(&["gen", "--n", "9", "--count", "3", "--seed", "4"]);
    let b = tourpath(&["gen", "--n", "9", "--count", "3", "--seed", "4"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert_eq!(stdout(&a).lines().count(), 3);
    assert!(stdout(&a).lines().all(|l| l.starts_with("T:9:")));
    assert_eq!(tourpath(&["gen", "--n", "6", "--model", "near_regular"]).status.code(), Some(2));
}

#[test]
fn exceptions_listing() {
    let o = tourpath(&["exceptions"]);
    assert_eq!(stdout(&o).lines().count(), 4);
    assert_eq!(stdout(&tourpath(&["exceptions", "--n", "3"])).trim(), "T3 T:3:2");
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("sweep.cfg");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn sweep_then_report() {
    let dir = tempfile::tempdir().unwrap();
    let records = dir.path().join("records.jsonl");
    let csv = dir.path().join("summary.csv");
    let cfg = write_config(
        dir.path(),
        &format!("n = 3..5\ntournaments = exhaustive\npatterns = all\ntiming = false\noutput = {}\n", records.display()),
    );
    let s = tourpath(&["sweep", "--config", &cfg, "--csv", csv.to_str().unwrap()]);
    assert_eq!(s.status.code(), Some(0), "{}", String::from_utf8_lossy(&s.stderr));
    assert!(std::fs::read_to_string(&csv).unwrap().lines().count() > 1);
    let r = tourpath(&["report", records.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(stdout(&r), stdout(&s));
    assert!(stdout(&r).contains("exception census:"));
}

#[test]
fn report_edge_cases() {
    let dir = tempfile::tempdir().unwrap();
    let empty = dir.path().join("empty.jsonl");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(tourpath(&["report", empty.to_str().unwrap()]).status.code(), Some(0));
    let corrupt = dir.path().join("corrupt.jsonl");
    std::fs::write(&corrupt, "{not json\n").unwrap();
    let o = tourpath(&["report", corrupt.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 1"));
    assert_eq!(tourpath(&["report", "/nonexistent/records"]).status.code(), Some(2));
}

#[test]
fn bad_config_is_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "n = 9\ntournaments = exhaustive\npatterns = all\n");
    assert_eq!(tourpath(&["sweep", "--config", &cfg]).status.code(), Some(2));
}

#[test]
fn records_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let records = dir.path().join(format!("r{threads}.jsonl"));
        let cfg = write_config(
            dir.path(),
            &format!(
                "n = 9,12\ntournaments = random(uniform, 300, 5)\npatterns = random(4, 6)\noracle_fraction = 0.05\n\
                 timing = false\noutput = {}\n",
                records.display()
            ),
        );
        let o = Command::new(env!("CARGO_BIN_EXE_tourpath"))
            .args(["sweep", "--config", &cfg])
            .env("TOURPATH_THREADS", threads)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        outputs.push(std::fs::read_to_string(&records).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0].lines().count(), 2 * 300 * 4);
}
