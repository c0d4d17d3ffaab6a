use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const MOVIE: &str = "The actor and the director praised the film: kalphaa bbbbetaa gaaaamaa deeeeltaa\n";

fn slangguard(store: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slangguard"))
        .arg("--store")
        .arg(store)
        .args(args)
        .output()
        .expect("binary runs")
}

fn init(dir: &Path) -> std::path::PathBuf {
    let store = dir.join("store");
    let out = slangguard(&store, &["init"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    store
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn init_seeds_tables() {
    let dir = tempfile::tempdir().unwrap();
    let store = init(dir.path());
    let slang = fs::read_to_string(store.join("slang.jsonl")).unwrap();
    assert_eq!(slang.lines().count(), 7);
    assert_eq!(slang.lines().next().unwrap(), r#"{"id":10,"lexeme":"alpha"}"#);
    let concepts = fs::read_to_string(store.join("concepts.jsonl")).unwrap();
    let weights: Vec<u64> = concepts
        .lines()
        .map(|l| serde_json::from_str::<serde_json::Value>(l).unwrap()["weight"].as_u64().unwrap())
        .collect();
    assert_eq!(weights, [10, 7, 6, 3]);
    assert!(store.join("stopwords.txt").exists());

    let again = slangguard(&store, &["init"]);
    assert_eq!(again.status.code(), Some(1));
    assert!(stderr(&again).contains("not empty"));
}

#[test]
fn filter_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let store = init(dir.path());

    let blocked = slangguard(&store, &["filter", &write(dir.path(), "a.txt", "an alpha story\n")]);
    assert_eq!(blocked.status.code(), Some(2));
    assert!(stderr(&blocked).contains("\"alpha\""));
    assert!(stdout(&blocked).is_empty());

    let clean_text = "The actor met the director.\n";
    let clean = slangguard(&store, &["filter", &write(dir.path(), "b.txt", clean_text)]);
    assert_eq!(clean.status.code(), Some(0));
    assert_eq!(stdout(&clean), clean_text);

    let revise = slangguard(&store, &["filter", &write(dir.path(), "c.txt", "alfa\n")]);
    assert_eq!(revise.status.code(), Some(3));

    let flagged = slangguard(&store, &["filter", &write(dir.path(), "d.txt", MOVIE)]);
    assert_eq!(flagged.status.code(), Some(4));
    for w in ["kalphaa", "bbbbetaa", "gaaaamaa", "deeeeltaa"] {
        assert!(stderr(&flagged).contains(w), "{w}");
    }
    // flagged text may proceed
    assert_eq!(stdout(&flagged), MOVIE);

    let report = slangguard(&store, &["filter", "--mode", "report", &write(dir.path(), "e.txt", "alpha")]);
    assert_eq!(report.status.code(), Some(0));
}

#[test]
fn filter_reads_stdin_and_json() {
    use std::io::Write;
    use std::process::Stdio;
    let dir = tempfile::tempdir().unwrap();
    let store = init(dir.path());
    let mut child = Command::new(env!("CARGO_BIN_EXE_slangguard"))
        .arg("--store")
        .arg(&store)
        .args(["filter", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(MOVIE.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(4));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["verdict"], "Flagged");
    assert_eq!(v["concept"]["concept"]["name"], "Movie");
    let positions: Vec<u64> = v["suspicion_hits"]
        .as_array()
        .unwrap()
        .iter()
        .map(|h| h["token_position"].as_u64().unwrap())
        .collect();
    assert!(positions.windows(2).all(|p| p[0] < p[1]));
}

#[test]
fn json_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = init(&dir.path().join("a"));
    let b = init(&dir.path().join("b"));
    let input = write(dir.path(), "m.txt", MOVIE);
    let x = slangguard(&a, &["--json", "filter", &input]);
    let y = slangguard(&b, &["--json", "filter", &input]);
    assert_eq!(x.stdout, y.stdout);
    assert_eq!(
        fs::read(a.join("suspicious.jsonl")).unwrap(),
        fs::read(b.join("suspicious.jsonl")).unwrap()
    );
}

#[test]
fn review_flow() {
    let dir = tempfile::tempdir().unwrap();
    let store = init(dir.path());
    let input = write(dir.path(), "m.txt", MOVIE);
    slangguard(&store, &["filter", &input]);

    let list = slangguard(&store, &["review", "list"]);
    assert!(list.status.success());
    let rows: Vec<String> = stdout(&list).lines().skip(1).map(String::from).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.split_whitespace().nth(3) == Some("10")));

    let dismissed = slangguard(&store, &["review", "dismiss", "kalphaa"]);
    assert!(dismissed.status.success());
    let list = slangguard(&store, &["--json", "review", "list"]);
    let v: serde_json::Value = serde_json::from_slice(&list.stdout).unwrap();
    assert!(v.as_array().unwrap().iter().any(|r| r["word"] == "kalphaa"));

    // one more observation puts kalphaa on top
    slangguard(&store, &["filter", &write(dir.path(), "k.txt", "the film kalphaa")]);
    let list = slangguard(&store, &["--json", "review", "list"]);
    let v: serde_json::Value = serde_json::from_slice(&list.stdout).unwrap();
    assert_eq!(v[0]["word"], "kalphaa");
    assert_eq!(v[0]["value"], 20);

    let confirmed = slangguard(&store, &["review", "confirm", "kalphaa"]);
    assert!(confirmed.status.success());
    let slang = fs::read_to_string(store.join("slang.jsonl")).unwrap();
    assert!(slang.contains("\"kalphaa\""));
    let blocked = slangguard(&store, &["filter", &write(dir.path(), "k2.txt", "kalphaa")]);
    assert_eq!(blocked.status.code(), Some(2));

    let audit = fs::read_to_string(store.join("audit.jsonl")).unwrap();
    assert_eq!(audit.lines().count(), 2);

    let unknown = slangguard(&store, &["review", "confirm", "nosuch"]);
    assert_eq!(unknown.status.code(), Some(1));
}

#[test]
fn missing_store_is_an_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = slangguard(&dir.path().join("absent"), &["filter", &write(dir.path(), "x", "hi")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn tunable_flags() {
    let dir = tempfile::tempdir().unwrap();
    let store = init(dir.path());
    // "alpfa" only sounds like alpha
    let input = write(dir.path(), "s.txt", "alpfa");
    assert_eq!(slangguard(&store, &["filter", &input]).status.code(), Some(0));
    assert_eq!(
        slangguard(&store, &["filter", "--soundalike-fallback", &input]).status.code(),
        Some(3)
    );
    // "alp" is too short for the default window but not for 3
    let input = write(dir.path(), "w.txt", "xalpx");
    assert_eq!(slangguard(&store, &["filter", &input]).status.code(), Some(0));
    assert_eq!(
        slangguard(&store, &["filter", "--window-length", "3", &input]).status.code(),
        Some(4)
    );
    // promotion on the first Movie observation with threshold 10
    let input = write(dir.path(), "t.txt", "the film kalphaa");
    let out = slangguard(&store, &["filter", "--threshold", "10", &input]);
    assert!(stderr(&out).contains("promoted \"kalphaa\""));
    assert_eq!(slangguard(&store, &["filter", "--window-length", "1", &input]).status.code(), Some(1));
}
