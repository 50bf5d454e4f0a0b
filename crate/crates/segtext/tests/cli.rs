use std::io::Write;
use std::process::{Command, Output, Stdio};

fn segtext(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_segtext"))
        .args(args)
        .env_remove("SEGTEXT_LANG")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn segments_lines() {
    let o = segtext(&["segment"], "Mr. Smith is here. He left.");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Mr. Smith is here.\nHe left.\n");
}

#[test]
fn jsonl_spans() {
    let o = segtext(&["segment", "--char-span", "--format", "jsonl"], "Hi. Bye.");
    assert!(o.status.success());
    let lines: Vec<serde_json::Value> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines[0], serde_json::json!({"text": "Hi.", "start": 0, "end": 3}));
    assert_eq!(lines[1], serde_json::json!({"text": "Bye.", "start": 4, "end": 8}));
}

#[test]
fn language_from_flag_and_environment() {
    let o = segtext(&["segment", "--lang", "zh"], "你好。再见！");
    assert_eq!(stdout(&o), "你好。\n再见！\n");
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    std::fs::write(&input, "你好。再见！").unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_segtext"))
        .args(["segment", input.to_str().unwrap()])
        .env("SEGTEXT_LANG", "zh")
        .output()
        .unwrap();
    assert_eq!(stdout(&o), "你好。\n再见！\n");
}

#[test]
fn config_errors_exit_2() {
    assert_eq!(segtext(&["segment", "--lang", "xx"], "").status.code(), Some(2));
    assert_eq!(
        segtext(&["segment", "--clean", "--char-span"], "a").status.code(),
        Some(2)
    );
    assert_eq!(segtext(&["bench", "--reps", "0"], "").status.code(), Some(2));
    assert_eq!(segtext(&["segment", "--doc-type", "docx"], "").status.code(), Some(2));
}

#[test]
fn runtime_errors_exit_1() {
    let o = segtext(&["segment", "/no/such/file.txt"], "");
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("/no/such/file.txt"));
    assert_eq!(segtext(&["segment"], "bad \u{E000}").status.code(), Some(1));
}

#[test]
fn clean_with_report() {
    let o = segtext(&["clean", "--report"], "Hello<b>there</b>.Now");
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Hellothere. Now");
    assert!(String::from_utf8_lossy(&o.stderr).contains("strip_html\t2"));
}

#[test]
fn grs_with_baseline() {
    let o = segtext(&["grs", "--baseline"], "");
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("pipeline\t47/48"), "{out}");
    assert!(out.contains("baseline\t"), "{out}");
    assert_eq!(segtext(&["grs", "--min-accuracy", "1.0"], "").status.code(), Some(1));
}

#[test]
fn grs_custom_fixture_and_profile_dir() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("el.jsonl");
    std::fs::write(
        &fixture,
        r#"{"id": 1, "description": "question", "input": "Τι; Ναι.", "expected": ["Τι;", "Ναι."]}"#,
    )
    .unwrap();
    let profile = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/data/el");
    let o = segtext(
        &[
            "grs",
            "--lang",
            "el",
            "--profile-dir",
            profile,
            "--fixture",
            fixture.to_str().unwrap(),
            "--format",
            "json",
        ],
        "",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["passed"], 1);

    std::fs::write(&fixture, "{not json}\n").unwrap();
    let o = segtext(&["grs", "--fixture", fixture.to_str().unwrap()], "");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bench_reports() {
    let o = segtext(&["bench", "--words", "2000", "--reps", "1", "--format", "json"], "");
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert!(v["sentences"].as_u64().unwrap() > 100);
    assert_eq!(v["repetitions"], 1);
}
