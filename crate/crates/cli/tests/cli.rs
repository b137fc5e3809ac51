use std::process::Command;

fn elliptica(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_elliptica"))
        .args(args)
        .env_remove("ELLIPTICA_THREADS")
        .output()
        .expect("binary runs")
}

#[test]
fn pollaczek_suite_passes() {
    let out = elliptica(&["pollaczek", "--window", "6"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(out.status.success(), "{stdout}");
    let last = stdout.lines().last().unwrap();
    assert!(last.starts_with("SUMMARY suite=pollaczek"), "{last}");
    assert!(last.ends_with("status=PASS"), "{last}");
}

#[test]
fn json_output_is_written() {
    let path = std::env::temp_dir().join(format!("elliptica-cli-{}.json", std::process::id()));
    let out = elliptica(&["twodim", "--format", "json", "--json", path.to_str().unwrap()]);
    assert!(out.status.success());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with(&written));
    assert!(written.trim_start().starts_with('{'));
}

#[test]
fn rejects_unknown_suite_and_bad_config() {
    assert_eq!(elliptica(&["nonsense"]).status.code(), Some(2));
    assert_eq!(elliptica(&["pollaczek", "--window", "0"]).status.code(), Some(2));
}
