use std::path::PathBuf;
use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_guidance"))
}

fn sample(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples").join(name)
}

#[test]
fn replay_walkthrough_exits_zero() {
    let out = bin()
        .arg("replay")
        .arg(sample("walkthrough.skstream"))
        .arg("--parts")
        .arg(sample("right_wheel.xml"))
        .arg("--script")
        .arg(sample("walkthrough.script"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().ends_with("{\"kind\":\"event\",\"name\":\"Stopped\"}\n"));
}

#[test]
fn replay_without_script_does_not_finish() {
    let out = bin()
        .arg("replay")
        .arg(sample("walkthrough.skstream"))
        .arg("--parts")
        .arg(sample("right_wheel.xml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_parts_file_is_reported() {
    let out = bin()
        .arg("replay")
        .arg(sample("walkthrough.skstream"))
        .arg("--parts")
        .arg(sample("no_such_file.xml"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cannot open"));
}

#[test]
fn usage_errors_exit_one_and_help_exits_zero() {
    assert_eq!(bin().arg("frobnicate").output().unwrap().status.code(), Some(1));
    assert_eq!(bin().arg("--help").output().unwrap().status.code(), Some(0));
}

#[test]
fn validate_reports_problems() {
    let ok = bin().arg("validate").arg("--parts").arg(sample("tractor_front.xml")).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("3 parts ok"));

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("dup.xml");
    let part = std::fs::read_to_string(sample("right_wheel.xml")).unwrap();
    let body = part.split("<Part>").nth(1).unwrap().split("</Parts>").next().unwrap();
    std::fs::write(&bad, format!("<Parts><Part>{body}<Part>{body}</Parts>")).unwrap();
    let out = bin().arg("validate").arg("--parts").arg(&bad).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("duplicate id 1"));
}

#[test]
fn synth_matches_checked_in_recording() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("walk.skstream");
    let out = bin().arg("synth").arg(sample("walkthrough.json")).arg("-o").arg(&target).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        std::fs::read_to_string(target).unwrap(),
        std::fs::read_to_string(sample("walkthrough.skstream")).unwrap()
    );
}
