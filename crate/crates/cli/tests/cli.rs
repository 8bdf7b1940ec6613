use std::fs;
use std::process::Command;

fn verify(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_verify")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

fn without_runtimes(json: &str) -> String {
    json.lines().filter(|l| !l.contains("\"runtimeMs\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn groups_suite_passes_with_eight_or_more_checks() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let md = dir.path().join("r.md");
    let (code, stdout, _) = verify(&["groups", "--report", report.to_str().unwrap(), "--markdown", md.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    let json = fs::read_to_string(&report).unwrap();
    let checks = json.matches("\"status\": \"pass\"").count();
    assert!(checks >= 8, "{json}");
    assert!(!json.contains("\"fail\""));
    for key in ["\"toolVersion\"", "\"configEcho\"", "\"paperRef\"", "\"runtimeMs\"", "\"computed\"", "\"expected\""] {
        assert!(json.contains(key), "missing {key}");
    }
    assert!(fs::read_to_string(&md).unwrap().contains("| groups-h1-3part | pass |"));
}

#[test]
fn sampled_fusion_marks_bilinearity() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let (code, _, _) = verify(&["fusion", "--sampled", "--seed", "5", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0);
    let json = fs::read_to_string(&report).unwrap();
    let line = json.lines().find(|l| l.contains("\"description\": \"bilinearity")).unwrap();
    assert!(line.contains("sampled"), "{line}");
    assert!(json.contains("\"sampled\": \"true\""));
}

#[test]
fn weight_three_character_coefficient() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let (code, stdout, _) = verify(&["characters", "--order", "2", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0, "{stdout}");
    let json = fs::read_to_string(&report).unwrap();
    let at = json.find("\"id\": \"ch-Vsharp-q1\"").unwrap();
    let block = &json[at..at + 400];
    assert!(block.contains("\"computed\": \"196884\"") && block.contains("\"expected\": \"196884\""), "{block}");
}

#[test]
fn reports_are_stable_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    assert_eq!(verify(&["twistcoef", "--report", a.to_str().unwrap()]).0, 0);
    assert_eq!(verify(&["twistcoef", "--report", b.to_str().unwrap()]).0, 0);
    assert_eq!(without_runtimes(&fs::read_to_string(a).unwrap()), without_runtimes(&fs::read_to_string(b).unwrap()));
}

#[test]
fn usage_and_config_errors_exit_with_two() {
    assert_eq!(verify(&["everything"]).0, 2);
    assert_eq!(verify(&["groups", "--order", "0"]).0, 2);
    assert_eq!(verify(&[]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.conf");
    fs::write(&cfg, "order = 3\nflavour = strange\n").unwrap();
    assert_eq!(verify(&["groups", "--config", cfg.to_str().unwrap()]).0, 2);
    assert_eq!(verify(&["groups", "--config", dir.path().join("missing.conf").to_str().unwrap()]).0, 2);
}

#[test]
fn config_file_values_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    fs::write(&cfg, "# twist run\nseed = 3\ntwist-order = 5\n").unwrap();
    let report = dir.path().join("r.json");
    let (code, _, _) = verify(&["twistcoef", "--config", cfg.to_str().unwrap(), "--seed", "11", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0);
    let json = fs::read_to_string(&report).unwrap();
    assert!(json.contains("\"seed\": \"11\"") && json.contains("\"twist-order\": \"5\""), "{json}");
}

#[test]
fn wrong_cached_theta_is_detected_and_fails() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    assert_eq!(verify(&["characters", "--order", "1", "--cache", cache]).0, 0);
    let path = dir.path().join("theta/leech-12.txt");
    let text = fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("theta v1\nunits 12\n1\n"));
    // a well-formed entry with a wrong count is used, and the comparison catches it
    let tampered = text.replacen("196560", "196561", 1);
    assert_ne!(tampered, text);
    fs::write(&path, tampered).unwrap();
    let (code, stdout, _) = verify(&["characters", "--order", "1", "--cache", cache]);
    assert_eq!(code, 1, "{stdout}");
    // a malformed entry is recomputed
    fs::write(&path, "junk").unwrap();
    assert_eq!(verify(&["characters", "--order", "1", "--cache", cache]).0, 0);
    assert!(fs::read_to_string(&path).unwrap().contains("196560"));
}
