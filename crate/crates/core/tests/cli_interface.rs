//! Black-box checks of the CLI contract: the documented invocations, the
//! matrix grammar including JSON files, output formats, and exit codes
//! (0 = pass, 1 = failed check, 2 = usage or input error).

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hermlab"))
}

fn stdout_of(args: &[&str]) -> String {
    let out = bin().args(args).output().expect("spawn hermlab");
    assert!(
        out.status.success(),
        "command {:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap().trim().to_string()
}

#[test]
fn density_examples() {
    assert_eq!(
        stdout_of(&["density", "--A", "identity:1", "--B", "identity:1", "--q", "3"]),
        "4/3"
    );
    assert_eq!(
        stdout_of(&["density", "--A", "identity:1", "--B", "diag:p^1", "--q", "3"]),
        "0"
    );
    assert_eq!(
        stdout_of(&["density", "--W", "h=1", "t=1", "--B", "At:1", "--q", "3"]),
        "16/243"
    );
}

#[test]
fn json_matrix_input() {
    let dir = std::env::temp_dir().join(format!("hermlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("b.json");
    std::fs::write(
        &path,
        r#"{"n":2,"denom_pow":0,"entries":[[["3","0"],["0","3"]],[["0","-3"],["6","0"]]]}"#,
    )
    .unwrap();
    // [[pi, pi w], [-pi w, 2 pi]] is congruent to diag(pi, pi)
    let spec = format!("json:{}", path.display());
    let v = stdout_of(&["density", "--A", "diag:p^1,p^1", "--B", &spec, "--q", "3"]);
    let diag = stdout_of(&[
        "density",
        "--A",
        "diag:p^1,p^1",
        "--B",
        "diag:p^1,p^1",
        "--q",
        "3",
    ]);
    assert_eq!(v, diag);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn constants_tables() {
    let k = stdout_of(&["constants", "--K", "--n", "2"]);
    let lines: Vec<&str> = k.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(lines[0].ends_with('0'));
    assert!(lines[3].ends_with('0'));
    assert!(lines[4].ends_with('0'));
    let csv = stdout_of(&["constants", "--table", "m", "--n", "2", "--q", "3", "--format", "csv"]);
    assert!(csv.starts_with("name,indices,q-mode,value"));
    assert!(csv.contains("m-deriv"));
}

#[test]
fn fixed_precision_metadata() {
    let json = stdout_of(&[
        "density", "--A", "identity:1", "--B", "identity:1", "--q", "3", "--d", "2",
        "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["d"], 2);
    assert_eq!(v["normalized"], "4/3");
    assert_eq!(v["stabilized"], false);
}

#[test]
fn exit_codes() {
    // usage error: unknown suite
    let out = bin().args(["verify", "nope", "--q", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    // usage error: malformed matrix
    let out = bin()
        .args(["density", "--A", "identity:x", "--B", "identity:1", "--q", "3"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // a passing suite exits 0
    let out = bin().args(["verify", "remark-n1", "--q", "3"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn intersection_output() {
    let text = stdout_of(&["intersection", "--B", "diag:p^1,p^1", "--n", "1", "--q", "3"]);
    assert!(text.contains("lattice form:  -2"));
    assert!(text.contains("agreement:     true"));
}
