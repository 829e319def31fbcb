use std::io::Write;
use std::process::{Command, Stdio};

use maxclass::cli::{run, EXIT_FAILURE, EXIT_IO, EXIT_OK, EXIT_USAGE};
use maxclass::field::ProjPoint;
use maxclass::sequences::parse_sequence;

struct Out {
    code: i32,
    stdout: String,
    stderr: String,
}

fn in_process(args: &[&str], stdin: &str) -> Out {
    let mut argv = vec!["maxclass"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Out {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn binary(args: &[&str], stdin: &str) -> Out {
    let mut child = Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    let o = child.wait_with_output().unwrap();
    Out {
        code: o.status.code().unwrap(),
        stdout: String::from_utf8(o.stdout).unwrap(),
        stderr: String::from_utf8(o.stderr).unwrap(),
    }
}

const AFS: &[&str] = &["afs", "--a", "1", "--b", "2", "--n", "2", "--p", "3", "--weights", "60"];

#[test]
fn afs_output_validates() {
    let afs = binary(AFS, "");
    assert_eq!(afs.code, EXIT_OK, "{}", afs.stderr);
    let v = binary(&["validate"], &afs.stdout);
    assert_eq!(v.code, EXIT_OK, "{}", v.stdout);
    assert!(v.stdout.contains("\"valid\":true"));
}

#[test]
fn deflated_afs_starts_with_the_known_pattern() {
    let afs = binary(AFS, "");
    let d = binary(&["deflate", "--format", "compact"], &afs.stdout);
    assert_eq!(d.code, EXIT_OK);
    let s = parse_sequence(d.stdout.trim()).unwrap();
    let shown: Vec<&str> = s.alphas[..9]
        .iter()
        .map(|&c| if c == ProjPoint::X { "x" } else if c == ProjPoint::Y { "y" } else { "?" })
        .collect();
    assert_eq!(shown.join(","), "x,x,x,x,y,x,x,y,x");
}

#[test]
fn early_x_fails_validation() {
    let v = binary(&["validate"], "p=3:0,0,0,inf\n");
    assert_eq!(v.code, EXIT_FAILURE);
    assert!(v.stdout.contains("\"valid\":false"));
}

#[test]
fn piped_and_in_process_agree() {
    let steps: &[&[&str]] = &[
        &["inflate", "--w", "inf"],
        &["deflate"],
        &["normalize"],
        &["specialize", "--w", "inf", "--direction", "fix-w"],
        &["inflate", "--w", "1", "--format", "compact"],
    ];
    let (mut a, mut b) = (in_process(AFS, "").stdout, binary(AFS, "").stdout);
    assert_eq!(a, b);
    for step in steps {
        let x = in_process(step, &a);
        let y = binary(step, &b);
        assert_eq!((x.code, y.code), (EXIT_OK, EXIT_OK), "{step:?}: {} {}", x.stderr, y.stderr);
        assert_eq!(x.stdout, y.stdout, "{step:?}");
        (a, b) = (x.stdout, y.stdout);
    }
    for cmd in [&["classify"][..], &["table", "--max-weight", "12"]] {
        assert_eq!(in_process(cmd, &a).stdout, binary(cmd, &b).stdout);
    }
}

#[test]
fn classify_reports_the_tower() {
    let inflated = in_process(&["inflate", "--w", "inf"], &in_process(AFS, "").stdout).stdout;
    let c = in_process(&["classify"], &inflated);
    assert_eq!(c.code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&c.stdout).unwrap();
    assert_eq!(v["kind"], "afs_core");
    assert_eq!(v["tower"], serde_json::json!(["inf"]));
    assert_eq!(v["params"][0]["n"], 2);
}

#[test]
fn usage_errors() {
    for args in [
        &["afs", "--a", "1", "--b", "2", "--n", "2", "--p", "4", "--weights", "10"][..],
        &["afs", "--a", "2", "--b", "1", "--n", "2", "--p", "3", "--weights", "10"],
        &["afs", "--a", "1", "--b", "2", "--n", "2", "--p", "3", "--weights", "2"],
        &["afs", "--a", "1", "--b", "2", "--p", "3", "--weights", "10"],
        &["frobnicate"],
        &["verify", "--suite", "nonsense"],
        &[],
    ] {
        let o = in_process(args, "");
        assert_eq!(o.code, EXIT_USAGE, "{args:?}: {}", o.stderr);
        assert!(!o.stderr.is_empty());
    }
    assert_eq!(in_process(&["validate"], "not a sequence").code, EXIT_USAGE);
    assert_eq!(in_process(&["inflate", "--w", "7"], "p=3:0,0").code, EXIT_USAGE);
}

#[test]
fn help_goes_to_stdout() {
    let o = binary(&["--help"], "");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.contains("classify"));
    assert!(o.stderr.is_empty());
}

#[test]
fn file_io() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("afs.json");
    let seq_s = seq.to_str().unwrap();
    let mut args = AFS.to_vec();
    args.extend(["-o", seq_s]);
    let o = binary(&args, "");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stdout.is_empty());
    let from_file = binary(&["deflate", "-i", seq_s], "");
    let from_stdin = binary(&["deflate"], &std::fs::read_to_string(&seq).unwrap());
    assert_eq!(from_file.stdout, from_stdin.stdout);

    let missing = dir.path().join("missing.json");
    let o = binary(&["validate", "-i", missing.to_str().unwrap()], "");
    assert_eq!(o.code, EXIT_IO);
    let unwritable = dir.path().join("no/such/dir/out.json");
    let mut args = AFS.to_vec();
    args.extend(["-o", unwritable.to_str().unwrap()]);
    assert_eq!(binary(&args, "").code, EXIT_IO);
}

#[test]
fn lengths_flag() {
    let o = in_process(&["afs", "--a", "1", "--b", "2", "--n", "2", "--p", "3", "--weights", "30", "--lengths"], "");
    assert_eq!(o.code, EXIT_OK);
    assert_eq!(o.stdout.trim(), "6,3,5,3,5,3,5");
}

#[test]
fn enumerate_counts() {
    let o = in_process(&["enumerate", "--p", "3", "--max-weight", "12"], "");
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.stdout, in_process(&["enumerate", "--p", "3", "--max-weight", "12"], "").stdout);
    let v: serde_json::Value = serde_json::from_str(o.stdout.lines().next().unwrap()).unwrap();
    assert_eq!(v["complete"], true);
}

#[test]
fn verify_reports_and_exit_status() {
    let o = binary(&["verify", "--suite", "lucas", "--p", "5"], "");
    assert_eq!(o.code, EXIT_OK);
    assert!(o.stderr.starts_with("PASS lucas"));
    let v: serde_json::Value = serde_json::from_str(o.stdout.trim()).unwrap();
    assert_eq!(v["name"], "lucas");
    assert_eq!(v["failures"], serde_json::json!([]));
}

#[test]
fn node_budget_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_maxclass"))
        .args(["enumerate", "--p", "3", "--max-weight", "30"])
        .env("MAXCLASS_NODE_BUDGET", "10")
        .output()
        .unwrap();
    let v: serde_json::Value = serde_json::from_slice(&o.stdout[..o.stdout.iter().position(|&b| b == b'\n').unwrap()]).unwrap();
    assert_eq!(v["complete"], false);
    assert_eq!(v["node_budget"], 10);
}
