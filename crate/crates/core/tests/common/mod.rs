//! Golden-file cases for the command line, shared by the golden test and the
//! acceptance harness.
//!
//! A case file looks like
//!
//! ```text
//! args: div --carrier Q 7/2 1
//! exit: 0
//! --- stdout
//! q=3 r=1/2
//! --- stderr
//! ```
//!
//! Set `ARCHEXT_BLESS=1` to rewrite the expected sections from the binary.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct GoldenCase {
    pub path: PathBuf,
    pub args: Vec<String>,
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("golden")
}

fn parse_case(path: &Path) -> GoldenCase {
    let text = fs::read_to_string(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let (head, rest) = text
        .split_once("--- stdout\n")
        .unwrap_or_else(|| panic!("{}: missing stdout section", path.display()));
    let (stdout, stderr) = rest
        .split_once("--- stderr\n")
        .unwrap_or_else(|| panic!("{}: missing stderr section", path.display()));
    let mut args = None;
    let mut exit = None;
    for line in head.lines() {
        if let Some(a) = line.strip_prefix("args: ") {
            args = Some(a.split_whitespace().map(String::from).collect());
        } else if let Some(e) = line.strip_prefix("exit: ") {
            exit = Some(e.trim().parse().expect("exit code"));
        }
    }
    GoldenCase {
        path: path.to_path_buf(),
        args: args.expect("args line"),
        exit: exit.expect("exit line"),
        stdout: stdout.to_string(),
        stderr: stderr.to_string(),
    }
}

pub fn load_cases() -> Vec<GoldenCase> {
    let mut paths: Vec<PathBuf> = fs::read_dir(golden_dir())
        .expect("golden directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    paths.iter().map(|p| parse_case(p)).collect()
}

pub struct Observed {
    pub exit: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run_binary(args: &[String]) -> Observed {
    let out = Command::new(env!("CARGO_BIN_EXE_archext"))
        .args(args)
        .output()
        .expect("spawn archext");
    Observed {
        exit: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

pub fn run_in_process(args: &[String]) -> Observed {
    let out = archext::cli::run(std::iter::once("archext".to_string()).chain(args.iter().cloned()));
    Observed {
        exit: out.code,
        stdout: out.stdout,
        stderr: out.stderr,
    }
}

/// Compares a case with an observation; `Err` describes the first difference.
pub fn compare(case: &GoldenCase, seen: &Observed) -> Result<(), String> {
    let name = case.path.file_name().unwrap().to_string_lossy();
    if seen.exit != case.exit {
        return Err(format!(
            "{name}: exit {} (expected {})",
            seen.exit, case.exit
        ));
    }
    if seen.stdout != case.stdout {
        return Err(format!(
            "{name}: stdout {:?} (expected {:?})",
            seen.stdout, case.stdout
        ));
    }
    if seen.stderr != case.stderr {
        return Err(format!(
            "{name}: stderr {:?} (expected {:?})",
            seen.stderr, case.stderr
        ));
    }
    Ok(())
}

pub fn bless(case: &GoldenCase, seen: &Observed) {
    let text = format!(
        "args: {}\nexit: {}\n--- stdout\n{}--- stderr\n{}",
        case.args.join(" "),
        seen.exit,
        seen.stdout,
        seen.stderr
    );
    fs::write(&case.path, text).expect("write golden file");
}

pub fn blessing() -> bool {
    std::env::var_os("ARCHEXT_BLESS").is_some_and(|v| v == "1")
}
