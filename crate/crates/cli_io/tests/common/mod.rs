#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

pub fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn data(name: &str) -> PathBuf {
    data_dir().join(name)
}

/// A scratch copy of the shipped data.
pub fn scratch() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(data_dir()).unwrap() {
        let p = entry.unwrap().path();
        std::fs::copy(&p, dir.path().join(p.file_name().unwrap())).unwrap();
    }
    dir
}

pub fn catalg(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catalg"))
        .args(args)
        .current_dir(cwd)
        .env_remove("CATALG_TOLERANCE")
        .env_remove("CATALG_SEED")
        .env_remove("CATALG_JSON")
        .env_remove("CATALG_QUIET")
        .env_remove("CATALG_OUT")
        .env_remove("CATALG_ROOT")
        .output()
        .unwrap()
}

/// Runs with `--json` and returns the exit code with the parsed report or error object.
pub fn catalg_json(args: &[&str], cwd: &Path) -> (i32, Value) {
    let mut all = vec!["--json"];
    all.extend_from_slice(args);
    let out = catalg(&all, cwd);
    let text = if out.stdout.is_empty() { &out.stderr } else { &out.stdout };
    let value = serde_json::from_slice(text).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(text)));
    (out.status.code().unwrap(), value)
}
