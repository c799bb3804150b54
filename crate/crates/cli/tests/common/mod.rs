//! Fixture documents and a runner for the `wdvv` binary.

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::{json, Value};
use tempfile::TempDir;
use wdvv_core::corpus::{QUAD, QUAD_PERTURBED};

pub const VARS: [&str; 3] = ["x1", "x2", "x3"];

/// Exit code, parsed standard output (if JSON) and standard error.
pub struct Run {
    pub code: i32,
    pub report: Option<Value>,
    pub stdout: String,
    pub stderr: String,
}

impl Run {
    pub fn status(&self) -> &str {
        self.report.as_ref().and_then(|r| r["status"].as_str()).unwrap_or("")
    }

    pub fn clause(&self, name: &str) -> Option<&Value> {
        self.report.as_ref()?["clauses"]
            .as_array()?
            .iter()
            .find(|c| c["name"] == name)
    }

    /// Every failing clause carries a nonempty witness, and at least one fails.
    pub fn has_witness(&self) -> bool {
        let Some(clauses) = self.report.as_ref().and_then(|r| r["clauses"].as_array()) else {
            return false;
        };
        let failing: Vec<&Value> = clauses.iter().filter(|c| c["ok"] == false).collect();
        !failing.is_empty()
            && failing
                .iter()
                .all(|c| c["witness"].as_str().is_some_and(|w| !w.is_empty()))
    }
}

pub fn wdvv(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_wdvv"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8_lossy(&out.stdout).into_owned();
    Run {
        code: out.status.code().unwrap_or(-1),
        report: serde_json::from_str(&stdout).ok(),
        stdout,
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Temporary directory holding input documents.
pub struct Fixtures {
    dir: TempDir,
}

impl Fixtures {
    pub fn new() -> Self {
        Self {
            dir: tempfile::tempdir().expect("temporary directory"),
        }
    }

    pub fn write(&self, name: &str, doc: &Value) -> PathBuf {
        self.write_text(name, &doc.to_string())
    }

    pub fn write_text(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).expect("fixture written");
        path
    }
}

pub fn path_str(p: &Path) -> &str {
    p.to_str().expect("utf-8 path")
}

pub fn prepotential_doc(f: &str) -> Value {
    json!({ "vars": VARS, "F": f, "pivot": 1 })
}

pub fn quad_doc() -> Value {
    prepotential_doc(QUAD)
}

pub fn quad_perturbed_doc() -> Value {
    prepotential_doc(QUAD_PERTURBED)
}

/// Raw Frobenius data of the quadratic solution: antidiagonal metric, and
/// `C["j,k"]` lists `C^l_jk` for `l = 1..3`.
pub fn quad_frobenius_raw() -> Value {
    json!({
        "vars": VARS,
        "g": [[0, 0, 1], [0, 1, 0], [1, 0, 0]],
        "C": {
            "1,1": ["1", "0", "0"], "1,2": ["0", "1", "0"], "1,3": ["0", "0", "1"],
            "2,1": ["0", "1", "0"], "2,2": ["0", "0", "1"], "2,3": ["0", "0", "0"],
            "3,1": ["0", "0", "1"], "3,2": ["0", "0", "0"], "3,3": ["0", "0", "0"]
        },
        "e": 1
    })
}

/// The quadratic solution's data with `C^3_21` changed so that
/// `c_jkm = g_ml C^l_jk` loses its symmetry.
pub fn broken_symmetry_frobenius() -> Value {
    let mut doc = quad_frobenius_raw();
    doc["C"]["2,1"] = json!(["0", "1", "1"]);
    doc
}

pub fn nk_doc(values: &[i64]) -> Value {
    json!({ "N": values.iter().enumerate().map(|(i, v)| json!([i + 1, v])).collect::<Vec<_>>() })
}
