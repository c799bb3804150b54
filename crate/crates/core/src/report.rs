//! Machine-readable verdicts shared by every verifier and the CLI.

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    /// Process exit code: 0 pass, 1 mathematical failure, 2 input error.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Clause {
    pub name: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Clause {
    pub fn pass(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ok: true,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ok: false,
            witness: Some(witness.into()),
        }
    }

    /// `pass` when `witness` is `None`, otherwise `fail` carrying it.
    pub fn from_witness(name: impl Into<String>, witness: Option<String>) -> Self {
        Self {
            name: name.into(),
            ok: witness.is_none(),
            witness,
        }
    }
}

/// `status = pass` iff every clause is ok; `error` means no mathematical
/// verdict was reached. Clauses are kept sorted by name.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub clauses: Vec<Clause>,
    pub timing_ms: u64,
    pub inputs_echo: Value,
    #[serde(flatten)]
    pub data: Map<String, Value>,
}

impl Report {
    pub fn from_clauses(command: impl Into<String>, mut clauses: Vec<Clause>) -> Self {
        clauses.sort_by(|a, b| a.name.cmp(&b.name));
        let status = if clauses.iter().all(|c| c.ok) {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            command: command.into(),
            status,
            clauses,
            timing_ms: 0,
            inputs_echo: Value::Null,
            data: Map::new(),
        }
    }

    pub fn error(command: impl Into<String>, message: impl Into<String>) -> Self {
        let mut data = Map::new();
        data.insert("error".into(), Value::String(message.into()));
        Self {
            command: command.into(),
            status: Status::Error,
            clauses: Vec::new(),
            timing_ms: 0,
            inputs_echo: Value::Null,
            data,
        }
    }

    pub fn with_data(mut self, key: &str, value: Value) -> Self {
        self.data.insert(key.to_string(), value);
        self
    }

    pub fn with_echo(mut self, echo: Value) -> Self {
        self.inputs_echo = echo;
        self
    }

    pub fn clause(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Adds a clause, keeping the order and the status consistent.
    pub fn with_clause(mut self, clause: Clause) -> Self {
        self.clauses.push(clause);
        self.recompute();
        self
    }

    /// Merges another report's clauses under a name prefix.
    pub fn absorb(mut self, prefix: &str, other: Report) -> Self {
        for mut c in other.clauses {
            c.name = format!("{prefix}.{}", c.name);
            self.clauses.push(c);
        }
        for (k, v) in other.data {
            self.data.insert(format!("{prefix}.{k}"), v);
        }
        if other.status == Status::Error {
            self.status = Status::Error;
        }
        self.recompute();
        self
    }

    fn recompute(&mut self) {
        self.clauses.sort_by(|a, b| a.name.cmp(&b.name));
        if self.status != Status::Error {
            self.status = if self.clauses.iter().all(|c| c.ok) {
                Status::Pass
            } else {
                Status::Fail
            };
        }
    }
}
