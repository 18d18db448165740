use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: &str = "v1";

#[derive(Debug)]
pub enum CliError {
    /// Malformed input. Exit 2.
    Parse(String),
    /// Input is well formed but an operation's hypotheses fail. Exit 3.
    Precondition { kind: &'static str, message: String },
}

impl CliError {
    pub fn precondition(kind: &'static str, message: impl ToString) -> CliError {
        CliError::Precondition {
            kind,
            message: message.to_string(),
        }
    }
}

/// What a command hands back: a report and whether it hit a search budget.
pub struct Outcome {
    pub report: Value,
    pub budget_exhausted: bool,
}

impl Outcome {
    pub fn done(report: Value) -> Outcome {
        Outcome {
            report,
            budget_exhausted: false,
        }
    }
}

pub struct Emitter {
    pub indent: usize,
    pub out: Option<PathBuf>,
}

impl Emitter {
    pub fn render(&self, v: &Value) -> String {
        if self.indent == 0 {
            return serde_json::to_string(v).expect("values serialize");
        }
        let pad = vec![b' '; self.indent];
        let fmt = serde_json::ser::PrettyFormatter::with_indent(&pad);
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
        v.serialize(&mut ser).expect("values serialize");
        String::from_utf8(buf).expect("json is utf-8")
    }

    pub fn emit(&self, v: &Value) -> std::io::Result<()> {
        let text = self.render(v);
        match &self.out {
            Some(path) => std::fs::write(path, text + "\n"),
            None => writeln!(std::io::stdout().lock(), "{text}"),
        }
    }

    /// Parse errors go to stderr; precondition errors are reports in their
    /// own right and go wherever reports go.
    pub fn fail(&self, command: &str, err: CliError) -> ExitCode {
        match err {
            CliError::Parse(message) => {
                let v = error_object(command, "ParseError", &message);
                eprintln!("{}", self.render(&v));
                ExitCode::from(2)
            }
            CliError::Precondition { kind, message } => {
                let v = error_object(command, kind, &message);
                if let Err(e) = self.emit(&v) {
                    eprintln!("{e}");
                }
                ExitCode::from(3)
            }
        }
    }
}

fn error_object(command: &str, kind: &str, message: &str) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "error": { "kind": kind, "message": message },
    })
}

pub fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}
