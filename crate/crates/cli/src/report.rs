use std::io::Write;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub check: String,
    pub detail: String,
}

impl Failure {
    pub fn new(check: impl Into<String>, detail: String) -> Failure {
        Failure { check: check.into(), detail }
    }
}

/// What a command produced: one rendering per format plus any failures.
pub struct Outcome {
    pub command: &'static str,
    pub json: Value,
    pub csv: String,
    pub text: String,
    pub failures: Vec<Failure>,
}

impl Outcome {
    pub fn new(command: &'static str) -> Outcome {
        Outcome { command, json: Value::Null, csv: String::new(), text: String::new(), failures: Vec::new() }
    }

    pub fn fail(&mut self, f: Failure) {
        self.failures.push(f);
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn envelope(&self) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "passed": self.passed(),
            "report": self.json,
            "failures": self.failures,
        })
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.envelope()).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s.push_str(if self.passed() { "PASS\n" } else { "FAIL\n" });
                s
            }
        }
    }

    /// Failure manifest on stderr.
    pub fn emit_manifest(&self) {
        let m = json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "failures": self.failures,
        });
        eprintln!("{}", serde_json::to_string_pretty(&m).expect("manifest serializes"));
    }

    pub fn emit(&self, format: Format, output: Option<&Path>) -> ExitCode {
        let body = self.render(format);
        let written = match output {
            Some(p) => std::fs::write(p, body.as_bytes()),
            None => std::io::stdout().lock().write_all(body.as_bytes()),
        };
        if let Err(e) = written {
            eprintln!("cannot write report: {e}");
            return ExitCode::from(1);
        }
        if self.passed() {
            ExitCode::SUCCESS
        } else {
            self.emit_manifest();
            ExitCode::from(1)
        }
    }
}
