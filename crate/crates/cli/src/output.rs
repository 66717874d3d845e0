//! Command envelope and rendering.
//!
//! Every command produces a `CommandOutput`; in JSON mode it is wrapped
//! in the versioned envelope `{"schema": "tbl/1", "status", "payload",
//! "diagnostics"}` with sorted keys, so identical inputs give
//! byte-identical output. Exit codes: 0 ok, 1 input error, 2 finding.

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    InputError,
    Finding,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::InputError => "input_error",
            Status::Finding => "finding",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::InputError => 1,
            Status::Finding => 2,
        }
    }
}

#[derive(Debug)]
pub struct CommandOutput {
    pub status: Status,
    pub payload: Value,
    pub text: Vec<String>,
    pub diagnostics: Vec<String>,
}

impl CommandOutput {
    pub fn ok(payload: Value, text: Vec<String>) -> Self {
        CommandOutput { status: Status::Ok, payload, text, diagnostics: Vec::new() }
    }

    pub fn finding(payload: Value, text: Vec<String>) -> Self {
        CommandOutput { status: Status::Finding, payload, text, diagnostics: Vec::new() }
    }

    pub fn input_error(message: String) -> Self {
        CommandOutput {
            status: Status::InputError,
            payload: json!({ "error": message }),
            text: vec![format!("error: {message}")],
            diagnostics: vec![message],
        }
    }

    pub fn envelope(&self) -> String {
        let value = json!({
            "schema": "tbl/1",
            "status": self.status.as_str(),
            "payload": self.payload,
            "diagnostics": self.diagnostics,
        });
        serde_json::to_string_pretty(&value).expect("envelope is serializable")
    }
}
