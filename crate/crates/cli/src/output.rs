use std::fmt;
use std::io::{self, Write};

use serde_json::Value;

/// Result of a command: text and JSON forms of the same report.
pub struct Outcome {
    pub text: String,
    pub json: Value,
    pub code: u8,
}

impl Outcome {
    pub fn new(text: String, json: Value, code: u8) -> Self {
        Outcome { text, json, code }
    }

    /// Write the report to stdout. A closed pipe is not an error.
    pub fn print(&self, json: bool) {
        let mut stdout = io::stdout().lock();
        let _ = if json {
            let body = serde_json::to_string_pretty(&self.json).expect("JSON values serialize");
            writeln!(stdout, "{body}")
        } else {
            stdout.write_all(self.text.as_bytes())
        };
    }
}

/// A one-line diagnostic on stderr and an exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn failed(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Keep the diagnostic on one line.
        f.write_str(&self.message.replace('\n', "; "))
    }
}
