use serde::Serialize;
use serde_json::{json, Value};

/// Exit code for input and validation errors.
pub const EXIT_INPUT: u8 = 2;
/// Exit code for dimension mismatches.
pub const EXIT_DIMENSION: u8 = 3;

/// Output of one CLI invocation. Everything except `timing` is deterministic
/// for fixed arguments and seed.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub seed: Option<u64>,
    pub passed: bool,
    pub results: Value,
    pub timing: Timing,
}

#[derive(Debug, Serialize)]
pub struct Timing {
    pub seconds: f64,
}

impl RunReport {
    pub fn new(command: Vec<String>, seed: Option<u64>, results: Value, passed: bool, seconds: f64) -> Self {
        Self {
            command,
            seed,
            passed,
            results,
            timing: Timing { seconds },
        }
    }

    pub fn error(command: Vec<String>, seed: Option<u64>, err: &CliError, seconds: f64) -> Self {
        let mut error = json!({"message": err.message, "exit_code": err.code});
        if let Some(details) = &err.details {
            error["details"] = details.clone();
        }
        Self::new(command, seed, json!({ "error": error }), false, seconds)
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
    pub details: Option<Value>,
}

impl CliError {
    pub fn input(message: String) -> Self {
        Self {
            code: EXIT_INPUT,
            message,
            details: None,
        }
    }
}

impl From<ddfkit::Error> for CliError {
    fn from(err: ddfkit::Error) -> Self {
        let code = match err {
            ddfkit::Error::Dimension { .. } => EXIT_DIMENSION,
            _ => EXIT_INPUT,
        };
        let details = match &err {
            ddfkit::Error::InvalidParams(report) => Some(json!({ "validation": report.violations })),
            _ => None,
        };
        Self {
            code,
            message: err.to_string(),
            details,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self::input(format!("I/O error: {err}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        Self::input(format!("CSV error: {err}"))
    }
}
