use std::fmt;
use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

use crate::Format;

pub const SCHEMA: &str = "tclab.report/1";

/// What a command produced before formatting.
pub struct Outcome {
    pub inputs: Value,
    pub results: Value,
    pub text: String,
    /// Header row first.
    pub table: Vec<Vec<String>>,
    pub ok: bool,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: &'static str,
    pub tool_version: &'static str,
    pub seed: u64,
    pub inputs: Value,
    pub ok: bool,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
    #[serde(skip)]
    text: String,
    #[serde(skip)]
    table: Vec<Vec<String>>,
}

impl Report {
    pub fn new(command: &'static str, seed: u64, o: Outcome, elapsed: Option<Duration>) -> Self {
        Self {
            schema: SCHEMA,
            command,
            tool_version: env!("CARGO_PKG_VERSION"),
            seed,
            inputs: o.inputs,
            ok: o.ok,
            results: o.results,
            timing_ms: elapsed.map(|d| (d.as_secs_f64() * 1e6).round() / 1e3),
            text: o.text,
            table: o.table,
        }
    }

    pub fn render(&self, format: Format) -> Result<String, String> {
        match format {
            Format::Json => serde_json::to_string_pretty(self).map(|s| s + "\n").map_err(|e| e.to_string()),
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                if let Some(t) = self.timing_ms {
                    s.push_str(&format!("time: {t} ms\n"));
                }
                Ok(s)
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                for row in &self.table {
                    w.write_record(row).map_err(|e| e.to_string())?;
                }
                String::from_utf8(w.into_inner().map_err(|e| e.to_string())?).map_err(|e| e.to_string())
            }
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(tclab::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use tclab::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(E::CrossCheckMismatch(_) | E::NotCertified(_) | E::TraceSplitFailed(_)) => 1,
            CliError::Core(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => f.write_str(s),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<tclab::Error> for CliError {
    fn from(e: tclab::Error) -> Self {
        CliError::Core(e)
    }
}

pub fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

pub fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}
