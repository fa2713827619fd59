//! Output envelope and JSON/CSV emission.
//!
//! Numbers are written in the shortest form that parses back to the same
//! `f64`, so every value round-trips exactly.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

/// Every JSON document the tool prints has this shape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope<I, R, D> {
    pub command: String,
    pub inputs: I,
    pub results: R,
    pub diagnostics: D,
    pub version: String,
}

impl<I, R, D> Envelope<I, R, D> {
    pub fn new(command: &str, inputs: I, results: R, diagnostics: D) -> Self {
        Envelope {
            command: command.to_owned(),
            inputs,
            results,
            diagnostics,
            version: VERSION.to_owned(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv writer emits utf-8"))
}

/// Send `text` to `--out` if given, otherwise to `stdout`.
pub fn deliver(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let file = File::create(path).map_err(|e| CliError::Output(path.to_owned(), e))?;
            let mut w = BufWriter::new(file);
            w.write_all(text.as_bytes())
                .and_then(|_| w.flush())
                .map_err(|e| CliError::Output(path.to_owned(), e))
        }
        None => {
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
