use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// The envelope every subcommand emits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub input: Value,
    pub result: Value,
    pub certificates: Value,
    pub references: Vec<String>,
}

impl Report {
    pub fn new(input: Value, result: Value, certificates: Value) -> Self {
        Self {
            input,
            result,
            certificates,
            references: Vec::new(),
        }
    }

    pub fn emit(&self, format: Format, out: &mut impl Write) -> io::Result<()> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, self)?;
                writeln!(out)
            }
            Format::Text => {
                write_fields(out, &self.result)?;
                if !self.certificates.is_null() {
                    writeln!(out, "certificates:")?;
                    write_fields(out, &self.certificates)
                } else {
                    Ok(())
                }
            }
        }
    }
}

fn write_fields(out: &mut impl Write, v: &Value) -> io::Result<()> {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                writeln!(out, "  {k}: {}", compact(x))?;
            }
            Ok(())
        }
        other => writeln!(out, "  {}", compact(other)),
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
