//! Artifacts: one file per invocation, with a schema header line, written
//! atomically.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug)]
pub enum Artifact {
    /// JSON lines after a `{"schema": .., "version": ..}` line.
    Json { schema: String, records: Vec<Value> },
    /// CSV after a `# schema: .. v1` line.
    Csv {
        schema: String,
        header: Vec<String>,
        rows: Vec<Vec<String>>,
    },
}

impl Artifact {
    pub fn json(command: &str, records: Vec<Value>) -> Self {
        Artifact::Json {
            schema: format!("cherednik.{command}"),
            records,
        }
    }

    pub fn csv(command: &str, header: Vec<String>, rows: Vec<Vec<String>>) -> Self {
        Artifact::Csv {
            schema: format!("cherednik.{command}"),
            header,
            rows,
        }
    }

    pub fn render(&self) -> io::Result<Vec<u8>> {
        let mut out = Vec::new();
        match self {
            Artifact::Json { schema, records } => {
                writeln!(out, "{}", json!({"schema": schema, "version": SCHEMA_VERSION}))?;
                for r in records {
                    writeln!(out, "{r}")?;
                }
            }
            Artifact::Csv { schema, header, rows } => {
                writeln!(out, "# schema: {schema} v{SCHEMA_VERSION}")?;
                let mut w = csv::Writer::from_writer(&mut out);
                w.write_record(header)?;
                for row in rows {
                    w.write_record(row)?;
                }
                w.flush()?;
            }
        }
        Ok(out)
    }
}

/// Write to a sibling temporary file, then rename over `path`.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let name = path
        .file_name()
        .ok_or_else(|| io::Error::new(io::ErrorKind::InvalidInput, "artifact path has no file name"))?;
    let tmp: PathBuf = path.with_file_name(format!(".{}.{}.tmp", name.to_string_lossy(), std::process::id()));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}
