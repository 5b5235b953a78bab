//! CSV and JSON artifacts, written atomically.
//!
//! CSV files start with one `#` line naming the command and the generation
//! time, followed by a header row and data rows. Everything after the first
//! line depends only on the configuration and seed.

use serde_json::Value;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

/// Writes `bytes` to `path` via a temporary sibling and a rename.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    let name = path.file_name().and_then(|s| s.to_str()).unwrap_or("artifact");
    let tmp = path.with_file_name(format!(".{name}.tmp-{}", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// A table with a fixed header; cells are pre-formatted strings.
#[derive(Debug, Clone, PartialEq)]
pub struct Csv {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        Csv { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    /// Header row plus data rows, LF-terminated.
    pub fn body(&self) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for r in &self.rows {
            s.push_str(&r.join(","));
            s.push('\n');
        }
        s
    }

    pub fn render(&self, command: &str) -> String {
        let ts = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let mut s = String::new();
        let _ = writeln!(s, "# kwlab {command} generated_at={ts}");
        s.push_str(&self.body());
        s
    }

    pub fn write(&self, path: &Path, command: &str) -> io::Result<()> {
        write_atomic(path, self.render(command).as_bytes())
    }
}

/// Formats a float with full round-trip precision and `.` as separator.
pub fn num(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else {
        format!("{x:e}")
    }
}

pub fn opt_num(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "n/a".into())
}

/// Adds `"v": 1` to a JSON object.
pub fn versioned(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("v".into(), Value::from(1));
    }
    v
}

pub fn write_json(path: &Path, v: &Value) -> io::Result<()> {
    let mut s = serde_json::to_string_pretty(v).map_err(io::Error::other)?;
    s.push('\n');
    write_atomic(path, s.as_bytes())
}

pub fn artifact_path(dir: &Path, output: Option<&str>, default: &str) -> PathBuf {
    dir.join(output.unwrap_or(default))
}
