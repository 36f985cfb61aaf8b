//! Plain-text reports: `#` comment headers that may vary run to run
//! (timestamp, paths) above a `key=value` body that is byte-identical
//! across runs of the same binary on the same input.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;

pub struct Report {
    header: Vec<String>,
    body: Vec<(String, String)>,
}

impl Report {
    pub fn new(tool: &str) -> Self {
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Report {
            header: vec![
                format!("yosida {tool} report"),
                format!("generated: {stamp} (unix seconds)"),
            ],
            body: Vec::new(),
        }
    }

    /// Adds a header comment; comments carry run-specific context and
    /// are excluded from the deterministic body.
    pub fn comment(&mut self, line: impl Into<String>) {
        self.header.push(line.into());
    }

    pub fn kv(&mut self, key: &str, value: impl Display) {
        self.body.push((key.to_string(), value.to_string()));
    }

    /// Joins per-atom values into one deterministic comma list.
    pub fn kv_list<T: Display>(&mut self, key: &str, values: impl IntoIterator<Item = T>) {
        let joined = values
            .into_iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        self.body.push((key.to_string(), joined));
    }

    /// The deterministic portion.
    pub fn body_string(&self) -> String {
        let mut out = String::new();
        for (key, value) in &self.body {
            out.push_str(key);
            out.push('=');
            out.push_str(value);
            out.push('\n');
        }
        out
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for line in &self.header {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&self.body_string());
        out
    }

    pub fn write(&self, dir: &Path, name: &str) -> anyhow::Result<PathBuf> {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("cannot create output directory {}", dir.display()))?;
        let path = dir.join(name);
        std::fs::write(&path, self.render())
            .with_context(|| format!("cannot write report {}", path.display()))?;
        Ok(path)
    }
}

/// Writes rows of comma-separated values under a header line.
pub fn write_csv(
    dir: &Path,
    name: &str,
    header: &str,
    rows: &[Vec<String>],
) -> anyhow::Result<PathBuf> {
    std::fs::create_dir_all(dir)
        .with_context(|| format!("cannot create output directory {}", dir.display()))?;
    let path = dir.join(name);
    let mut text = String::from(header);
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?;
    Ok(path)
}
