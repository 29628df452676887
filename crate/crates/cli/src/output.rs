//! Artifact writing: deterministic JSON/CSV to a file or stdout.

use std::io::Write;
use std::path::Path;

use crate::Failure;

pub fn write_artifact(out: Option<&Path>, content: &str) -> Result<(), Failure> {
    match out {
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| Failure::Other(format!("writing to stdout: {e}")))
        }
        Some(path) => {
            std::fs::write(path, content)
                .map_err(|e| Failure::Other(format!("writing {}: {e}", path.display())))?;
            eprintln!("wrote {}", path.display());
            Ok(())
        }
    }
}

pub fn json_line(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

/// Quotes a CSV field only when needed.
pub fn csv_field(raw: &str) -> String {
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}
