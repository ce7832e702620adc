//! Run manifests: enough to re-execute a run and check its output.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    /// Full argument vector, program name excluded.
    pub args: Vec<String>,
    /// Effective settings after flags and environment were applied.
    pub parameters: BTreeMap<String, String>,
    /// SHA-256 of everything read as input (stdin or files), hex.
    pub input_sha256: String,
    /// SHA-256 of standard output, hex.
    pub output_sha256: String,
    /// SHA-256 of the file written with `--output`, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output_file_sha256: Option<String>,
    pub exit_code: u8,
    pub duration_ms: f64,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

impl RunManifest {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        subcommand: &str,
        args: Vec<String>,
        parameters: BTreeMap<String, String>,
        input: &[u8],
        output: &[u8],
        exit_code: u8,
        duration: Duration,
    ) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            subcommand: subcommand.to_string(),
            args,
            parameters,
            input_sha256: sha256_hex(input),
            output_sha256: sha256_hex(output),
            output_file_sha256: None,
            exit_code,
            duration_ms: duration.as_secs_f64() * 1e3,
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        text.push('\n');
        std::fs::write(path, text)
    }

    pub fn read(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(std::io::Error::other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            sha256_hex(b""),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }
}
