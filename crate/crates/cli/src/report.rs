//! Report files: deterministic content, named by command and parameter
//! digest, written once and never overwritten.

use sha2::{Digest, Sha256};
use std::path::{Path, PathBuf};

pub const DEFAULT_MAX_BASIS: usize = 1_000_000;
pub const DEFAULT_MAX_ENTRIES: usize = 10_000_000;

pub struct Report {
    command: String,
    params: String,
    lines: Vec<String>,
    pub failed: bool,
    pub cap_hit: bool,
}

impl Report {
    pub fn new(command: &str, params: &str) -> Self {
        Report {
            command: command.to_string(),
            params: params.to_string(),
            lines: Vec::new(),
            failed: false,
            cap_hit: false,
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        let s = s.into();
        println!("{s}");
        self.lines.push(s);
    }

    pub fn fail(&mut self, s: impl Into<String>) {
        let s = s.into();
        self.failed = true;
        self.line(format!("FAIL {s}"));
    }

    pub fn pass(&mut self, s: impl Into<String>) {
        let s = s.into();
        self.line(format!("PASS {s}"));
    }

    pub fn check(&mut self, ok: bool, s: impl Into<String>) {
        if ok {
            self.pass(s);
        } else {
            self.fail(s);
        }
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update(self.command.as_bytes());
        h.update(b"\0");
        h.update(self.params.as_bytes());
        let out = h.finalize();
        out.iter().take(8).map(|b| format!("{b:02x}")).collect()
    }

    pub fn path(&self, outdir: &Path) -> PathBuf {
        outdir.join(format!("{}-{}.txt", self.command, self.digest()))
    }

    /// Writes the report unless a file with the same digest already exists
    /// (reruns of identical parameters produce identical content).
    pub fn write(&self, outdir: &Path) -> std::io::Result<PathBuf> {
        std::fs::create_dir_all(outdir)?;
        let path = self.path(outdir);
        if path.exists() {
            return Ok(path);
        }
        let mut text = String::new();
        text.push_str(&format!("command: {}\n", self.command));
        text.push_str(&format!("params: {}\n", self.params));
        text.push_str(&format!(
            "caps: max_basis={} max_matrix_entries={} time_cap=none\n",
            DEFAULT_MAX_BASIS, DEFAULT_MAX_ENTRIES
        ));
        for l in &self.lines {
            text.push_str(l);
            text.push('\n');
        }
        std::fs::write(&path, text)?;
        Ok(path)
    }
}

pub fn outdir() -> PathBuf {
    std::env::var("MULTIOR_OUTDIR")
        .map(PathBuf::from)
        .unwrap_or_else(|_| PathBuf::from("reports"))
}
