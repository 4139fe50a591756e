//! Output directories: `config.json`, `trials.jsonl`, `summary.csv`.
//!
//! Files are staged under a `.partial` suffix and renamed only once all of
//! them are written, so an interrupted run never leaves an unflagged file.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Serialize;

pub const CONFIG: &str = "config.json";
pub const TRIALS: &str = "trials.jsonl";
pub const SUMMARY: &str = "summary.csv";

/// First line of every `trials.jsonl`: everything that determines the
/// records, and nothing that does not (no worker count, no timings).
#[derive(Serialize)]
pub struct Header<P: Serialize> {
    pub record_type: &'static str,
    pub command: &'static str,
    pub version: &'static str,
    #[serde(flatten)]
    pub params: P,
}

impl<P: Serialize> Header<P> {
    pub fn new(command: &'static str, params: P) -> Self {
        Header {
            record_type: "config",
            command,
            version: env!("CARGO_PKG_VERSION"),
            params,
        }
    }
}

/// `config.json`: the header plus how the run was executed.
#[derive(Serialize)]
struct RunConfig<'a, P: Serialize> {
    #[serde(flatten)]
    header: &'a Header<P>,
    invocation: Vec<String>,
    jobs: usize,
    record_timing: bool,
}

pub struct OutputDir {
    dir: PathBuf,
    staged: Vec<(PathBuf, PathBuf)>,
}

impl OutputDir {
    pub fn create(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        Ok(OutputDir {
            dir: dir.to_path_buf(),
            staged: Vec::new(),
        })
    }

    fn stage(&mut self, name: &str, bytes: &[u8]) -> Result<()> {
        let target = self.dir.join(name);
        let partial = self.dir.join(format!("{name}.partial"));
        fs::write(&partial, bytes).with_context(|| format!("writing {}", partial.display()))?;
        self.staged.push((partial, target));
        Ok(())
    }

    pub fn config<P: Serialize>(
        &mut self,
        header: &Header<P>,
        jobs: usize,
        record_timing: bool,
    ) -> Result<()> {
        let cfg = RunConfig {
            header,
            invocation: std::env::args().collect(),
            jobs,
            record_timing,
        };
        let mut text = serde_json::to_string_pretty(&cfg)?;
        text.push('\n');
        self.stage(CONFIG, text.as_bytes())
    }

    /// The header line followed by one line per record.
    pub fn records<P: Serialize, R: Serialize>(
        &mut self,
        header: &Header<P>,
        records: &[R],
    ) -> Result<()> {
        let mut buf = Vec::new();
        serde_json::to_writer(&mut buf, header)?;
        buf.push(b'\n');
        for r in records {
            serde_json::to_writer(&mut buf, r)?;
            buf.push(b'\n');
        }
        self.stage(TRIALS, &buf)
    }

    pub fn summary<R: Serialize>(&mut self, rows: &[R]) -> Result<()> {
        self.stage(SUMMARY, &csv_bytes(rows, b',')?)
    }

    /// Renames every staged file into place.
    pub fn commit(self) -> Result<()> {
        for (partial, target) in self.staged {
            fs::rename(&partial, &target)
                .with_context(|| format!("renaming {}", partial.display()))?;
        }
        Ok(())
    }
}

pub fn csv_bytes<R: Serialize>(rows: &[R], delimiter: u8) -> Result<Vec<u8>> {
    let mut w = csv::WriterBuilder::new()
        .delimiter(delimiter)
        .from_writer(Vec::new());
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    w.into_inner().context("flushing CSV")
}

/// Writes `text` to `path` through a temporary sibling file.
pub fn write_file(path: &Path, text: &str) -> Result<()> {
    let mut name = path
        .file_name()
        .context("output path has no file name")?
        .to_os_string();
    name.push(".partial");
    let partial = path.with_file_name(name);
    let mut f =
        fs::File::create(&partial).with_context(|| format!("writing {}", partial.display()))?;
    f.write_all(text.as_bytes())?;
    drop(f);
    fs::rename(&partial, path).with_context(|| format!("writing {}", path.display()))
}
