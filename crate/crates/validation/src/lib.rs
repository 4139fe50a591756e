//! Helpers for the end-to-end acceptance checks in `tests/acceptance.rs`.
//!
//! Every check prints one `PASS`/`FAIL` line straight to the process
//! stdout, so the lines show up under `cargo test` without `--nocapture`.

use std::io::Write;
use std::path::Path;
use std::sync::{Mutex, MutexGuard};
use std::time::{Duration, Instant};

use trilo_cli::Outcome;

static SERIAL: Mutex<()> = Mutex::new(());

/// Checks run one at a time so that their runtimes are not inflated by
/// each other.
pub fn serial() -> MutexGuard<'static, ()> {
    SERIAL.lock().unwrap_or_else(|e| e.into_inner())
}

pub struct Check {
    name: &'static str,
    start: Instant,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Check {
    pub fn start(name: &'static str) -> Self {
        Check {
            name,
            start: Instant::now(),
            failures: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records `what` as a failure unless `ok`.
    pub fn expect(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.notes.push(what);
        } else {
            self.failures.push(what);
        }
    }

    pub fn within(&mut self, limit: Duration) {
        let took = self.start.elapsed();
        self.expect(
            took < limit,
            format!("runtime {:.1}s < {}s", took.as_secs_f64(), limit.as_secs()),
        );
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    /// Prints the verdict line and panics if anything failed.
    pub fn finish(self) {
        let verdict = if self.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        let mut detail = self.notes.join("; ");
        if !self.failures.is_empty() {
            let violated = format!("violated: {}", self.failures.join("; "));
            detail = if detail.is_empty() {
                violated
            } else {
                format!("{violated}; held: {detail}")
            };
        }
        let line = format!("[{verdict}] {}: {detail}\n", self.name);
        let mut out = std::io::stdout().lock();
        let _ = out.write_all(line.as_bytes());
        let _ = out.flush();
        assert!(self.failures.is_empty(), "{}", line.trim_end());
    }
}

/// Runs the `trilo` command line in-process.
pub fn cli(args: &[&str]) -> Outcome {
    let argv = std::iter::once("trilo").chain(args.iter().copied());
    trilo_cli::run(argv).unwrap_or_else(|e| panic!("trilo {}: {e:#}", args.join(" ")))
}

pub fn read_jsonl(dir: &Path) -> Vec<serde_json::Value> {
    let text = std::fs::read_to_string(dir.join("trials.jsonl")).expect("trials.jsonl");
    text.lines()
        .map(|l| serde_json::from_str(l).expect("JSON line"))
        .collect()
}

/// `sqrt(p(1 − p)/trials)`.
pub fn standard_error(p: f64, trials: u64) -> f64 {
    (p * (1.0 - p) / trials as f64).sqrt()
}
