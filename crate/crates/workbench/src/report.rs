//! Check results and reports: a human-readable table (with timings) and a
//! deterministic structured text format (versioned, timing-free, byte-stable
//! for identical inputs).

use std::fmt::Write as _;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub pass: bool,
    /// Deterministic detail (expected/actual values, witnesses).
    pub detail: String,
    pub millis: u128,
}

#[derive(Debug, Default)]
pub struct Report {
    pub entries: Vec<CheckResult>,
}

impl Report {
    pub fn new() -> Report {
        Report::default()
    }

    pub fn push(&mut self, entry: CheckResult) {
        self.entries.push(entry);
    }

    pub fn merge(&mut self, other: Report) {
        self.entries.extend(other.entries);
    }

    pub fn all_pass(&self) -> bool {
        self.entries.iter().all(|e| e.pass)
    }

    pub fn failures(&self) -> usize {
        self.entries.iter().filter(|e| !e.pass).count()
    }

    /// Human-readable table, one line per check, with timings.
    pub fn text(&self) -> String {
        let mut out = String::new();
        let width = self
            .entries
            .iter()
            .map(|e| e.id.len())
            .max()
            .unwrap_or(0)
            .max(8);
        for e in &self.entries {
            let status = if e.pass { "pass" } else { "FAIL" };
            let _ = write!(out, "{:width$}  {status}  {:>6} ms", e.id, e.millis);
            if !e.detail.is_empty() {
                let _ = write!(out, "  {}", e.detail);
            }
            out.push('\n');
        }
        let _ = write!(
            out,
            "{} checks, {} failed\n",
            self.entries.len(),
            self.failures()
        );
        out
    }

    /// Deterministic structured format: identical inputs produce
    /// byte-identical output (no timings).
    pub fn structured(&self) -> String {
        let mut out = String::from("conewb-report 1\n");
        for e in &self.entries {
            let status = if e.pass { "pass" } else { "fail" };
            let _ = write!(out, "check {} {status}", e.id);
            if !e.detail.is_empty() {
                let _ = write!(out, " detail={}", e.detail.replace(' ', "_"));
            }
            out.push('\n');
        }
        let _ = write!(out, "end checks={} failures={}\n", self.entries.len(), self.failures());
        out
    }
}

/// Runs one named check, timing it; `f` returns pass/fail and detail text.
pub fn run_check(id: &str, f: impl FnOnce() -> (bool, String)) -> CheckResult {
    let start = Instant::now();
    let (pass, detail) = f();
    CheckResult {
        id: id.to_string(),
        pass,
        detail,
        millis: start.elapsed().as_millis(),
    }
}

/// Convenience: pass iff the closure's witness is `None`.
pub fn zero_check(
    id: &str,
    f: impl FnOnce() -> Option<String>,
) -> CheckResult {
    run_check(id, || match f() {
        None => (true, String::new()),
        Some(witness) => (false, witness),
    })
}
