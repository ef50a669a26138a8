//! Outcome of a verification sweep: what was scanned, how many checks ran,
//! and an explicit witness for every failed check.
//!
//! Reports are plain data so the CLI can render them as markdown, CSV, or
//! JSON without the verifiers knowing about output formats. Everything except
//! `elapsed_ms` is deterministic for a given build and range.

use std::time::Instant;

/// A single failed check, with enough context to replay it by hand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    /// Where it failed, e.g. `m=17` or `m=11, r=4, j=2`.
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    /// Which verification ran, using the CLI target names (`theorem1`, ...).
    pub command: String,
    /// Human-readable range that was swept, e.g. `m=0..3000`.
    pub range: String,
    /// Number of individual checks performed.
    pub checked: u64,
    /// Empty exactly when the sweep passed.
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Builds a report while timing the sweep that fills it.
pub(crate) struct ReportBuilder {
    command: String,
    range: String,
    checked: u64,
    failures: Vec<Failure>,
    started: Instant,
}

impl ReportBuilder {
    pub(crate) fn new(command: impl Into<String>, range: impl Into<String>) -> Self {
        ReportBuilder {
            command: command.into(),
            range: range.into(),
            checked: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    pub(crate) fn record(&mut self, checked: u64, failures: Vec<Failure>) {
        self.checked += checked;
        self.failures.extend(failures);
    }

    pub(crate) fn check(&mut self, ok: bool, witness: impl FnOnce() -> (String, String, String)) {
        self.checked += 1;
        if !ok {
            let (witness, expected, actual) = witness();
            self.failures.push(Failure {
                witness,
                expected,
                actual,
            });
        }
    }

    pub(crate) fn finish(self) -> VerificationReport {
        VerificationReport {
            command: self.command,
            range: self.range,
            checked: self.checked,
            failures: self.failures,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_pass_fail_reflects_failures() {
        let mut b = ReportBuilder::new("demo", "m=0..1");
        b.check(true, || unreachable!());
        assert!(b.failures.is_empty());
        b.check(false, || ("m=1".into(), "yes".into(), "no".into()));
        let report = b.finish();
        assert_eq!(report.checked, 2);
        assert!(!report.passed());
        assert_eq!(report.failures[0].witness, "m=1");
    }
}
