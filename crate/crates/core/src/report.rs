//! Pass/fail records shared by every verification routine.

use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub inputs: String,
    pub left: String,
    pub right: String,
}

/// Outcome of checking one identity over many instances. Passes exactly
/// when `failures` is empty.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub checked: usize,
    pub inapplicable: usize,
    pub failures: Vec<Failure>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>) -> Self {
        IdentityReport {
            identity: identity.into(),
            checked: 0,
            inapplicable: 0,
            failures: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Records one instance.
    pub fn record(&mut self, ok: bool, inputs: impl FnOnce() -> String, left: impl FnOnce() -> String, right: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(Failure { inputs: inputs(), left: left(), right: right() });
        }
    }

    pub fn skip(&mut self) {
        self.inapplicable += 1;
    }

    /// Merges another report of the same identity. Associative, and the
    /// result does not depend on merge order up to failure ordering.
    pub fn merge(&mut self, other: IdentityReport) {
        self.checked += other.checked;
        self.inapplicable += other.inapplicable;
        self.failures.extend(other.failures);
        self.elapsed += other.elapsed;
    }

    pub fn summary(&self) -> String {
        format!(
            "{} {}: {} checked, {} inapplicable, {} failures",
            if self.passed() { "PASS" } else { "FAIL" },
            self.identity,
            self.checked,
            self.inapplicable,
            self.failures.len()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn merge_and_pass() {
        let mut a = IdentityReport::new("x");
        a.record(true, String::new, String::new, String::new);
        a.skip();
        let mut b = IdentityReport::new("x");
        b.record(false, || "i".into(), || "l".into(), || "r".into());
        assert!(a.passed());
        a.merge(b);
        assert!(!a.passed());
        assert_eq!((a.checked, a.inapplicable), (2, 1));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(
            json,
            r#"{"identity":"x","checked":2,"inapplicable":1,"failures":[{"inputs":"i","left":"l","right":"r"}]}"#
        );
    }
}
