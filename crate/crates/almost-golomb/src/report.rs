//! Machine-readable check reports shared by every identity suite.

use serde::Serialize;

/// Maximum number of violation samples retained per report.
pub const MAX_SAMPLES: usize = 10;

/// A single failed instance of an identity.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub index: u64,
    pub expected: i64,
    pub actual: i64,
}

/// Result of checking one identity over an index range.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub identity: String,
    pub range: (u64, u64),
    pub pass: bool,
    pub violation_count: u64,
    /// At most [`MAX_SAMPLES`] counterexamples.
    pub samples: Vec<Violation>,
}

impl CheckReport {
    pub fn new(identity: impl Into<String>) -> Self {
        CheckReport {
            identity: identity.into(),
            range: (u64::MAX, 0),
            pass: true,
            violation_count: 0,
            samples: Vec::new(),
        }
    }

    /// Record one checked instance.
    pub fn check(&mut self, index: u64, expected: i64, actual: i64) {
        self.range.0 = self.range.0.min(index);
        self.range.1 = self.range.1.max(index);
        if expected != actual {
            self.pass = false;
            self.violation_count += 1;
            if self.samples.len() < MAX_SAMPLES {
                self.samples.push(Violation {
                    index,
                    expected,
                    actual,
                });
            }
        }
    }

    /// Record an instance that can only pass or fail.
    pub fn check_bool(&mut self, index: u64, ok: bool) {
        self.check(index, 1, ok as i64);
    }

    /// True when the report never saw an instance.
    pub fn is_vacuous(&self) -> bool {
        self.range.0 == u64::MAX
    }

    pub fn summary_line(&self) -> String {
        if self.is_vacuous() {
            format!("{:<44} PASS (vacuous)", self.identity)
        } else if self.pass {
            format!(
                "{:<44} PASS  range {}..={}",
                self.identity, self.range.0, self.range.1
            )
        } else {
            format!(
                "{:<44} FAIL  {} violations, first at {}",
                self.identity,
                self.violation_count,
                self.samples.first().map(|v| v.index).unwrap_or(0)
            )
        }
    }
}

/// A named bundle of reports, serializable as the JSON report document.
#[derive(Debug, Clone, Serialize)]
pub struct ReportBundle {
    pub suite: String,
    pub reports: Vec<CheckReport>,
}

impl ReportBundle {
    pub fn new(suite: impl Into<String>, reports: Vec<CheckReport>) -> Self {
        ReportBundle {
            suite: suite.into(),
            reports,
        }
    }

    pub fn pass(&self) -> bool {
        self.reports.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_and_samples() {
        let mut r = CheckReport::new("demo");
        for i in 0..100u64 {
            r.check(i, 0, (i % 7 == 3) as i64);
        }
        assert!(!r.pass);
        assert_eq!(r.violation_count, 14);
        assert_eq!(r.samples.len(), MAX_SAMPLES);
        assert_eq!(r.range, (0, 99));
    }

    #[test]
    fn json_shape() {
        let mut r = CheckReport::new("demo");
        r.check(5, 1, 1);
        let bundle = ReportBundle::new("suite", vec![r]);
        let json = bundle.to_json().unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["reports"][0]["identity"], "demo");
        assert_eq!(value["reports"][0]["pass"], true);
        assert_eq!(value["reports"][0]["violation_count"], 0);
        assert!(value["reports"][0]["samples"]
            .as_array()
            .unwrap()
            .is_empty());
    }
}
