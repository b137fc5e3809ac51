//! Shared result records for verification sweeps.

use serde::Serialize;

/// Maximum number of failing cases kept verbatim in a [`Check`].
pub const MAX_RECORDS: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Informational row of a report-only check.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub inputs: String,
    pub expected: String,
    pub got: String,
    pub verdict: Verdict,
}

impl CaseRecord {
    pub fn new(inputs: impl Into<String>, expected: impl Into<String>, got: impl Into<String>, verdict: Verdict) -> Self {
        CaseRecord {
            inputs: inputs.into(),
            expected: expected.into(),
            got: got.into(),
            verdict,
        }
    }

    pub fn compare(inputs: impl Into<String>, expected: impl Into<String>, got: impl Into<String>) -> Self {
        let expected = expected.into();
        let got = got.into();
        let verdict = if expected == got { Verdict::Pass } else { Verdict::Fail };
        CaseRecord {
            inputs: inputs.into(),
            expected,
            got,
            verdict,
        }
    }
}

/// Outcome of one named check. Only failing cases (up to [`MAX_RECORDS`])
/// and explicitly added informational rows are stored.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    /// Whether a failure here should fail the run.
    pub asserted: bool,
    pub cases: usize,
    pub failures: usize,
    pub records: Vec<CaseRecord>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, asserted: bool) -> Self {
        Check {
            name: name.into(),
            asserted,
            cases: 0,
            failures: 0,
            records: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Counts a case; failing cases are kept while there is room.
    pub fn record(&mut self, case: CaseRecord) {
        self.cases += 1;
        if case.verdict == Verdict::Fail {
            self.failures += 1;
            if self.records.len() < MAX_RECORDS {
                self.records.push(case);
            }
        }
    }

    pub fn ok(&mut self) {
        self.cases += 1;
    }

    pub fn info(&mut self, case: CaseRecord) {
        self.records.push(CaseRecord {
            verdict: Verdict::Info,
            ..case
        });
    }

    pub fn note(&mut self, text: impl Into<String>) {
        self.notes.push(text.into());
    }

    /// Runs `judge` on each item in order; `None` means the case passed.
    pub fn sweep<T>(
        name: impl Into<String>,
        asserted: bool,
        items: impl IntoIterator<Item = T>,
        mut judge: impl FnMut(T) -> Option<CaseRecord>,
    ) -> Self {
        let mut check = Check::new(name, asserted);
        for item in items {
            match judge(item) {
                Some(case) => check.record(case),
                None => check.ok(),
            }
        }
        check
    }

    /// Whether this check blocks success: asserted and failing.
    pub fn blocking(&self) -> bool {
        self.asserted && !self.passed()
    }
}
