/// One failed check, with the canonical encodings needed to rerun it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub check: String,
    pub objects: Vec<String>,
}

/// Outcome of a verification suite.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(suite: &str) -> Self {
        CheckReport {
            suite: suite.to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// Count a check; record a failure when `ok` is false.
    pub fn check(&mut self, ok: bool, check: impl FnOnce() -> String, objects: Vec<String>) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                check: check(),
                objects,
            });
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self.notes.extend(other.notes);
    }
}
