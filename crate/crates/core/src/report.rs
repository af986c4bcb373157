//! The versioned report document shared by every CLI command.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One checked claim. `expected` names the value and where it comes from;
/// numbers are exact strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultEntry {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub status: Status,
}

impl ResultEntry {
    pub fn new(
        name: impl Into<String>,
        expected: impl Into<String>,
        computed: impl Into<String>,
        ok: bool,
    ) -> Self {
        ResultEntry {
            name: name.into(),
            expected: expected.into(),
            computed: computed.into(),
            status: Status::from_bool(ok),
        }
    }

    /// Informational entry: no claim attached.
    pub fn info(name: impl Into<String>, computed: impl Into<String>) -> Self {
        ResultEntry {
            name: name.into(),
            expected: "-".into(),
            computed: computed.into(),
            status: Status::Pass,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: u32,
    pub command: String,
    pub algebra: String,
    pub window: i64,
    pub results: Vec<ResultEntry>,
    pub elapsed_ms: u64,
}

impl ReportDocument {
    pub fn new(command: impl Into<String>, algebra: impl Into<String>, window: i64) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            command: command.into(),
            algebra: algebra.into(),
            window,
            results: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, entry: ResultEntry) {
        self.results.push(entry);
    }

    /// True iff every entry passed.
    pub fn passed(&self) -> bool {
        self.results.iter().all(ResultEntry::passed)
    }
}
