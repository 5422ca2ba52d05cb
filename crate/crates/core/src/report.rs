//! Pass/fail records shared by every check.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn passed(self) -> bool {
        self == Status::Pass
    }
}

/// `{check, group, max_degree, status, witness?}`.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub group: String,
    pub max_degree: Option<u32>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CheckReport {
    pub fn new(check: &str, group: &str, max_degree: Option<u32>) -> Self {
        CheckReport {
            check: check.to_string(),
            group: group.to_string(),
            max_degree,
            status: Status::Pass,
            witness: None,
        }
    }

    /// Record a failure; the first witness is kept.
    pub fn fail(&mut self, witness: impl Into<String>) {
        if self.status == Status::Pass {
            self.witness = Some(witness.into());
        }
        self.status = Status::Fail;
    }

    pub fn passed(&self) -> bool {
        self.status.passed()
    }
}
