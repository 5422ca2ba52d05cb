use cherednik::acceptance::{run_criterion, CRITERIA};
use serde_json::json;

use super::Outcome;
use crate::artifact::Artifact;
use crate::error::CliError;

/// The acceptance criteria in order, or just those in `only`.
pub fn selftest(only: &[usize]) -> Result<Outcome, CliError> {
    let ids: Vec<usize> = if only.is_empty() {
        (1..=CRITERIA.len()).collect()
    } else {
        only.to_vec()
    };
    if let Some(bad) = ids.iter().find(|&&i| i == 0 || i > CRITERIA.len()) {
        return Err(CliError::Config(format!("no criterion {bad}; criteria are 1..={}", CRITERIA.len())));
    }
    let mut records = Vec::new();
    let mut summary = Vec::new();
    let mut passed = true;
    for id in ids {
        let o = run_criterion(id);
        passed &= o.passed;
        summary.push(o.to_string());
        // timings stay out of the artifact so reruns are byte-identical
        records.push(json!({"id": o.id, "title": o.title, "passed": o.passed, "detail": o.detail}));
    }
    let n = records.len();
    let ok = records.iter().filter(|r| r["passed"] == true).count();
    summary.push(format!("{ok}/{n} criteria passed"));
    Ok(Outcome {
        artifact: Artifact::json("selftest", records),
        summary,
        passed,
    })
}
