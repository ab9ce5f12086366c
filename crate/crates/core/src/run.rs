//! Running the checks a scenario document declares.

use serde_json::json;

use crate::engine::Verdict;
use crate::field::Field;
use crate::scenario::{parse_scenario, AnyScenario, ScenarioFile};

/// Overall outcome, ordered by severity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    /// Every check holds.
    Holds,
    /// Nothing was violated, but some check was degenerate or could not run.
    Inconclusive,
    /// Some check was violated.
    Violated,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Holds => 0,
            Status::Violated => 1,
            Status::Inconclusive => 2,
        }
    }
}

/// One JSON line per check, plus the combined status.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub lines: Vec<String>,
    pub status: Status,
}

impl RunOutcome {
    fn input_error(message: String) -> Self {
        RunOutcome {
            lines: vec![json!({ "error": message }).to_string()],
            status: Status::Inconclusive,
        }
    }

    pub fn report(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

pub fn run_scenario_text(text: &str) -> RunOutcome {
    match parse_scenario(text) {
        Ok(s) => run_scenario(&s),
        Err(e) => RunOutcome::input_error(e.to_string()),
    }
}

pub fn run_scenario(scenario: &AnyScenario) -> RunOutcome {
    match scenario {
        AnyScenario::Gauss(f) => run_file(f),
        AnyScenario::Prime(f) => run_file(f),
    }
}

pub fn run_file<F: Field>(file: &ScenarioFile<F>) -> RunOutcome {
    let instances = match file.instances() {
        Ok(v) => v,
        Err(e) => return RunOutcome::input_error(e.to_string()),
    };
    let mut lines = Vec::new();
    let mut status = Status::Holds;
    let mut unmatched: Option<Vec<String>> = None;
    for inst in &instances {
        let (line, s) = match inst.check() {
            Ok(report) => {
                let (report, missing) = file.apply_expectations(report);
                unmatched = Some(match unmatched {
                    None => missing,
                    Some(prev) => prev.into_iter().filter(|n| missing.contains(n)).collect(),
                });
                let s = match report.verdict {
                    Verdict::Holds => Status::Holds,
                    Verdict::Violated => Status::Violated,
                    Verdict::Degenerate => Status::Inconclusive,
                };
                (report.to_string(), s)
            }
            Err(e) => (
                json!({ "claim": inst.claim(), "error": e.to_string() }).to_string(),
                Status::Inconclusive,
            ),
        };
        lines.push(line);
        status = status.max(s);
    }
    if let Some(names) = unmatched.filter(|n| !n.is_empty()) {
        lines.push(
            json!({ "error": format!("no report has a witness named {}", names.join(", ")) })
                .to_string(),
        );
        status = status.max(Status::Inconclusive);
    }
    RunOutcome { lines, status }
}
