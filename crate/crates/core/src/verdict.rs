use std::fmt;

use serde::Serialize;

/// Outcome of an audit against a stated bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Pass,
    Fail,
    HypothesisNotMet,
    Contradiction,
    Inapplicable,
}

impl Verdict {
    /// Verdicts that do not signal a failed check.
    pub fn is_ok(self) -> bool {
        matches!(self, Verdict::Pass | Verdict::HypothesisNotMet | Verdict::Inapplicable)
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::HypothesisNotMet => "HYPOTHESIS_NOT_MET",
            Verdict::Contradiction => "CONTRADICTION",
            Verdict::Inapplicable => "INAPPLICABLE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}
