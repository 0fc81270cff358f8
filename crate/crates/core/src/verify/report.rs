//! Claim reports, suite summaries and their text and JSON-lines renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::ring::RingSpec;

/// Counterexamples and skips kept per report; the counts are always exact.
pub const LIST_CAP: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Partial,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Partial => "partial",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub m: String,
    pub n: String,
    pub a: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Skip {
    pub instance: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub ring: RingSpec,
    pub statement: String,
    /// `fail` for claims asserting that a counterexample exists.
    pub expected: Verdict,
    pub verdict: Verdict,
    /// Every enumerated instance, including vacuous and skipped ones.
    pub instances_checked: usize,
    /// Instances whose hypotheses do not hold.
    pub vacuous: usize,
    pub counterexample_count: usize,
    pub counterexamples: Vec<Counterexample>,
    pub skipped_count: usize,
    pub skipped: Vec<Skip>,
    /// For the extension claims: whether the `(2)Z/4 ↪ Z/4 ↠ Z/2` witness was
    /// found to violate closure. `None` when the grid does not contain it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub anchor_witness: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ClaimReport {
    pub fn is_expected(&self) -> bool {
        let verdict_ok = match self.expected {
            Verdict::Fail => self.verdict == Verdict::Fail,
            _ => self.verdict != Verdict::Fail,
        };
        verdict_ok && self.anchor_witness != Some(false)
    }
}

pub const SUITE_HEADER: &str = "\
isomorphism claims compare canonical forms (abstract isomorphism);
exactness claims use only sequences whose three terms lie in the subcategory;
non-stabilizing completions are skipped and make a verdict partial";

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub reports: Vec<ClaimReport>,
}

#[derive(Serialize)]
struct SummaryRecord<'a> {
    record: &'static str,
    reports: usize,
    unexpected: Vec<String>,
    note: &'a str,
}

#[derive(Serialize)]
struct ClaimRecord<'a> {
    record: &'static str,
    #[serde(flatten)]
    report: &'a ClaimReport,
}

impl SuiteReport {
    /// `claim@ring` for every report whose verdict differs from the expected one.
    pub fn unexpected(&self) -> Vec<String> {
        self.reports
            .iter()
            .filter(|r| !r.is_expected())
            .map(|r| format!("{}@{}", r.claim_id, r.ring))
            .collect()
    }

    pub fn all_expected(&self) -> bool {
        self.reports.iter().all(ClaimReport::is_expected)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in SUITE_HEADER.lines() {
            let _ = writeln!(out, "# {line}");
        }
        for r in &self.reports {
            let mark = if r.is_expected() {
                ""
            } else {
                "  [UNEXPECTED]"
            };
            let _ = writeln!(
                out,
                "{} [{}] {} (expected {}): {} instances, {} vacuous, {} counterexamples, {} skipped{mark}",
                r.claim_id,
                r.ring,
                r.verdict,
                r.expected,
                r.instances_checked,
                r.vacuous,
                r.counterexample_count,
                r.skipped_count,
            );
            let _ = writeln!(out, "    {}", r.statement);
            if let Some(note) = &r.note {
                let _ = writeln!(out, "    note: {note}");
            }
            if let Some(w) = r.anchor_witness {
                let _ = writeln!(
                    out,
                    "    witness (2)Z/4 -> Z/4 -> Z/2 violates closure: {w}"
                );
            }
            for c in &r.counterexamples {
                let _ = writeln!(
                    out,
                    "    counterexample M = {}, N = {}, a = {}: {}",
                    c.m, c.n, c.a, c.detail
                );
            }
            for s in &r.skipped {
                let _ = writeln!(out, "    skipped {}: {}", s.instance, s.reason);
            }
        }
        let unexpected = self.unexpected();
        let _ = writeln!(
            out,
            "{} reports, {} unexpected{}",
            self.reports.len(),
            unexpected.len(),
            if unexpected.is_empty() {
                String::new()
            } else {
                format!(": {}", unexpected.join(", "))
            }
        );
        out
    }

    /// One record per claim report, then a summary record.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            let rec = ClaimRecord {
                record: "claim",
                report: r,
            };
            out.push_str(&serde_json::to_string(&rec).expect("serializable report"));
            out.push('\n');
        }
        let summary = SummaryRecord {
            record: "summary",
            reports: self.reports.len(),
            unexpected: self.unexpected(),
            note: SUITE_HEADER,
        };
        out.push_str(&serde_json::to_string(&summary).expect("serializable summary"));
        out.push('\n');
        out
    }
}
