//! Checklists of named claims, rendered as text or JSON.

use std::fmt::Write as _;

use serde::Serialize;

use crate::verdict::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimStatus {
    Pass,
    Fail,
    /// Not refuted, but only sampled or searched up to a horizon.
    Inconclusive,
    /// A hypothesis did not hold, so the claim was not evaluated.
    Skipped,
    /// Recorded for the reader; does not affect the overall status.
    Info,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Claim {
    pub name: String,
    pub status: ClaimStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Claim {
    pub fn new(name: impl Into<String>, status: ClaimStatus) -> Self {
        Claim {
            name: name.into(),
            status,
            verdict: None,
            detail: None,
        }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool) -> Self {
        Self::new(name, if ok { ClaimStatus::Pass } else { ClaimStatus::Fail })
    }

    /// Passes on a definite holds, inconclusive on a sampled holds.
    pub fn expect_holds(name: impl Into<String>, verdict: Verdict) -> Self {
        let status = if verdict.is_holds() {
            ClaimStatus::Pass
        } else if verdict.is_fails() {
            ClaimStatus::Fail
        } else {
            ClaimStatus::Inconclusive
        };
        Self::new(name, status).with_verdict(verdict)
    }

    /// For claims that are sampled by nature: a sampled holds counts as a pass.
    pub fn expect_sampled(name: impl Into<String>, verdict: Verdict) -> Self {
        let status = if verdict.leans_true() {
            ClaimStatus::Pass
        } else if verdict.is_fails() {
            ClaimStatus::Fail
        } else {
            ClaimStatus::Inconclusive
        };
        Self::new(name, status).with_verdict(verdict)
    }

    /// Passes only on a definite failure, which carries a witness.
    pub fn expect_fails(name: impl Into<String>, verdict: Verdict) -> Self {
        let status = if verdict.is_fails() {
            ClaimStatus::Pass
        } else if verdict.is_holds() {
            ClaimStatus::Fail
        } else {
            ClaimStatus::Inconclusive
        };
        Self::new(name, status).with_verdict(verdict)
    }

    pub fn info(name: impl Into<String>, verdict: Verdict) -> Self {
        Self::new(name, ClaimStatus::Info).with_verdict(verdict)
    }

    pub fn with_verdict(mut self, verdict: Verdict) -> Self {
        self.verdict = Some(verdict);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub subject: String,
    pub claims: Vec<Claim>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(subject: impl Into<String>) -> Self {
        Report {
            subject: subject.into(),
            claims: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn push(&mut self, claim: Claim) {
        self.claims.push(claim);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn extend(&mut self, other: Report) {
        self.claims.extend(other.claims);
        self.notes.extend(other.notes);
    }

    /// Worst status among the claims, ignoring `Info`.
    pub fn status(&self) -> ClaimStatus {
        let has = |s| self.claims.iter().any(|c| c.status == s);
        if has(ClaimStatus::Fail) {
            ClaimStatus::Fail
        } else if has(ClaimStatus::Inconclusive) {
            ClaimStatus::Inconclusive
        } else {
            ClaimStatus::Pass
        }
    }

    pub fn passed(&self) -> bool {
        self.status() == ClaimStatus::Pass
    }

    pub fn claim(&self, name: &str) -> Option<&Claim> {
        self.claims.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Claim> {
        self.claims.iter().filter(|c| c.status == ClaimStatus::Fail)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.subject);
        for c in &self.claims {
            let tag = match c.status {
                ClaimStatus::Pass => "pass",
                ClaimStatus::Fail => "FAIL",
                ClaimStatus::Inconclusive => "inconclusive",
                ClaimStatus::Skipped => "skipped",
                ClaimStatus::Info => "info",
            };
            let _ = write!(out, "  [{tag}] {}", c.name);
            if let Some(d) = &c.detail {
                let _ = write!(out, ": {d}");
            }
            out.push('\n');
            if let Some(v) = &c.verdict {
                if let Some(e) = &v.evidence {
                    let _ = writeln!(out, "      evidence: {}", serde_json::to_string(e).unwrap_or_default());
                }
                for n in &v.notes {
                    let _ = writeln!(out, "      note: {n}");
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "  note: {n}");
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
