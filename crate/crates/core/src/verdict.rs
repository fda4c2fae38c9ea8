//! Outcomes of decision procedures and the evidence attached to them.

use serde::Serialize;

use crate::ratcore::{rat, Infeasibility, Rat, RatVec};
use crate::seqlat::EpSeq;

/// How a verdict was reached.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Method {
    /// Read off from the shape of the data (signs, supports, ranks).
    Structural,
    /// One or more exact linear programs.
    LpExact,
    /// Exact statement about a finite truncation of a sequence map.
    Truncation { dim: usize },
    /// Seeded random probes; positives are never promoted to proofs.
    Sampled { seed: u64, samples: usize },
    /// An explicit certificate object that was re-checked.
    Certificate,
    /// Bounded search that may run out of horizon.
    Search { horizon: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Holds,
    Fails,
    InconclusivePositive,
    InconclusiveNegative,
}

/// Structured counterexamples and certificates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// The span is the ideal of vectors supported in `support` (1-based).
    IdealSupport { support: Vec<usize> },
    /// `v` is in the span and `|u| <= |v|`, but `u` is not.
    IdealEscape { v: RatVec, u: RatVec },
    /// The span is not closed under `|.|`.
    SublatticeEscape { v: RatVec, abs_v: RatVec },
    /// Disjoint positive generators of a sublattice.
    SublatticeAtoms { atoms: Vec<RatVec> },
    NegativeEntry {
        row: usize,
        col: usize,
        #[serde(with = "rat::as_string")]
        value: Rat,
    },
    /// `|Tx| != T|x|`.
    ModulusMismatch { x: RatVec, abs_of_image: RatVec, image_of_abs: RatVec },
    /// `T(x v y) != Tx v Ty`.
    SupMismatch { x: RatVec, y: RatVec, image_of_sup: RatVec, sup_of_images: RatVec },
    /// `vertex` lies in `[0, T e_i]` but not in `T[0, e_i]`.
    IntervalGap { basis_index: usize, vertex: RatVec, certificate: Infeasibility },
    /// `vertex` lies in `[0, Tx]` but not in `T[0, x]`.
    IntervalGapAt { x: RatVec, vertex: RatVec, certificate: Infeasibility },
    /// `y` lies in `[0, Tx]` but the first `window` coordinates of `y` are
    /// not reached from `T[0, x]`.
    SequenceIntervalGap {
        x: crate::latmaps::Element,
        y: EpSeq,
        window: usize,
        certificate: Infeasibility,
    },
    SequenceNegative { x: crate::latmaps::Element, image: crate::latmaps::Element },
    SequenceModulusMismatch {
        x: crate::latmaps::Element,
        abs_of_image: crate::latmaps::Element,
        image_of_abs: crate::latmaps::Element,
    },
    Separation(crate::latmaps::SeparationCertificate),
    /// Representatives agree after pushing to index `k`.
    EqualAt { k: usize },
    /// Certified limit of the seminorm of the difference.
    SeminormLimit {
        #[serde(with = "rat::as_string")]
        limit: Rat,
        stable_from: usize,
    },
    /// Images eventually differ forever (certificate from system structure).
    NeverEqual { reason: String },
    /// Matrix entry where two maps differ.
    MapMismatch { row: usize, col: usize },
    Detail { text: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub outcome: Outcome,
    #[serde(flatten)]
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Verdict {
    pub fn holds(method: Method) -> Self {
        Verdict {
            outcome: Outcome::Holds,
            method,
            evidence: None,
            notes: Vec::new(),
        }
    }

    pub fn holds_with(method: Method, evidence: Evidence) -> Self {
        Verdict {
            evidence: Some(evidence),
            ..Self::holds(method)
        }
    }

    pub fn fails(method: Method, evidence: Evidence) -> Self {
        Verdict {
            outcome: Outcome::Fails,
            method,
            evidence: Some(evidence),
            notes: Vec::new(),
        }
    }

    pub fn sampled_positive(seed: u64, samples: usize) -> Self {
        Verdict {
            outcome: Outcome::InconclusivePositive,
            method: Method::Sampled { seed, samples },
            evidence: None,
            notes: Vec::new(),
        }
    }

    pub fn inconclusive_negative(method: Method, note: impl Into<String>) -> Self {
        Verdict {
            outcome: Outcome::InconclusiveNegative,
            method,
            evidence: None,
            notes: vec![note.into()],
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Definitively true.
    pub fn is_holds(&self) -> bool {
        self.outcome == Outcome::Holds
    }

    /// Definitively false.
    pub fn is_fails(&self) -> bool {
        self.outcome == Outcome::Fails
    }

    /// True unless the verdict is a definite failure.
    pub fn not_refuted(&self) -> bool {
        !self.is_fails()
    }

    pub fn is_conclusive(&self) -> bool {
        matches!(self.outcome, Outcome::Holds | Outcome::Fails)
    }

    /// Positive reading, counting sampled positives as positive.
    pub fn leans_true(&self) -> bool {
        matches!(self.outcome, Outcome::Holds | Outcome::InconclusivePositive)
    }
}
