//! Eventually periodic sequences as a computable model of sequence lattices.

mod averaging;
mod epseq;

use std::fmt;

use num_traits::Signed;
use serde::{Deserialize, Serialize};

pub use averaging::{averaging_map, averaging_matrix, stable_index, xprime};
pub use epseq::{ep_normalize, EpSeq, PointwiseOp};

use crate::error::{Error, Result};
use crate::ratcore::rat::as_string;
use crate::ratcore::Rat;
use crate::verdict::{Evidence, Method, Verdict};

/// Ambient sequence spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceTag {
    C00,
    C,
    /// The finitely supported sequences, standing in for `c_0`.
    C0ClosureModel,
    Linf,
    Lp(u32),
    /// Convergent sequences that are constant from coordinate `from` on (1-based).
    EventuallyConstant { from: usize },
}

impl fmt::Display for SpaceTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceTag::C00 => write!(f, "c00"),
            SpaceTag::C => write!(f, "c"),
            SpaceTag::C0ClosureModel => write!(f, "c0"),
            SpaceTag::Linf => write!(f, "linf"),
            SpaceTag::Lp(p) => write!(f, "l{p}"),
            SpaceTag::EventuallyConstant { from } => write!(f, "c_{from}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum NormValue {
    Exact(#[serde(with = "as_string")] Rat),
    /// The norm is the square root of the stored value.
    ExactSqrt(#[serde(with = "as_string")] Rat),
    Infinite,
}

impl NormValue {
    /// The norm raised to the power that makes it rational (1 or 2).
    pub fn powered(&self) -> Option<&Rat> {
        match self {
            NormValue::Exact(v) | NormValue::ExactSqrt(v) => Some(v),
            NormValue::Infinite => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, NormValue::Infinite)
    }
}

impl fmt::Display for NormValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormValue::Exact(v) => write!(f, "{v}"),
            NormValue::ExactSqrt(v) => write!(f, "sqrt({v})"),
            NormValue::Infinite => write!(f, "inf"),
        }
    }
}

pub fn ep_pointwise(op: PointwiseOp, s: &EpSeq, t: &EpSeq) -> EpSeq {
    s.pointwise(op, t)
}

/// Norm of `s` in the space named by `tag`. Sup-normed spaces use `ℓ^∞`.
pub fn ep_norm(s: &EpSeq, tag: SpaceTag) -> Result<NormValue> {
    match tag {
        SpaceTag::Lp(1) => Ok(if s.is_finitely_supported() {
            NormValue::Exact(s.prefix().iter().map(|x| x.abs()).sum())
        } else {
            NormValue::Infinite
        }),
        SpaceTag::Lp(2) => Ok(if s.is_finitely_supported() {
            NormValue::ExactSqrt(s.prefix().iter().map(|x| x * x).sum())
        } else {
            NormValue::Infinite
        }),
        SpaceTag::Lp(p) => Err(Error::UnsupportedNorm(p)),
        _ => Ok(NormValue::Exact(s.sup_abs())),
    }
}

pub fn is_member(s: &EpSeq, tag: SpaceTag) -> Verdict {
    let holds = match tag {
        SpaceTag::Linf => true,
        SpaceTag::C => s.is_convergent(),
        SpaceTag::C00 | SpaceTag::C0ClosureModel | SpaceTag::Lp(_) => s.is_finitely_supported(),
        SpaceTag::EventuallyConstant { from } => s.is_convergent() && s.prefix().len() < from.max(1),
    };
    if holds {
        Verdict::holds(Method::Structural)
    } else {
        let text = match tag {
            SpaceTag::C => format!("period {} has length {}", s, s.period().len()),
            SpaceTag::EventuallyConstant { from } => {
                format!("{s} is not constant from coordinate {from}")
            }
            _ => format!("{s} is not eventually zero"),
        };
        Verdict::fails(Method::Structural, Evidence::Detail { text })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::int;

    fn seq(prefix: &[i64], period: &[i64]) -> EpSeq {
        EpSeq::new(
            prefix.iter().map(|&x| int(x)).collect(),
            period.iter().map(|&x| int(x)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn norms() {
        assert_eq!(ep_norm(&EpSeq::alternating(), SpaceTag::Linf).unwrap(), NormValue::Exact(int(1)));
        assert_eq!(ep_norm(&seq(&[3, -4], &[0]), SpaceTag::Lp(1)).unwrap(), NormValue::Exact(int(7)));
        assert_eq!(ep_norm(&seq(&[3, -4], &[0]), SpaceTag::Lp(2)).unwrap(), NormValue::ExactSqrt(int(25)));
        assert_eq!(ep_norm(&EpSeq::constant(int(1)), SpaceTag::Lp(1)).unwrap(), NormValue::Infinite);
        assert_eq!(ep_norm(&EpSeq::zero(), SpaceTag::Lp(3)), Err(Error::UnsupportedNorm(3)));
    }

    #[test]
    fn membership() {
        let alt = EpSeq::alternating();
        assert!(is_member(&alt, SpaceTag::Linf).is_holds());
        assert!(is_member(&alt, SpaceTag::C).is_fails());
        assert!(is_member(&seq(&[5], &[0]), SpaceTag::C00).is_holds());
        let ones = EpSeq::constant(int(1));
        assert!(is_member(&ones, SpaceTag::C).is_holds());
        assert!(is_member(&ones, SpaceTag::C0ClosureModel).is_fails());
        let y = seq(&[2], &[1]);
        assert!(is_member(&y, SpaceTag::EventuallyConstant { from: 2 }).is_holds());
        assert!(is_member(&y, SpaceTag::EventuallyConstant { from: 1 }).is_fails());
        assert!(is_member(&ones, SpaceTag::EventuallyConstant { from: 1 }).is_holds());
    }

    #[test]
    fn tag_json() {
        assert_eq!(serde_json::to_string(&SpaceTag::Lp(2)).unwrap(), r#"{"lp":2}"#);
        assert_eq!(serde_json::to_string(&SpaceTag::C00).unwrap(), r#""c00""#);
        let t: SpaceTag = serde_json::from_str(r#""c0_closure_model""#).unwrap();
        assert_eq!(t, SpaceTag::C0ClosureModel);
    }
}
