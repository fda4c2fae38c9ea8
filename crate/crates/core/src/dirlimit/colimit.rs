//! Colimit elements as `(index, representative)` classes.

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{ChainGenerator, DirectSystem, IndexKind};
use crate::error::{Error, Result};
use crate::latmaps::{is_contractive, is_lattice_hom, Element, LatticeMap, SpaceDesc};
use crate::ratcore::Rat;
use crate::seqlat::{averaging_map, ep_norm, stable_index, xprime, EpSeq, NormValue, SpaceTag};
use crate::verdict::{Evidence, Method, Verdict};

/// The class of `rep` at `index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColimitElement {
    pub index: usize,
    pub rep: Element,
}

impl ColimitElement {
    pub fn new(sys: &DirectSystem, index: usize, rep: Element) -> Result<Self> {
        check_member(sys, index, &rep)?;
        Ok(ColimitElement { index, rep })
    }

    /// The class of `φ_ki(rep)`, which is the same element of the limit.
    pub fn push(&self, sys: &DirectSystem, k: usize) -> Result<ColimitElement> {
        let rep = sys.map(self.index, k)?.apply(&self.rep)?;
        Ok(ColimitElement { index: k, rep })
    }
}

fn check_member(sys: &DirectSystem, index: usize, rep: &Element) -> Result<()> {
    match (sys.object(index)?, rep) {
        (SpaceDesc::Coord(n), Element::Vector(v)) if v.dim() == n => Ok(()),
        (SpaceDesc::Coord(n), Element::Vector(v)) => Err(Error::DimensionMismatch {
            expected: n,
            found: v.dim(),
        }),
        (SpaceDesc::Seq(tag), Element::Sequence(s)) => {
            if crate::seqlat::is_member(s, tag).is_holds() {
                Ok(())
            } else {
                Err(Error::PreconditionViolated(format!("{s} is not in {tag}")))
            }
        }
        _ => Err(Error::PreconditionViolated("representative does not match the object".into())),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualityMode {
    /// Look for `k <= k_max` with `φ_ki(a) = φ_kj(b)`.
    Exact { k_max: usize },
    /// Follow `‖φ_km(a - b)‖` for `k` up to `horizon`.
    Seminorm { horizon: usize },
}

/// Representatives pushed to a common index `m`, and their difference there.
fn difference(sys: &DirectSystem, a: &ColimitElement, b: &ColimitElement) -> Result<(usize, Element)> {
    let m = sys.upper_bound(a.index, b.index)?;
    let d = a.push(sys, m)?.rep.sub(&b.push(sys, m)?.rep)?;
    Ok((m, d))
}

/// Every supported system decides `φ_km d = 0` without an unbounded
/// search: returns the first such `k`, or `None` if there is none.
fn stabilization(sys: &DirectSystem, m: usize, d: &Element) -> Result<Option<usize>> {
    if d.is_zero() {
        return Ok(Some(m));
    }
    Ok(match &sys.index {
        IndexKind::Finite { .. } => {
            // every finite directed poset has a largest index
            let top = sys.largest().expect("finite directed posets have a top");
            let at_top = sys.map(m, top)?.apply(d)?;
            at_top.is_zero().then_some(top)
        }
        IndexKind::Chain(g) => match g {
            ChainGenerator::CoordinateInclusions { .. } | ChainGenerator::EventuallyConstant => None,
            ChainGenerator::Zero { .. } => Some(m + 1),
            ChainGenerator::Averaging { .. } | ChainGenerator::AveragingC00 => {
                let s = d.as_sequence().expect("averaging objects hold sequences");
                if !s.is_finitely_supported() || !xprime(m, s)?.is_zero() {
                    None
                } else {
                    stable_index(m, s)
                }
            }
        },
    })
}

fn never_reason(sys: &DirectSystem) -> String {
    match sys.generator() {
        None => "images differ at the largest index".into(),
        Some(g) if g.is_averaging() => {
            "the difference is not killed by pair-averaging: its tail or its pair averages are nonzero".into()
        }
        Some(_) => "connecting maps are injective".into(),
    }
}

/// Equality in the limit: `a ~ b` iff `φ_ki(a) = φ_kj(b)` for some `k >= i, j`.
pub fn elements_equal(
    sys: &DirectSystem,
    a: &ColimitElement,
    b: &ColimitElement,
    mode: EqualityMode,
) -> Result<Verdict> {
    check_member(sys, a.index, &a.rep)?;
    check_member(sys, b.index, &b.rep)?;
    let (m, d) = difference(sys, a, b)?;
    match mode {
        EqualityMode::Exact { k_max } => {
            for k in sys.above(m, k_max) {
                if !sys.is_chain() || k <= k_max {
                    if sys.map(m, k)?.apply(&d)?.is_zero() {
                        return Ok(Verdict::holds_with(Method::Search { horizon: k_max }, Evidence::EqualAt { k }));
                    }
                }
            }
            Ok(match stabilization(sys, m, &d)? {
                Some(k) => {
                    debug_assert!(sys.map(m, k)?.apply(&d)?.is_zero());
                    Verdict::holds_with(Method::Certificate, Evidence::EqualAt { k })
                        .with_note(format!("beyond the search bound {k_max}"))
                }
                None => Verdict::fails(
                    Method::Certificate,
                    Evidence::NeverEqual {
                        reason: never_reason(sys),
                    },
                ),
            })
        }
        EqualityMode::Seminorm { horizon } => {
            let diff = ColimitElement { index: m, rep: d };
            let bracket = colimit_norm(sys, &diff, horizon)?;
            Ok(match &bracket.certified_limit {
                Some(limit) => match &limit.value {
                    NormValue::Exact(v) | NormValue::ExactSqrt(v) if v.is_zero() => Verdict::holds_with(
                        Method::Certificate,
                        Evidence::SeminormLimit {
                            limit: Rat::zero(),
                            stable_from: limit.stable_from,
                        },
                    ),
                    value => Verdict::fails(
                        Method::Certificate,
                        Evidence::SeminormLimit {
                            limit: value.powered().cloned().unwrap_or_else(Rat::zero),
                            stable_from: limit.stable_from,
                        },
                    )
                    .with_note(format!("limit of the seminorm is {value}")),
                },
                None => {
                    let last = bracket.upper_sequence.last().cloned();
                    match last {
                        Some(v) if v.powered().is_some_and(|x| x.is_zero()) => {
                            Verdict::holds_with(Method::Search { horizon }, Evidence::EqualAt { k: horizon })
                        }
                        _ => Verdict::inconclusive_negative(
                            Method::Search { horizon },
                            format!("seminorm still positive at horizon {horizon}"),
                        ),
                    }
                }
            })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LatticeOp {
    Sup,
    Inf,
    Abs,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeOpResult {
    pub element: ColimitElement,
    /// Set when the edges are not lattice homomorphisms, so the class may
    /// depend on the index where the operation was applied.
    pub representative_only: bool,
}

fn apply_op(op: LatticeOp, x: &Element, y: &Element) -> Result<Element> {
    match op {
        LatticeOp::Sup => x.sup(y),
        LatticeOp::Inf => x.inf(y),
        LatticeOp::Abs => Ok(x.abs()),
    }
}

/// Applies `op` at index `at` (default: least common upper index).
/// For `Abs`, `b` is ignored.
pub fn colimit_lattice_op(
    sys: &DirectSystem,
    op: LatticeOp,
    a: &ColimitElement,
    b: &ColimitElement,
    at: Option<usize>,
) -> Result<LatticeOpResult> {
    let ub = if op == LatticeOp::Abs {
        a.index
    } else {
        sys.upper_bound(a.index, b.index)?
    };
    let k = match at {
        Some(k) if sys.leq(ub, k) => k,
        Some(k) => return Err(Error::NoCommonIndex(ub, k)),
        None => ub,
    };
    let x = a.push(sys, k)?.rep;
    let y = if op == LatticeOp::Abs { x.clone() } else { b.push(sys, k)?.rep };
    Ok(LatticeOpResult {
        element: ColimitElement {
            index: k,
            rep: apply_op(op, &x, &y)?,
        },
        representative_only: !sys.category.requires_hom(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Discrepancy {
    pub first: usize,
    pub second: usize,
    pub at_first: ColimitElement,
    pub at_second: ColimitElement,
    pub verdict: Verdict,
}

/// Looks for two consecutive common upper indices `k < k'` up to `limit`
/// where applying `op` gives different classes.
pub fn find_op_discrepancy(
    sys: &DirectSystem,
    op: LatticeOp,
    a: &ColimitElement,
    b: &ColimitElement,
    limit: usize,
) -> Result<Option<Discrepancy>> {
    let ub = sys.upper_bound(a.index, b.index)?;
    let ks = sys.above(ub, limit);
    for pair in ks.windows(2) {
        let (k1, k2) = (pair[0], pair[1]);
        if !sys.leq(k1, k2) {
            continue;
        }
        let r1 = colimit_lattice_op(sys, op, a, b, Some(k1))?.element;
        let r2 = colimit_lattice_op(sys, op, a, b, Some(k2))?.element;
        let verdict = elements_equal(sys, &r1, &r2, EqualityMode::Exact { k_max: limit })?;
        if verdict.is_fails() {
            return Ok(Some(Discrepancy {
                first: k1,
                second: k2,
                at_first: r1,
                at_second: r2,
                verdict,
            }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CertifiedLimit {
    pub value: NormValue,
    /// First index from which `‖φ_ki x‖` equals the limit.
    pub stable_from: usize,
    pub certificate: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NormBracket {
    /// Indices at which the norms were taken.
    pub indices: Vec<usize>,
    /// `‖φ_ki x‖` for the listed `k`; nonincreasing for contractive systems.
    pub upper_sequence: Vec<NormValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified_limit: Option<CertifiedLimit>,
}

fn element_norm(x: &Element, tag: SpaceTag) -> Result<NormValue> {
    match x {
        Element::Vector(v) => ep_norm(&EpSeq::finite(v.entries().to_vec()), tag),
        Element::Sequence(s) => ep_norm(s, tag),
    }
}

/// Nonincreasing bracket `(‖φ_ki x‖)_k` for a contractive system; its
/// infimum is the norm of the class.
pub fn colimit_norm(sys: &DirectSystem, a: &ColimitElement, horizon: usize) -> Result<NormBracket> {
    if !sys.category.is_normed() {
        return Err(Error::PreconditionViolated(format!("{} carries no norm", sys.category)));
    }
    check_member(sys, a.index, &a.rep)?;
    let tag = sys.norm;
    let i = a.index;
    let indices: Vec<usize> = match &sys.index {
        IndexKind::Chain(_) => (i..=horizon.max(i)).collect(),
        IndexKind::Finite { .. } => {
            let top = sys.largest().expect("finite directed posets have a top");
            let mut path = vec![i];
            if top != i {
                path.push(top);
            }
            path
        }
    };
    if !sys.generator().is_some_and(ChainGenerator::is_averaging) {
        for (from, to) in sys.generating_edges(horizon.max(i + 1)) {
            if !is_contractive(&sys.map(from, to)?, tag)?.is_holds() {
                return Err(Error::NotContractive { from, to });
            }
        }
    }
    let mut upper = Vec::with_capacity(indices.len());
    for &k in &indices {
        upper.push(element_norm(&sys.map(i, k)?.apply(&a.rep)?, tag)?);
    }
    let certified = certify_limit(sys, a, &indices, &upper)?;
    Ok(NormBracket {
        indices,
        upper_sequence: upper,
        certified_limit: certified,
    })
}

fn certify_limit(
    sys: &DirectSystem,
    a: &ColimitElement,
    indices: &[usize],
    upper: &[NormValue],
) -> Result<Option<CertifiedLimit>> {
    let i = a.index;
    let at = |k: usize| indices.iter().position(|&x| x == k).map(|p| upper[p].clone());
    let first_equal = |value: &NormValue| {
        indices
            .iter()
            .zip(upper)
            .find(|(_, u)| *u == value)
            .map(|(&k, _)| k)
    };
    Ok(match &sys.index {
        IndexKind::Finite { .. } => {
            let top = *indices.last().expect("nonempty");
            Some(CertifiedLimit {
                value: upper.last().cloned().expect("nonempty"),
                stable_from: top,
                certificate: "largest index".into(),
            })
        }
        IndexKind::Chain(g) => match g {
            ChainGenerator::Zero { .. } => {
                let value = NormValue::Exact(Rat::zero());
                if a.rep.is_zero() {
                    Some(CertifiedLimit { value, stable_from: i, certificate: "zero element".into() })
                } else {
                    at(i + 1).map(|_| CertifiedLimit {
                        value,
                        stable_from: i + 1,
                        certificate: "zero connecting maps".into(),
                    })
                }
            }
            ChainGenerator::CoordinateInclusions { .. } => Some(CertifiedLimit {
                value: upper[0].clone(),
                stable_from: i,
                certificate: "isometric connecting maps".into(),
            }),
            ChainGenerator::EventuallyConstant => {
                if matches!(sys.norm, SpaceTag::Lp(_)) {
                    None
                } else {
                    Some(CertifiedLimit {
                        value: upper[0].clone(),
                        stable_from: i,
                        certificate: "isometric connecting maps".into(),
                    })
                }
            }
            ChainGenerator::Averaging { .. } | ChainGenerator::AveragingC00 => {
                let s = a.rep.as_sequence().expect("averaging objects hold sequences");
                let limit = averaging_limit(i, s, sys.norm)?;
                match first_equal(&limit) {
                    Some(k) => Some(CertifiedLimit {
                        value: limit,
                        stable_from: k,
                        certificate: if s.is_finitely_supported() {
                            "support stabilization: pair averages have passed the support".into()
                        } else {
                            "eventually periodic tail: sup over averaged block and tail".into()
                        },
                    }),
                    None => None,
                }
            }
        },
    })
}

/// `lim_k ‖φ_ki s‖` in closed form.
fn averaging_limit(i: usize, s: &EpSeq, tag: SpaceTag) -> Result<NormValue> {
    let averaged = xprime(i, s)?;
    if s.is_finitely_supported() {
        // φ_ki s equals xprime(i, s) from the stable index on
        let k = stable_index(i, s).unwrap_or(i);
        debug_assert_eq!(averaging_map(i, k, s)?, averaged);
        return ep_norm(&averaged, tag);
    }
    match tag {
        SpaceTag::Lp(_) => Ok(NormValue::Infinite),
        _ => {
            let tail = s.period().iter().map(|x| x.abs()).max().unwrap_or_else(Rat::zero);
            Ok(NormValue::Exact(averaged.sup_abs().max(tail)))
        }
    }
}

/// Whether every generating edge up to `depth` is a lattice homomorphism.
pub fn lattice_hom_edges(sys: &DirectSystem, depth: usize) -> Result<bool> {
    let width = sys.truncation_width(depth);
    for (i, j) in sys.generating_edges(depth) {
        if !is_lattice_hom(&LatticeMap::matrix(sys.truncated_map(i, j, width)?))?.is_holds() {
            return Ok(false);
        }
    }
    Ok(true)
}
