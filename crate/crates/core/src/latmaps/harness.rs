//! Consistency harnesses: duality, pushing properties down commutative
//! squares, and factoring through a family of maps.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::checks::{
    is_almost_interval_preserving_with, is_interval_preserving, is_lattice_hom, is_lattice_hom_with, is_positive,
    is_surjective, Probe,
};
use super::map::{adjoint, compose, LatticeMap};
use crate::error::{Error, Result};
use crate::ratcore::{lp_feasible, FeasibilityProblem, RatMat, RatVec, VarBound};
use crate::report::{Claim, ClaimStatus, Report};
use crate::sampling::Sampler;
use crate::verdict::{Method, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Linear,
    Positive,
    LatticeHom,
    IntervalPreserving,
    AlmostIntervalPreserving,
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Property::Linear),
            "positive" => Ok(Property::Positive),
            "lattice-hom" | "hom" => Ok(Property::LatticeHom),
            "interval-preserving" | "ip" | "IP" => Ok(Property::IntervalPreserving),
            "almost-interval-preserving" | "aip" | "AIP" => Ok(Property::AlmostIntervalPreserving),
            other => Err(Error::Parse(format!("unknown property {other:?}"))),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Property::Linear => "linear",
            Property::Positive => "positive",
            Property::LatticeHom => "lattice-hom",
            Property::IntervalPreserving => "interval-preserving",
            Property::AlmostIntervalPreserving => "almost-interval-preserving",
        };
        f.write_str(s)
    }
}

pub fn check_property(t: &LatticeMap, property: Property, cap: usize, probe: Probe) -> Result<Verdict> {
    match property {
        Property::Linear => Ok(Verdict::holds(Method::Structural).with_note("maps are linear by construction")),
        Property::Positive => Ok(is_positive(t)),
        Property::LatticeHom => is_lattice_hom_with(t, probe),
        Property::IntervalPreserving => super::checks::is_interval_preserving_with(t, cap, probe),
        Property::AlmostIntervalPreserving => is_almost_interval_preserving_with(t, cap, probe),
    }
}

/// Checks `hom(T) ⟺ IP(Tᵀ)` and `IP(T) ⟺ hom(Tᵀ)` for a positive matrix.
pub fn check_duality(t: &LatticeMap, cap: usize) -> Result<Report> {
    let mut report = Report::new(format!("duality for {}", t.describe()));
    let ta = adjoint(t)?;
    let positive = is_positive(t);
    if positive.is_fails() {
        report.push(Claim::new("map is positive", ClaimStatus::Skipped).with_verdict(positive));
        return Ok(report);
    }
    let hom = is_lattice_hom(t)?;
    let ip = is_interval_preserving(t, cap)?;
    let hom_adj = is_lattice_hom(&ta)?;
    let ip_adj = is_interval_preserving(&ta, cap)?;
    let pair = |name: &str, a: &Verdict, b: &Verdict| {
        let claim = Claim::pass_if(name, a.is_holds() == b.is_holds());
        if claim.status == ClaimStatus::Fail {
            claim.with_detail(format!(
                "inconsistent: {} vs {}",
                serde_json::to_string(a).unwrap_or_default(),
                serde_json::to_string(b).unwrap_or_default()
            ))
        } else {
            claim
        }
    };
    report.push(pair("lattice hom iff adjoint interval preserving", &hom, &ip_adj));
    report.push(pair("interval preserving iff adjoint lattice hom", &ip, &hom_adj));
    report.push(Claim::info("lattice hom", hom));
    report.push(Claim::info("interval preserving", ip));
    report.push(Claim::info("adjoint lattice hom", hom_adj));
    report.push(Claim::info("adjoint interval preserving", ip_adj));
    Ok(report)
}

/// `ψ: E → F` on top, `φ_E: E → E′` and `φ_F: F → F′` down the sides, and
/// `ψ′: E′ → F′` along the bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommSquare {
    pub top: LatticeMap,
    pub left: LatticeMap,
    pub right: LatticeMap,
    pub bottom: LatticeMap,
}

impl CommSquare {
    /// Validates `ψ′ ∘ φ_E = φ_F ∘ ψ` on the standard basis of `E`.
    pub fn new(top: LatticeMap, left: LatticeMap, right: LatticeMap, bottom: LatticeMap) -> Result<Self> {
        let down_then_across = compose(&bottom, &left)?;
        let across_then_down = compose(&right, &top)?;
        let (Some(a), Some(b)) = (down_then_across.as_matrix(), across_then_down.as_matrix()) else {
            return Err(Error::NotMatrixKind);
        };
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Err(Error::SquareNotCommuting("paths end in different spaces".into()));
        }
        for c in 0..a.cols() {
            for r in 0..a.rows() {
                if a.get(r, c) != b.get(r, c) {
                    return Err(Error::SquareNotCommuting(format!(
                        "coordinate {} of the image of e_{} differs: {} vs {}",
                        r + 1,
                        c + 1,
                        a.get(r, c),
                        b.get(r, c)
                    )));
                }
            }
        }
        Ok(CommSquare {
            top,
            left,
            right,
            bottom,
        })
    }
}

/// `φ(E⁺) = F⁺`: every unit vector of the target is the image of a positive vector.
pub fn maps_cone_onto_cone(m: &RatMat) -> Result<bool> {
    for k in 0..m.rows() {
        let problem = FeasibilityProblem::new(
            m.clone(),
            RatVec::unit(m.rows(), k),
            vec![VarBound::nonnegative(); m.cols()],
        )?;
        if !lp_feasible(&problem)?.is_feasible() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// If the top map has the property, so does the bottom map, provided the
/// left map is positive and onto the positive cone and the right map is a
/// surjective lattice homomorphism.
pub fn verify_pushdown_square(sq: &CommSquare, property: Property, cap: usize) -> Result<Report> {
    let mut report = Report::new(format!("pushdown of {property}"));
    let left = sq.left.as_matrix().ok_or(Error::NotMatrixKind)?;
    let right = sq.right.as_matrix().ok_or(Error::NotMatrixKind)?;
    let hypotheses = [
        Claim::expect_holds("left map positive", is_positive(&sq.left)),
        Claim::pass_if("left map onto the positive cone", maps_cone_onto_cone(left)?),
        Claim::pass_if("right map surjective", is_surjective(right)),
        Claim::expect_holds("right map lattice homomorphism", is_lattice_hom(&sq.right)?),
    ];
    let ok = hypotheses.iter().all(|c| c.status == ClaimStatus::Pass);
    for mut h in hypotheses {
        if h.status == ClaimStatus::Fail {
            h.status = ClaimStatus::Skipped;
        }
        report.push(h);
    }
    let probe = Probe::default();
    let top = check_property(&sq.top, property, cap, probe)?;
    let bottom = check_property(&sq.bottom, property, cap, probe)?;
    let implication = if !ok {
        Claim::new("top property implies bottom property", ClaimStatus::Skipped)
            .with_detail("hypotheses failed; implication not claimed")
    } else if !top.is_holds() {
        Claim::new("top property implies bottom property", ClaimStatus::Pass).with_detail("vacuous: top map lacks the property")
    } else {
        Claim::pass_if("top property implies bottom property", bottom.is_holds())
    };
    report.push(implication);
    report.push(Claim::info("top map", top));
    report.push(Claim::info("bottom map", bottom));
    Ok(report)
}

/// How the images of the legs cover the middle space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Coverage {
    /// Some leg is onto, so the union of images is everything.
    Union,
    /// The images only span.
    SpanOnly,
    Partial,
}

/// All `χ ∘ φ_i` have the property iff `χ` has it.
pub fn verify_factoring(legs: &[LatticeMap], chi: &LatticeMap, property: Property, cap: usize) -> Result<Report> {
    let mut report = Report::new(format!("factoring for {property}"));
    let chi_m = chi.as_matrix().ok_or(Error::NotMatrixKind)?;
    let mut stacked: Option<RatMat> = None;
    let mut any_onto = false;
    for leg in legs {
        let m = leg.as_matrix().ok_or(Error::NotMatrixKind)?;
        if m.rows() != chi_m.cols() {
            return Err(Error::DimensionMismatch {
                expected: chi_m.cols(),
                found: m.rows(),
            });
        }
        any_onto |= is_surjective(m);
        let t = m.transpose();
        stacked = Some(match stacked {
            None => t,
            Some(s) => s.vstack(&t)?,
        });
    }
    let spans = stacked.map(|s| s.rank() == chi_m.cols()).unwrap_or(chi_m.cols() == 0);
    let coverage = if any_onto {
        Coverage::Union
    } else if spans {
        Coverage::SpanOnly
    } else {
        Coverage::Partial
    };
    report.note(format!("coverage of the middle space: {coverage:?}"));

    let probe = Probe::default();
    let leg_property = match property {
        Property::Linear | Property::Positive => None,
        Property::LatticeHom => Some(Property::LatticeHom),
        Property::IntervalPreserving | Property::AlmostIntervalPreserving => Some(property),
    };
    let mut hypotheses_ok = true;
    if let Some(p) = leg_property {
        for (k, leg) in legs.iter().enumerate() {
            let v = check_property(leg, p, cap, probe)?;
            hypotheses_ok &= v.is_holds();
            report.push(Claim::info(format!("leg {} is {p}", k + 1), v));
        }
    }
    let mut all_composites = true;
    for (k, leg) in legs.iter().enumerate() {
        let v = check_property(&compose(chi, leg)?, property, cap, probe)?;
        all_composites &= v.is_holds();
        report.push(Claim::info(format!("chi after leg {}", k + 1), v));
    }
    let chi_v = check_property(chi, property, cap, probe)?;
    let agree = all_composites == chi_v.is_holds();
    report.push(Claim::info("chi", chi_v));
    let name = "all composites have the property iff chi does";
    let claim = if agree {
        Claim::new(name, ClaimStatus::Pass)
    } else if coverage == Coverage::Union && hypotheses_ok {
        Claim::new(name, ClaimStatus::Fail).with_detail("equivalence violated with hypotheses satisfied")
    } else {
        Claim::new(name, ClaimStatus::Skipped).with_detail("sides disagree but the legs do not cover the middle space")
    };
    report.push(claim);
    Ok(report)
}

fn coordinate_projection(keep: &[usize], n: usize) -> RatMat {
    let mut m = RatMat::zeros(keep.len(), n);
    for (r, &c) in keep.iter().enumerate() {
        m.set(r, c, num_traits::One::one());
    }
    m
}

fn random_subset(sampler: &mut Sampler, n: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..n).filter(|_| sampler.chance(1, 2)).collect();
    if out.is_empty() {
        out.push(sampler.index(n));
    }
    out
}

fn random_positive_matrix(sampler: &mut Sampler, rows: usize, cols: usize) -> RatMat {
    if sampler.chance(1, 2) {
        sampler.interval_preserving_matrix(rows, cols)
    } else {
        sampler.nonnegative_matrix(rows, cols)
    }
}

/// Random commuting square satisfying the pushdown hypotheses.
///
/// Either the sides are coordinate projections and the bottom is the
/// corresponding block of the top, or the left side is a positive map with a
/// diagonal block and the top is built from the bottom.
pub fn random_pushdown_square(sampler: &mut Sampler) -> Result<CommSquare> {
    if sampler.chance(1, 2) {
        let n = sampler.between(1, 4);
        let m = sampler.between(1, 4);
        let psi = random_positive_matrix(sampler, m, n);
        let rows = random_subset(sampler, m);
        let mut cols: Vec<usize> = (0..n)
            .filter(|&c| rows.iter().any(|&r| !psi.get(r, c).is_zero()) || sampler.chance(1, 3))
            .collect();
        if cols.is_empty() {
            cols.push(sampler.index(n));
        }
        let mut bottom = RatMat::zeros(rows.len(), cols.len());
        for (a, &r) in rows.iter().enumerate() {
            for (b, &c) in cols.iter().enumerate() {
                bottom.set(a, b, psi.get(r, c).clone());
            }
        }
        CommSquare::new(
            LatticeMap::matrix(psi),
            LatticeMap::matrix(coordinate_projection(&cols, n)),
            LatticeMap::matrix(coordinate_projection(&rows, m)),
            LatticeMap::matrix(bottom),
        )
    } else {
        let k = sampler.between(1, 3);
        let extra = sampler.between(0, 2);
        let n = k + extra;
        let mut left = RatMat::zeros(k, n);
        for d in 0..k {
            left.set(d, d, sampler.positive(2, 2));
        }
        if sampler.chance(1, 2) {
            for r in 0..k {
                for c in k..n {
                    if sampler.chance(1, 2) {
                        left.set(r, c, sampler.positive(2, 2));
                    }
                }
            }
        }
        let r = sampler.between(1, 3);
        let m = r + sampler.between(0, 2);
        let bottom = random_positive_matrix(sampler, r, k);
        let upper = bottom.mul(&left)?;
        let mut psi = RatMat::zeros(m, n);
        for a in 0..r {
            for c in 0..n {
                psi.set(a, c, upper.get(a, c).clone());
            }
        }
        if sampler.chance(1, 2) {
            let rest = sampler.interval_preserving_matrix(m - r, n);
            for a in r..m {
                for c in 0..n {
                    if (0..r).all(|t| psi.get(t, c).is_zero()) {
                        psi.set(a, c, rest.get(a - r, c).clone());
                    }
                }
            }
        }
        let keep: Vec<usize> = (0..r).collect();
        CommSquare::new(
            LatticeMap::matrix(psi),
            LatticeMap::matrix(left),
            LatticeMap::matrix(coordinate_projection(&keep, m)),
            LatticeMap::matrix(bottom),
        )
    }
}

/// Positive matrix `rows × cols` with exactly one nonzero per column and
/// every row hit, so it is onto and interval preserving (`cols >= rows`).
fn onto_interval_matrix(sampler: &mut Sampler, rows: usize, cols: usize) -> RatMat {
    let mut m = RatMat::zeros(rows, cols);
    for c in 0..cols {
        let r = if c < rows { c } else { sampler.index(rows) };
        m.set(r, c, sampler.positive(3, 2));
    }
    m
}

/// Positive matrix with exactly one nonzero per row, in distinct columns:
/// an onto lattice homomorphism (`cols >= rows`).
fn onto_hom_matrix(sampler: &mut Sampler, rows: usize, cols: usize) -> RatMat {
    let mut m = RatMat::zeros(rows, cols);
    for r in 0..rows {
        m.set(r, r, sampler.positive(3, 2));
    }
    m
}

/// Random legs into `ℝⁿ` with one onto leg, plus a random `χ` out of `ℝⁿ`,
/// with legs suited to `property`.
pub fn random_factoring_instance(sampler: &mut Sampler, property: Property) -> (Vec<LatticeMap>, LatticeMap) {
    let n = sampler.between(1, 3);
    let hom = property == Property::LatticeHom;
    let mut legs = Vec::new();
    let wide = n + sampler.between(0, 2);
    legs.push(LatticeMap::matrix(if hom {
        onto_hom_matrix(sampler, n, wide)
    } else {
        onto_interval_matrix(sampler, n, wide)
    }));
    for _ in 0..sampler.between(0, 2) {
        let m = sampler.between(1, 3);
        let leg = if hom {
            let mut t = RatMat::zeros(n, m);
            for r in 0..n {
                if sampler.chance(2, 3) {
                    t.set(r, sampler.index(m), sampler.positive(3, 2));
                }
            }
            t
        } else {
            sampler.interval_preserving_matrix(n, m)
        };
        legs.push(LatticeMap::matrix(leg));
    }
    let p = sampler.between(1, 3);
    let chi = if sampler.chance(1, 2) {
        if hom {
            let mut t = RatMat::zeros(p, n);
            for r in 0..p {
                t.set(r, sampler.index(n), sampler.positive(3, 2));
            }
            t
        } else {
            sampler.interval_preserving_matrix(p, n)
        }
    } else {
        sampler.nonnegative_matrix(p, n)
    };
    (legs, LatticeMap::matrix(chi))
}
