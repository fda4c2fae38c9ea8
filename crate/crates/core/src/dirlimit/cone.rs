//! Compatible cones, factoring maps, and the structure of limits.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{
    elements_equal, model_leg, ChainGenerator, ColimitElement, DirectSystem, EqualityMode, FinitePoset, IndexKind,
};
use crate::error::{Error, Result};
use crate::fdlat::{is_ideal, is_sublattice};
use crate::latmaps::{
    check_property, is_interval_preserving, sample_element, Element, LatticeMap, Probe, Property, SpaceDesc,
    DEFAULT_CAP,
};
use crate::ratcore::{in_span, Rat, RatMat, RatVec};
use crate::report::{Claim, Report};
use crate::sampling::Sampler;
use crate::seqlat::{ep_norm, EpSeq, SpaceTag};
use crate::verdict::{Evidence, Method, Outcome, Verdict};

/// How the legs `ψ'_i` of a cone are produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConeLegs {
    /// The sequence model of a chain generator: pair-averaging, or
    /// embedding coordinates into sequences.
    Model,
    Explicit(BTreeMap<usize, LatticeMap>),
    /// Zero maps into `ℝ^dim`.
    Zero { dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub target: SpaceDesc,
    pub legs: ConeLegs,
}

impl Cone {
    pub fn model(sys: &DirectSystem) -> Result<Self> {
        let target = model_leg(sys, 1)?.codomain;
        Ok(Cone {
            target,
            legs: ConeLegs::Model,
        })
    }

    pub fn explicit(target: SpaceDesc, legs: BTreeMap<usize, LatticeMap>) -> Self {
        Cone {
            target,
            legs: ConeLegs::Explicit(legs),
        }
    }

    pub fn leg(&self, sys: &DirectSystem, i: usize) -> Result<LatticeMap> {
        match &self.legs {
            ConeLegs::Model => model_leg(sys, i),
            ConeLegs::Explicit(legs) => legs.get(&i).cloned().ok_or(Error::UnknownIndex { index: i }),
            ConeLegs::Zero { dim } => match sys.object(i)? {
                SpaceDesc::Coord(n) => Ok(LatticeMap::matrix(RatMat::zeros(*dim, n))),
                SpaceDesc::Seq(_) => Err(Error::PreconditionViolated("zero legs need coordinate objects".into())),
            },
        }
    }

    /// Legs for indices `1..=depth` (all indices of a finite system).
    pub fn legs_up_to(&self, sys: &DirectSystem, depth: usize) -> Result<Vec<LatticeMap>> {
        sys.indices(depth).into_iter().map(|i| self.leg(sys, i)).collect()
    }
}

fn sample_rep(sys: &DirectSystem, i: usize, sampler: &mut Sampler) -> Result<Element> {
    Ok(match sys.object(i)? {
        SpaceDesc::Seq(tag) if matches!(tag, SpaceTag::Lp(_) | SpaceTag::C00) => {
            let len = sampler.between(1, 6);
            Element::Sequence(sampler.finite_support(len, false))
        }
        desc => sample_element(desc, sampler, false),
    })
}

/// Checks `ψ'_j ∘ φ_ji = ψ'_i` for `i <= j` up to `depth`: exactly when
/// both sides are matrices, otherwise on sampled elements.
pub fn validate_cone(sys: &DirectSystem, cone: &Cone, depth: usize, probe: Probe) -> Result<()> {
    let mut sampler = Sampler::new(probe.seed);
    let indices = sys.indices(depth);
    for &i in &indices {
        let leg_i = cone.leg(sys, i)?;
        for &j in indices.iter().filter(|&&j| j > i && sys.leq(i, j)) {
            let leg_j = cone.leg(sys, j)?;
            let phi = sys.map(i, j)?;
            if let (Some(a), Some(b), Some(c)) = (leg_j.as_matrix(), phi.as_matrix(), leg_i.as_matrix()) {
                if &a.mul(b)? != c {
                    return Err(Error::ConeIncompatible(format!("leg {j} after edge {i}->{j} differs from leg {i}")));
                }
                continue;
            }
            for _ in 0..probe.samples.min(16) {
                let x = sample_rep(sys, i, &mut sampler)?;
                if leg_j.apply(&phi.apply(&x)?)? != leg_i.apply(&x)? {
                    return Err(Error::ConeIncompatible(format!(
                        "leg {j} after edge {i}->{j} differs from leg {i} at {}",
                        describe(&x)
                    )));
                }
            }
        }
    }
    Ok(())
}

fn describe(x: &Element) -> String {
    match x {
        Element::Vector(v) => v.to_string(),
        Element::Sequence(s) => s.to_string(),
    }
}

/// `χ` with `χ(class of (i, x)) = ψ'_i(x)`.
#[derive(Debug, Clone)]
pub struct FactoringMap<'a> {
    sys: &'a DirectSystem,
    cone: Cone,
}

impl<'a> FactoringMap<'a> {
    pub fn apply(&self, a: &ColimitElement) -> Result<Element> {
        self.cone.leg(self.sys, a.index)?.apply(&a.rep)
    }

    pub fn cone(&self) -> &Cone {
        &self.cone
    }
}

pub fn build_factoring_map<'a>(sys: &'a DirectSystem, cone: Cone, depth: usize) -> Result<FactoringMap<'a>> {
    validate_cone(sys, &cone, depth, Probe::default())?;
    Ok(FactoringMap { sys, cone })
}

/// Kernel vectors of the edge out of `i`, used to build unequal
/// representatives of the same class.
fn edge_kernel(sys: &DirectSystem, i: usize) -> Option<Element> {
    match sys.generator() {
        Some(g) if g.is_averaging() => {
            let mut prefix = vec![Rat::zero(); i + 1];
            prefix[i - 1] = Rat::one();
            prefix[i] = -Rat::one();
            Some(Element::Sequence(EpSeq::finite(prefix)))
        }
        _ => None,
    }
}

/// Well-definedness of `χ` on pairs certified equal, and (for normed
/// systems) isometry against the certified colimit norm.
pub fn check_factoring(chi: &FactoringMap<'_>, depth: usize, probe: Probe) -> Result<Report> {
    let sys = chi.sys;
    let mut report = Report::new("factoring map");
    let mut sampler = Sampler::new(probe.seed);
    let indices = sys.indices(depth);
    let mut bad_pair = None;
    let mut bad_norm = None;
    let mut isometry_checked = 0;
    for _ in 0..probe.samples {
        let i = indices[sampler.index(indices.len())];
        let above: Vec<usize> = indices.iter().copied().filter(|&j| sys.leq(i, j)).collect();
        let j = above[sampler.index(above.len())];
        let mut x = sample_rep(sys, i, &mut sampler)?;
        let a = ColimitElement { index: i, rep: x.clone() };
        let mut b = a.push(sys, j)?;
        if let Some(k) = edge_kernel(sys, i) {
            if sampler.chance(1, 2) {
                x = x.add(&k.scale(&sampler.nonzero(3, 2)))?;
                b = ColimitElement { index: i, rep: x.clone() };
            }
        }
        if !elements_equal(sys, &a, &b, EqualityMode::Exact { k_max: depth.max(j) + 4 })?.is_holds() {
            continue;
        }
        if chi.apply(&a)? != chi.apply(&b)? && bad_pair.is_none() {
            bad_pair = Some(format!("({i}, {}) vs ({}, {})", describe(&a.rep), b.index, describe(&b.rep)));
        }
        if sys.category.is_normed() {
            if let SpaceDesc::Seq(tag) = chi.cone.target {
                let image = chi.apply(&a)?;
                let Element::Sequence(s) = &image else { continue };
                let horizon = depth.max(i) + 16;
                let limit = super::colimit_norm(sys, &a, horizon)?.certified_limit;
                if let Some(limit) = limit {
                    isometry_checked += 1;
                    if ep_norm(s, tag)? != limit.value && bad_norm.is_none() {
                        bad_norm = Some(format!("class of ({i}, {})", describe(&a.rep)));
                    }
                }
            }
        }
    }
    let sampled = Verdict::sampled_positive(probe.seed, probe.samples);
    report.push(match bad_pair {
        None => Claim::expect_sampled("well defined on equal pairs", sampled.clone()),
        Some(p) => Claim::expect_sampled(
            "well defined on equal pairs",
            Verdict::fails(Method::Sampled { seed: probe.seed, samples: probe.samples }, Evidence::Detail { text: p }),
        ),
    });
    if isometry_checked > 0 {
        report.push(match bad_norm {
            None => Claim::expect_sampled("isometric", Verdict::sampled_positive(probe.seed, isometry_checked)),
            Some(p) => Claim::expect_sampled(
                "isometric",
                Verdict::fails(
                    Method::Sampled { seed: probe.seed, samples: isometry_checked },
                    Evidence::Detail { text: p },
                ),
            ),
        });
    }
    Ok(report)
}

/// The limit of a system whose connecting maps between distinct indices are zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegenerateLimit {
    pub object: SpaceDesc,
    /// The index whose leg is the identity, if the index set has a largest element.
    pub top: Option<usize>,
    pub cone: Cone,
}

pub fn degenerate_limit(sys: &DirectSystem, depth: usize) -> Result<DegenerateLimit> {
    match &sys.index {
        IndexKind::Chain(ChainGenerator::Zero { .. }) => {}
        IndexKind::Finite { edges, .. } => {
            if let Some((&(from, to), _)) = edges.iter().find(|(_, m)| !m.is_zero()) {
                return Err(Error::EdgesNotZero { from, to });
            }
        }
        IndexKind::Chain(_) => {
            let (from, to) = sys.generating_edges(depth.max(2))[0];
            return Err(Error::EdgesNotZero { from, to });
        }
    }
    Ok(match sys.largest() {
        Some(top) => {
            let SpaceDesc::Coord(n) = sys.object(top)? else {
                unreachable!("finite systems have coordinate objects")
            };
            let legs = sys
                .indices(depth)
                .into_iter()
                .map(|i| {
                    let m = if i == top {
                        RatMat::identity(n)
                    } else {
                        let SpaceDesc::Coord(d) = sys.object(i)? else { unreachable!() };
                        RatMat::zeros(n, d)
                    };
                    Ok((i, LatticeMap::matrix(m)))
                })
                .collect::<Result<_>>()?;
            DegenerateLimit {
                object: SpaceDesc::Coord(n),
                top: Some(top),
                cone: Cone::explicit(SpaceDesc::Coord(n), legs),
            }
        }
        None => DegenerateLimit {
            object: SpaceDesc::Coord(0),
            top: None,
            cone: Cone {
                target: SpaceDesc::Coord(0),
                legs: ConeLegs::Zero { dim: 0 },
            },
        },
    })
}

/// The factoring map out of a degenerate limit into the target of a
/// compatible cone: the top leg, or zero.
pub fn degenerate_factoring(sys: &DirectSystem, limit: &DegenerateLimit, cone: &Cone) -> Result<LatticeMap> {
    match limit.top {
        Some(top) => cone.leg(sys, top),
        None => match cone.target {
            SpaceDesc::Coord(n) => Ok(LatticeMap::matrix(RatMat::zeros(n, 0))),
            SpaceDesc::Seq(_) => Err(Error::PreconditionViolated("zero map into a sequence space".into())),
        },
    }
}

/// `ψ_i = (φ_ki)_k` cut to the indices `i..=i+depth` (all `k >= i` for
/// finite systems) and, for averaging systems, to the first coordinates.
pub fn truncated_psi(sys: &DirectSystem, i: usize, depth: usize) -> Result<RatMat> {
    let last = i + depth;
    let width = sys.truncation_width(last);
    let blocks: Vec<RatMat> = sys
        .above(i, last)
        .into_iter()
        .filter(|&k| !sys.is_chain() || k <= last)
        .map(|k| sys.truncated_map(i, k, width))
        .collect::<Result<_>>()?;
    let mut acc = blocks[0].clone();
    for b in &blocks[1..] {
        acc = acc.vstack(b)?;
    }
    Ok(acc)
}

/// `ψ_i` is interval preserving iff every `φ_ki` with `k > i` is zero.
pub fn check_psi_ip_iff_zero(sys: &DirectSystem, i: usize, depth: usize) -> Result<Report> {
    let psi = LatticeMap::matrix(truncated_psi(sys, i, depth)?);
    let ip = is_interval_preserving(&psi, DEFAULT_CAP)?;
    let last = i + depth;
    let width = sys.truncation_width(last);
    let mut nonzero = None;
    for k in sys.above(i, last) {
        if k != i && (!sys.is_chain() || k <= last) && !sys.truncated_map(i, k, width)?.is_zero() {
            nonzero = Some(k);
            break;
        }
    }
    let mut report = Report::new(format!("psi_{i} interval preserving iff outgoing edges vanish"));
    report.push(Claim::info("psi interval preserving", ip.clone()));
    let edges = match nonzero {
        None => Verdict::holds(Method::Structural),
        Some(k) => Verdict::fails(
            Method::Structural,
            Evidence::Detail {
                text: format!("edge {i}->{k} is nonzero"),
            },
        ),
    };
    report.push(Claim::info("outgoing edges zero", edges.clone()));
    let consistent = ip.is_conclusive() && ip.is_holds() == edges.is_holds();
    report.push(Claim::pass_if("equivalence", consistent));
    Ok(report)
}

/// Finite chain with positive interval preserving steps, some of them zero.
pub fn random_ip_chain(sampler: &mut Sampler) -> Result<DirectSystem> {
    let len = sampler.between(2, 4);
    let mut dims = vec![sampler.between(1, 3)];
    let mut steps = Vec::new();
    for _ in 1..len {
        let rows = sampler.between(1, 3);
        let prev = *dims.last().expect("nonempty");
        let m = if sampler.chance(1, 3) {
            RatMat::zeros(rows, prev)
        } else {
            sampler.interval_preserving_matrix(rows, prev)
        };
        steps.push(m);
        dims.push(rows);
    }
    DirectSystem::finite_chain(super::CategoryTag::VlIp, steps, SpaceTag::Linf)
}

/// Column spaces of the legs on the first `n` coordinates of the target.
fn image_basis(leg: &LatticeMap, n: usize) -> Result<Vec<RatVec>> {
    let w = leg.window(n)?;
    Ok((0..w.cols()).map(|c| w.column(c)).filter(|v| !v.is_zero()).collect())
}

fn target_width(legs: &[LatticeMap], depth: usize) -> usize {
    legs.iter()
        .filter_map(|l| match l.codomain {
            SpaceDesc::Coord(n) => Some(n),
            SpaceDesc::Seq(_) => None,
        })
        .max()
        .unwrap_or(2 * depth + 2)
}

/// Nesting of images, and sublattice or ideal structure of each image,
/// checked on the first coordinates of the target.
pub fn verify_structure(sys: &DirectSystem, legs: &[LatticeMap], depth: usize) -> Result<Report> {
    let mut report = Report::new(format!("limit structure ({})", sys.category));
    let indices: Vec<usize> = sys.indices(depth).into_iter().take(legs.len()).collect();
    let cone = Cone::explicit(
        legs.first().map(|l| l.codomain).unwrap_or(SpaceDesc::Coord(0)),
        indices.iter().map(|&i| (i, legs[i - 1].clone())).collect(),
    );
    report.push(match validate_cone(sys, &cone, depth, Probe::default()) {
        Ok(()) => Claim::pass_if("legs compatible", true),
        Err(e) => Claim::pass_if("legs compatible", false).with_detail(e.to_string()),
    });

    let n = target_width(legs, depth);
    let bases: Vec<Vec<RatVec>> = indices.iter().map(|&i| image_basis(&legs[i - 1], n)).collect::<Result<_>>()?;
    let method = Method::Truncation { dim: n };
    let mut escape = None;
    'outer: for (a, &i) in indices.iter().enumerate() {
        for (b, &j) in indices.iter().enumerate() {
            if i < j && sys.leq(i, j) {
                for v in &bases[a] {
                    if !in_span(n, &bases[b], v)? {
                        escape = Some(format!("image of {i} is not inside image of {j}: {v}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    report.push(Claim::expect_holds(
        "images nested",
        match escape {
            None => Verdict::holds(method.clone()),
            Some(text) => Verdict::fails(method.clone(), Evidence::Detail { text }),
        },
    ));

    let full: Vec<bool> = bases
        .iter()
        .map(|b| RatMat::from_columns(n, b).map(|m| m.rank() == n))
        .collect::<Result<_>>()?;
    report.push(Claim::info(
        "images coincide with the model",
        if full.iter().all(|&f| f) {
            Verdict::holds(method.clone())
        } else {
            Verdict::fails(
                method.clone(),
                Evidence::Detail {
                    text: format!("image of {} is a proper subspace", indices[full.iter().position(|f| !f).unwrap_or(0)]),
                },
            )
        },
    ));

    for (a, &i) in indices.iter().enumerate() {
        let sub = is_sublattice(n, &bases[a])?;
        let ideal = is_ideal(n, &bases[a])?;
        if sys.category.requires_hom() {
            report.push(Claim::expect_holds(format!("image of {i} is a sublattice"), sub));
        } else {
            report.push(Claim::info(format!("image of {i} is a sublattice"), sub));
        }
        if sys.category.requires_hom() && sys.category.requires_ip() {
            report.push(Claim::expect_holds(format!("image of {i} is an ideal"), ideal));
        } else {
            report.push(Claim::info(format!("image of {i} is an ideal"), ideal));
        }
    }
    report.note(format!("images compared on the first {n} target coordinates"));
    Ok(report)
}

/// Runs the target tag's morphism checks on every leg. A definite holds on
/// every leg promotes the limit; sampled holds promote it provisionally.
pub fn promote_limit(legs: &[LatticeMap], target: super::CategoryTag, cap: usize, probe: Probe) -> Result<Verdict> {
    let mut properties = Vec::new();
    if target.requires_hom() {
        properties.push(Property::LatticeHom);
    }
    if target.requires_ip() {
        properties.push(Property::IntervalPreserving);
    }
    if target.requires_aip() {
        properties.push(Property::AlmostIntervalPreserving);
    }
    if properties.is_empty() {
        properties.push(Property::Positive);
    }
    let mut sampled = false;
    for (k, leg) in legs.iter().enumerate() {
        for &p in &properties {
            let v = check_property(leg, p, cap, probe)?;
            match v.outcome {
                Outcome::Holds => {}
                Outcome::InconclusivePositive => sampled = true,
                Outcome::Fails => return Ok(v.with_note(format!("leg {} is not {p}: not promoted to {target}", k + 1))),
                Outcome::InconclusiveNegative => {
                    return Ok(v.with_note(format!("leg {}: {p} undecided", k + 1)));
                }
            }
        }
    }
    let names: Vec<String> = properties.iter().map(|p| p.to_string()).collect();
    let note = format!("promoted to {target}: every leg is {}", names.join(" and "));
    Ok(if sampled {
        Verdict::sampled_positive(probe.seed, probe.samples).with_note(note)
    } else {
        Verdict::holds(Method::Structural).with_note(note)
    })
}

/// Small finite directed posets: chains, several elements below a top, a diamond.
pub fn small_directed_posets() -> Vec<FinitePoset> {
    let shapes: Vec<(usize, Vec<(usize, usize)>)> = vec![
        (1, vec![]),
        (2, vec![(1, 2)]),
        (3, vec![(1, 2), (2, 3)]),
        (3, vec![(1, 3), (2, 3)]),
        (4, vec![(1, 2), (1, 3), (2, 4), (3, 4)]),
        (4, vec![(1, 4), (2, 4), (3, 4)]),
        (4, vec![(1, 3), (2, 3), (3, 4)]),
    ];
    shapes
        .into_iter()
        .map(|(n, h)| FinitePoset::new(n, h).expect("valid shape"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dirlimit::CategoryTag;
    use crate::latmaps::NormIndex;
    use crate::ratcore::int;
    use crate::report::ClaimStatus;

    fn averaging() -> DirectSystem {
        DirectSystem::chain(CategoryTag::NlIp, ChainGenerator::Averaging { p: NormIndex::Finite(1) })
    }

    #[test]
    fn inclusion_factoring() {
        let sys = DirectSystem::chain(CategoryTag::VlIplh, ChainGenerator::CoordinateInclusions { start: 1 });
        let chi = build_factoring_map(&sys, Cone::model(&sys).unwrap(), 5).unwrap();
        let e2 = ColimitElement::new(&sys, 2, Element::Vector(RatVec::unit(2, 1))).unwrap();
        assert_eq!(chi.apply(&e2).unwrap(), Element::Sequence(EpSeq::unit(2)));
    }

    #[test]
    fn averaging_factoring_is_well_defined_and_isometric() {
        let sys = averaging();
        let chi = build_factoring_map(&sys, Cone::model(&sys).unwrap(), 6).unwrap();
        let report = check_factoring(&chi, 6, Probe::new(11, 100)).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        assert!(report.claim("isometric").is_some());
    }

    #[test]
    fn incompatible_cone() {
        let sys = DirectSystem::chain(CategoryTag::VlIplh, ChainGenerator::CoordinateInclusions { start: 1 });
        let legs = (1..=3)
            .map(|i| {
                let mut m = RatMat::zeros(3, i);
                for c in 0..i {
                    m.set(c, c, int(1));
                }
                if i == 2 {
                    m.set(0, 0, int(2));
                }
                (i, LatticeMap::matrix(m))
            })
            .collect();
        let cone = Cone::explicit(SpaceDesc::Coord(3), legs);
        assert!(matches!(build_factoring_map(&sys, cone, 3), Err(Error::ConeIncompatible(_))));
    }

    #[test]
    fn degenerate_limits() {
        let sys = DirectSystem::finite_chain(CategoryTag::VlLh, vec![RatMat::zeros(2, 1)], SpaceTag::Linf).unwrap();
        let lim = degenerate_limit(&sys, 2).unwrap();
        assert_eq!((lim.object, lim.top), (SpaceDesc::Coord(2), Some(2)));
        validate_cone(&sys, &lim.cone, 2, Probe::default()).unwrap();

        let chain = DirectSystem::chain(CategoryTag::VlLh, ChainGenerator::Zero { dim: 1 });
        let lim = degenerate_limit(&chain, 4).unwrap();
        assert_eq!((lim.object, lim.top), (SpaceDesc::Coord(0), None));

        let inc = DirectSystem::chain(CategoryTag::VlLh, ChainGenerator::CoordinateInclusions { start: 1 });
        assert!(matches!(degenerate_limit(&inc, 3), Err(Error::EdgesNotZero { from: 1, to: 2 })));
    }

    #[test]
    fn psi_obstruction() {
        let r = check_psi_ip_iff_zero(&averaging(), 1, 3).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.claim("psi interval preserving").unwrap().verdict.as_ref().unwrap().is_fails());
        let zero = DirectSystem::chain(CategoryTag::VlLh, ChainGenerator::Zero { dim: 2 });
        let r = check_psi_ip_iff_zero(&zero, 1, 3).unwrap();
        assert!(r.passed());
        assert!(r.claim("psi interval preserving").unwrap().verdict.as_ref().unwrap().is_holds());
    }

    #[test]
    fn structure_of_models() {
        let sys = DirectSystem::chain(CategoryTag::VlIplh, ChainGenerator::CoordinateInclusions { start: 1 });
        let legs = Cone::model(&sys).unwrap().legs_up_to(&sys, 4).unwrap();
        let r = verify_structure(&sys, &legs, 4).unwrap();
        assert!(r.passed(), "{}", r.to_text());

        let avg = averaging();
        let legs = Cone::model(&avg).unwrap().legs_up_to(&avg, 4).unwrap();
        let r = verify_structure(&avg, &legs, 4).unwrap();
        assert!(r.passed(), "{}", r.to_text());
        assert!(r.claim("images coincide with the model").unwrap().verdict.as_ref().unwrap().is_holds());

        // the image of e_1 lands outside the image of the second leg
        let bad = vec![
            LatticeMap::matrix(RatMat::from_int_rows(&[&[0], &[0], &[1]])),
            LatticeMap::matrix(RatMat::from_int_rows(&[&[1, 0], &[0, 1], &[0, 0]])),
        ];
        let r = verify_structure(&sys, &bad, 2).unwrap();
        assert_eq!(r.claim("legs compatible").unwrap().status, ClaimStatus::Fail);
        assert_eq!(r.claim("images nested").unwrap().status, ClaimStatus::Fail);
    }

    #[test]
    fn promotion() {
        let avg = averaging();
        let legs = Cone::model(&avg).unwrap().legs_up_to(&avg, 3).unwrap();
        let v = promote_limit(&legs, CategoryTag::NlIp, DEFAULT_CAP, Probe::new(1, 32)).unwrap();
        assert!(v.leans_true(), "{v:?}");

        let c = DirectSystem::chain(CategoryTag::NlLh, ChainGenerator::EventuallyConstant);
        let legs = Cone::model(&c).unwrap().legs_up_to(&c, 2).unwrap();
        let v = promote_limit(&legs, CategoryTag::NlAiplh, DEFAULT_CAP, Probe::new(1, 64)).unwrap();
        assert!(v.is_fails(), "{v:?}");

        let z = DirectSystem::chain(CategoryTag::VlLh, ChainGenerator::Zero { dim: 2 });
        let legs = degenerate_limit(&z, 3).unwrap().cone.legs_up_to(&z, 3).unwrap();
        assert!(promote_limit(&legs, CategoryTag::BlIplh, DEFAULT_CAP, Probe::default()).unwrap().is_holds());
    }
}
