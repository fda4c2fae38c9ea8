//! Prebuilt example systems with their expected-claims checklists.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::bands::{band_project, check_band_density, BandProjection, BandSupport};
use super::witness::{NonOcWitness, TermRule, WitnessKind};
use crate::dirlimit::{
    build_factoring_map, check_factoring, check_psi_ip_iff_zero, colimit_lattice_op, colimit_norm, elements_equal,
    find_op_discrepancy, promote_limit, validate_system, verify_structure, CategoryTag, ChainGenerator,
    ColimitElement, Cone, DirectSystem, EqualityMode, LatticeOp, SystemFile,
};
use crate::error::{Error, Result};
use crate::latmaps::{
    aip_fails_with, is_almost_interval_preserving, Element, LatticeMap, NormIndex, Probe, SeparationCertificate,
    SequenceMap, SpaceDesc, DEFAULT_CAP,
};
use crate::ratcore::{
    lp_feasible, minimize_linear_over_max, rat, AffineTerm, Feasibility, FeasibilityProblem, Rat, RatMat, RatVec,
    VarBound,
};
use crate::report::{Claim, ClaimStatus, Report};
use crate::sampling::Sampler;
use crate::seqlat::{stable_index, EpSeq, SpaceTag};
use crate::verdict::{Evidence, Method, Verdict};

pub const EXAMPLE_IDS: [&str; 8] = ["5.1", "5.2", "5.3", "5.4", "6.1", "6.8-c0", "6.8-c", "6.9-atomic"];

/// Depth to which example systems are validated.
pub const EXAMPLE_DEPTH: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimCheck {
    /// Decided exactly (structurally, by exact LP, or by a checked certificate).
    Exact,
    /// Seeded sampling; a pass is evidence, not proof.
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedClaim {
    pub name: String,
    pub check: ClaimCheck,
}

/// The expected-claims file shipped with each bundle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimsFile {
    pub id: String,
    pub title: String,
    pub spaces: Vec<SpaceTag>,
    pub claims: Vec<ExpectedClaim>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExampleBundle {
    pub id: String,
    pub title: String,
    pub system: Option<DirectSystem>,
    pub spaces: Vec<SpaceTag>,
    pub expected: Vec<ExpectedClaim>,
}

impl ExampleBundle {
    pub fn system_file(&self) -> Option<SystemFile> {
        self.system.as_ref().map(SystemFile::from_system)
    }

    pub fn claims_file(&self) -> ClaimsFile {
        ClaimsFile {
            id: self.id.clone(),
            title: self.title.clone(),
            spaces: self.spaces.clone(),
            claims: self.expected.clone(),
        }
    }
}

fn expected(list: &[(&str, ClaimCheck)]) -> Vec<ExpectedClaim> {
    list.iter()
        .map(|(name, check)| ExpectedClaim {
            name: (*name).into(),
            check: *check,
        })
        .collect()
}

use ClaimCheck::{Exact, Sampled};

pub fn build_example(id: &str) -> Result<ExampleBundle> {
    let averaging = |category, generator| {
        let mut sys = DirectSystem::chain(category, generator);
        sys.depth_hint = EXAMPLE_DEPTH;
        sys
    };
    let (title, system, spaces, claims): (&str, Option<DirectSystem>, Vec<SpaceTag>, Vec<ExpectedClaim>) = match id {
        "5.1" => (
            "pair-averaging maps on l1: the standard construction gives a limit",
            Some(averaging(CategoryTag::BlIp, ChainGenerator::Averaging { p: NormIndex::Finite(1) })),
            vec![SpaceTag::Lp(1)],
            expected(&[
                ("identity at every index", Exact),
                ("cocycle on all triples", Exact),
                ("every edge interval preserving", Exact),
                ("no edge is a lattice homomorphism", Exact),
                ("every edge contractive", Exact),
                ("images nested", Exact),
                ("images coincide with the model", Exact),
                ("psi_1 is not interval preserving and edge 1->2 is nonzero", Exact),
                ("factoring map well defined on equal pairs", Sampled),
                ("model legs isometric", Sampled),
                ("limit promoted to BL_IP", Sampled),
            ]),
        ),
        "5.2" => (
            "pair-averaging maps on c00: the limit is again c00",
            Some(averaging(CategoryTag::VlIp, ChainGenerator::AveragingC00)),
            vec![SpaceTag::C00],
            expected(&[
                ("identity at every index", Exact),
                ("cocycle on all triples", Exact),
                ("every edge interval preserving", Exact),
                ("no edge is a lattice homomorphism", Exact),
                ("images nested", Exact),
                ("images coincide with the model", Exact),
                ("factoring map well defined on equal pairs", Sampled),
                ("modulus agrees with the model past the stable index", Sampled),
                ("limit promoted to VL_IP", Sampled),
            ]),
        ),
        "5.3" => (
            "pair-averaging maps on l-infinity: the standard construction is not a sublattice",
            Some(averaging(CategoryTag::BlIp, ChainGenerator::Averaging { p: NormIndex::Infinite })),
            vec![SpaceTag::Linf],
            expected(&[
                ("identity at every index", Exact),
                ("cocycle on all triples", Exact),
                ("every edge interval preserving", Exact),
                ("no edge is a lattice homomorphism", Exact),
                ("every edge contractive", Exact),
                ("distance lower bound 1/2 for N = 1..10", Exact),
                ("without the cross term the bound is 0", Exact),
                ("alternating class is nonzero", Exact),
                ("norm of the alternating class is 1", Exact),
                ("modulus of the alternating class depends on the index", Exact),
            ]),
        ),
        "5.4" => (
            "pair-averaging maps on l-infinity as vector lattices: the image is not a sublattice",
            Some(averaging(CategoryTag::VlIp, ChainGenerator::Averaging { p: NormIndex::Infinite })),
            vec![SpaceTag::Linf],
            expected(&[
                ("identity at every index", Exact),
                ("cocycle on all triples", Exact),
                ("every edge interval preserving", Exact),
                ("no edge is a lattice homomorphism", Exact),
                ("modulus of the alternating class is not in the image for N = 1..10", Exact),
                ("supremum depends on the index", Exact),
            ]),
        ),
        "6.1" => (
            "eventually constant sequences c_i inside c",
            Some(averaging(CategoryTag::BlLh, ChainGenerator::EventuallyConstant)),
            vec![SpaceTag::C],
            expected(&[
                ("identity at every index", Exact),
                ("cocycle on all triples", Exact),
                ("every edge a lattice homomorphism", Exact),
                ("every edge contractive", Exact),
                ("each c_i has dimension i", Exact),
                ("images are sublattices", Exact),
                ("no inclusion c_i -> c_(i+1) is almost interval preserving", Exact),
                ("inclusion of c_1 into c is not almost interval preserving", Exact),
                ("increasing non-Cauchy witness accepted in c", Exact),
                ("same witness rejected in the c0 model", Exact),
                ("disjoint witness accepted in c", Exact),
                ("limit not promoted to BL_AIPLH", Exact),
                ("finite-dimensional IPLH chains reject every sampled witness", Sampled),
            ]),
        ),
        "6.8-c0" => (
            "coordinate bands in c0",
            Some(averaging(CategoryTag::BlIplh, ChainGenerator::CoordinateInclusions { start: 1 })),
            vec![SpaceTag::C0ClosureModel],
            expected(&[
                ("identity at every index", Exact),
                ("cocycle on all triples", Exact),
                ("every edge a lattice homomorphism", Exact),
                ("every edge interval preserving", Exact),
                ("every edge contractive", Exact),
                ("images are ideals", Exact),
                ("coordinate bands dense for finitely supported probes", Exact),
                ("increasing witness rejected in c0", Exact),
                ("disjoint witness rejected in c0", Exact),
                ("limit promoted to BL_AIPLH", Sampled),
            ]),
        ),
        "6.8-c" => (
            "coordinate bands in c",
            None,
            vec![SpaceTag::C],
            expected(&[
                ("probe (1,1,...) violates density for every band at eps 1/2", Exact),
                ("probe (1,1,...) violates density for every band at eps 1", Exact),
                ("finitely supported probes satisfy density", Exact),
                ("increasing non-Cauchy witness accepted in c", Exact),
            ]),
        ),
        "6.9-atomic" => (
            "l1 over the discrete space of natural numbers",
            None,
            vec![SpaceTag::Lp(1), SpaceTag::C00],
            expected(&[
                ("compact sets are finite: each band has dimension |K|", Exact),
                ("finitely supported functions lie in the band of their support", Sampled),
                ("band projections idempotent with disjoint complements", Sampled),
                ("coordinate bands dense for finitely supported probes", Exact),
                ("increasing witness from c rejected in l1", Exact),
                ("bounded increasing sequences inside a band reject every sampled witness", Sampled),
            ]),
        ),
        other => return Err(Error::UnknownExample(other.into())),
    };
    Ok(ExampleBundle {
        id: id.into(),
        title: title.into(),
        system,
        spaces,
        expected: claims,
    })
}

/// Runs every check of the bundle and appends a checklist claim.
pub fn run_example(bundle: &ExampleBundle, probe: Probe) -> Result<Report> {
    let mut report = match bundle.id.as_str() {
        "5.1" => run_averaging_lp(bundle, probe)?,
        "5.2" => run_averaging_c00(bundle, probe)?,
        "5.3" => run_averaging_linf_normed(bundle)?,
        "5.4" => run_averaging_linf_plain(bundle)?,
        "6.1" => run_wickstead(bundle, probe)?,
        "6.8-c0" => run_bands_c0(bundle, probe)?,
        "6.8-c" => run_bands_c()?,
        "6.9-atomic" => run_atomic(probe)?,
        other => return Err(Error::UnknownExample(other.into())),
    };
    report.subject = format!("example {}: {}", bundle.id, bundle.title);
    let mut missing = Vec::new();
    for e in &bundle.expected {
        match report.claim(&e.name) {
            None => missing.push(format!("{} (missing)", e.name)),
            Some(c) if c.status != ClaimStatus::Pass => missing.push(format!("{} ({:?})", e.name, c.status)),
            Some(c) => {
                let sampled = c.verdict.as_ref().is_some_and(|v| matches!(v.method, Method::Sampled { .. }));
                if e.check == Exact && sampled {
                    missing.push(format!("{} (only sampled)", e.name));
                }
            }
        }
    }
    let mut checklist = Claim::pass_if("checklist complete", missing.is_empty());
    if !missing.is_empty() {
        checklist = checklist.with_detail(missing.join("; "));
    }
    report.push(checklist);
    Ok(report)
}

fn system(bundle: &ExampleBundle) -> &DirectSystem {
    bundle.system.as_ref().expect("bundle has a system")
}

fn copy(report: &mut Report, from: &Report, name: &str, rename: &str) {
    if let Some(c) = from.claim(name) {
        let mut c = c.clone();
        c.name = rename.into();
        report.push(c);
    }
}

/// Condenses the per-edge claims of a validation report.
fn validation_summary(report: &mut Report, v: &Report) {
    copy(report, v, "identity at every index", "identity at every index");
    copy(report, v, "cocycle on all triples", "cocycle on all triples");
    let edges = |suffix: &str| -> Vec<&Claim> {
        v.claims
            .iter()
            .filter(|c| c.name.starts_with("edge ") && c.name.ends_with(suffix))
            .collect()
    };
    for (suffix, name) in [
        ("interval preserving", "every edge interval preserving"),
        ("contractive", "every edge contractive"),
    ] {
        let claims = edges(suffix);
        if !claims.is_empty() {
            let ok = claims.iter().all(|c| c.status == ClaimStatus::Pass);
            let mut c = Claim::pass_if(name, ok).with_detail(format!("{} edges", claims.len()));
            if let Some(v) = claims.first().and_then(|c| c.verdict.clone()) {
                c = c.with_verdict(v);
            }
            report.push(c);
        }
    }
    let homs = edges("lattice homomorphism");
    if v.claims.iter().any(|c| c.name.ends_with("lattice homomorphism") && c.status != ClaimStatus::Info) {
        let ok = homs.iter().all(|c| c.status == ClaimStatus::Pass);
        report.push(Claim::pass_if("every edge a lattice homomorphism", ok).with_detail(format!("{} edges", homs.len())));
    } else {
        let all_fail = homs.iter().all(|c| c.verdict.as_ref().is_some_and(Verdict::is_fails));
        let mut c = Claim::pass_if("no edge is a lattice homomorphism", all_fail && !homs.is_empty())
            .with_detail(format!("{} edges, each with an exact witness", homs.len()));
        if let Some(v) = homs.first().and_then(|c| c.verdict.clone()) {
            c = c.with_verdict(v);
        }
        report.push(c);
    }
    for n in &v.notes {
        report.note(n.clone());
    }
}

fn structure_claims(report: &mut Report, sys: &DirectSystem) -> Result<Report> {
    let legs = Cone::model(sys)?.legs_up_to(sys, EXAMPLE_DEPTH)?;
    let st = verify_structure(sys, &legs, EXAMPLE_DEPTH)?;
    copy(report, &st, "images nested", "images nested");
    Ok(st)
}

fn images_coincide(report: &mut Report, st: &Report) {
    if let Some(c) = st.claim("images coincide with the model") {
        let v = c.verdict.clone().expect("structure claims carry verdicts");
        report.push(Claim::expect_holds("images coincide with the model", v));
    }
}

fn aggregate(report: &mut Report, st: &Report, prefix: &str, suffix: &str, name: &str) {
    let claims: Vec<&Claim> = st
        .claims
        .iter()
        .filter(|c| c.name.starts_with(prefix) && c.name.ends_with(suffix))
        .collect();
    let ok = !claims.is_empty() && claims.iter().all(|c| c.verdict.as_ref().is_some_and(Verdict::is_holds));
    report.push(Claim::pass_if(name, ok).with_detail(format!("{} images", claims.len())));
}

fn run_averaging_lp(bundle: &ExampleBundle, probe: Probe) -> Result<Report> {
    let sys = system(bundle);
    let mut r = Report::new("");
    validation_summary(&mut r, &validate_system(sys, EXAMPLE_DEPTH)?);
    let st = structure_claims(&mut r, sys)?;
    images_coincide(&mut r, &st);

    let psi = check_psi_ip_iff_zero(sys, 1, 3)?;
    let psi_fails = psi
        .claim("psi interval preserving")
        .and_then(|c| c.verdict.clone())
        .expect("psi claim");
    let ok = psi.passed() && psi_fails.is_fails();
    r.push(
        Claim::pass_if("psi_1 is not interval preserving and edge 1->2 is nonzero", ok).with_verdict(psi_fails),
    );

    let chi = build_factoring_map(sys, Cone::model(sys)?, EXAMPLE_DEPTH)?;
    let f = check_factoring(&chi, EXAMPLE_DEPTH, Probe::new(probe.seed, 100))?;
    copy(&mut r, &f, "well defined on equal pairs", "factoring map well defined on equal pairs");
    copy(&mut r, &f, "isometric", "model legs isometric");

    let legs = Cone::model(sys)?.legs_up_to(sys, 4)?;
    let v = promote_limit(&legs, CategoryTag::BlIp, DEFAULT_CAP, probe)?;
    r.push(Claim::expect_sampled("limit promoted to BL_IP", v));
    Ok(r)
}

fn run_averaging_c00(bundle: &ExampleBundle, probe: Probe) -> Result<Report> {
    let sys = system(bundle);
    let mut r = Report::new("");
    validation_summary(&mut r, &validate_system(sys, EXAMPLE_DEPTH)?);
    let st = structure_claims(&mut r, sys)?;
    images_coincide(&mut r, &st);

    let chi = build_factoring_map(sys, Cone::model(sys)?, EXAMPLE_DEPTH)?;
    let f = check_factoring(&chi, EXAMPLE_DEPTH, Probe::new(probe.seed, 100))?;
    copy(&mut r, &f, "well defined on equal pairs", "factoring map well defined on equal pairs");

    // |class| computed past the stable index is the modulus in the model
    let mut sampler = Sampler::new(probe.seed);
    let mut bad = None;
    for _ in 0..probe.samples {
        let i = sampler.between(1, EXAMPLE_DEPTH);
        let len = sampler.between(1, 6);
        let x = sampler.finite_support(len, false);
        let k = stable_index(i, &x).unwrap_or(i);
        let a = ColimitElement::new(sys, i, Element::Sequence(x.clone()))?;
        let m = colimit_lattice_op(sys, LatticeOp::Abs, &a, &a, Some(k))?;
        if chi.apply(&m.element)? != chi.apply(&a)?.abs() && bad.is_none() {
            bad = Some(format!("index {i}, representative {x}"));
        }
    }
    let v = match bad {
        None => Verdict::sampled_positive(probe.seed, probe.samples),
        Some(text) => Verdict::fails(
            Method::Sampled { seed: probe.seed, samples: probe.samples },
            Evidence::Detail { text },
        ),
    };
    r.push(Claim::expect_sampled("modulus agrees with the model past the stable index", v));

    let legs = Cone::model(sys)?.legs_up_to(sys, 4)?;
    let v = promote_limit(&legs, CategoryTag::VlIp, DEFAULT_CAP, probe)?;
    r.push(Claim::expect_sampled("limit promoted to VL_IP", v));
    Ok(r)
}

/// Coefficients for `|φ_j1 x| - |φ_j1 (1,-1,1,-1,...)|` on the coordinates
/// `1..=j+1` for `j = N` and `j = N + 1`, in the variables `x_1..x_(2N+2)`.
/// Without `cross`, the pair average `(x_(2N-1) + x_(2N)) / 2` is left out.
fn alternating_terms(n: usize, cross: bool) -> Vec<AffineTerm> {
    let vars = 2 * n + 2;
    let half = rat(1, 2);
    let mut terms = Vec::new();
    for j in [n, n + 1] {
        // positions 1..j-1: pair averages, target 0
        for k in 1..j {
            if !cross && j == n + 1 && k == n {
                continue;
            }
            let mut c = vec![Rat::zero(); vars];
            c[2 * k - 2] = half.clone();
            c[2 * k - 1] = half.clone();
            terms.push(AffineTerm::new(RatVec::new(c), Rat::zero()));
        }
        // positions j, j+1: shifted tail x_(2j-1), x_(2j), target 1
        for idx in [2 * j - 1, 2 * j] {
            if idx <= vars {
                let mut c = vec![Rat::zero(); vars];
                c[idx - 1] = Rat::one();
                terms.push(AffineTerm::new(RatVec::new(c), -Rat::one()));
            }
        }
    }
    terms
}

/// Exact minimum over `x` of the sup-distance between `φ_j1 x` and
/// `|φ_j1 (1,-1,1,-1,...)|` on the coordinates where `j = N` and
/// `j = N + 1` conflict. The value is `1/2` for every `N`, so the modulus
/// of the alternating class stays at distance `1/2` from the image.
pub fn example_53_lower_bound(n: usize) -> Result<Rat> {
    lower_bound_with(n, true)
}

/// The same program without the pair-average constraint at `j = N + 1`.
pub fn example_53_without_cross_term(n: usize) -> Result<Rat> {
    lower_bound_with(n, false)
}

fn lower_bound_with(n: usize, cross: bool) -> Result<Rat> {
    if n == 0 {
        return Err(Error::PreconditionViolated("N must be at least 1".into()));
    }
    let terms = alternating_terms(n, cross);
    let vars = vec![VarBound::free(); 2 * n + 2];
    let mm = minimize_linear_over_max(&terms, &vars)?;
    for t in &terms {
        debug_assert!(t.eval(&mm.argmin)?.abs() <= mm.value);
    }
    Ok(mm.value)
}

/// The exact version: no `x` has `φ_j1 x = |φ_j1 (1,-1,...)|` on those
/// coordinates for both `j = N` and `j = N + 1`. Returns the checked
/// infeasibility certificate.
pub fn alternating_modulus_not_in_image(n: usize) -> Result<Option<crate::ratcore::Infeasibility>> {
    let terms = alternating_terms(n, true);
    let vars = 2 * n + 2;
    let rows: Vec<Vec<Rat>> = terms.iter().map(|t| t.coeffs.entries().to_vec()).collect();
    let rhs = RatVec::new(terms.iter().map(|t| -t.constant.clone()).collect());
    let problem = FeasibilityProblem::new(RatMat::from_rows(vars, rows)?, rhs, vec![VarBound::free(); vars])?;
    Ok(match lp_feasible(&problem)? {
        Feasibility::Feasible(_) => None,
        Feasibility::Infeasible(cert) => cert.verify(&problem).then_some(cert),
    })
}

fn alternating(sys: &DirectSystem) -> Result<ColimitElement> {
    ColimitElement::new(sys, 1, Element::Sequence(EpSeq::alternating()))
}

fn run_averaging_linf_normed(bundle: &ExampleBundle) -> Result<Report> {
    let sys = system(bundle);
    let mut r = Report::new("");
    validation_summary(&mut r, &validate_system(sys, EXAMPLE_DEPTH)?);

    let bounds: Vec<Rat> = (1..=10).map(example_53_lower_bound).collect::<Result<_>>()?;
    let ok = bounds.iter().all(|b| *b == rat(1, 2));
    r.push(
        Claim::pass_if("distance lower bound 1/2 for N = 1..10", ok)
            .with_verdict(Verdict::holds(Method::LpExact))
            .with_detail(format!(
                "lower bound = {} (exact)",
                if ok { "1/2".to_string() } else { format!("{bounds:?}") }
            )),
    );
    let dropped = example_53_without_cross_term(1)?;
    r.push(
        Claim::pass_if("without the cross term the bound is 0", dropped.is_zero())
            .with_verdict(Verdict::holds(Method::LpExact)),
    );

    let alt = alternating(sys)?;
    let zero = ColimitElement::new(sys, 1, Element::Sequence(EpSeq::zero()))?;
    let v = elements_equal(sys, &alt, &zero, EqualityMode::Exact { k_max: EXAMPLE_DEPTH })?;
    r.push(Claim::expect_fails("alternating class is nonzero", v));

    let bracket = colimit_norm(sys, &alt, EXAMPLE_DEPTH)?;
    let one = crate::seqlat::NormValue::Exact(Rat::one());
    let ok = bracket.certified_limit.as_ref().is_some_and(|l| l.value == one)
        && bracket.upper_sequence.iter().all(|v| *v == one);
    r.push(
        Claim::pass_if("norm of the alternating class is 1", ok)
            .with_verdict(Verdict::holds(Method::Certificate))
            .with_detail(format!("{} indices, all 1", bracket.upper_sequence.len())),
    );

    let d = find_op_discrepancy(sys, LatticeOp::Abs, &alt, &alt, EXAMPLE_DEPTH)?;
    r.push(discrepancy_claim("modulus of the alternating class depends on the index", d));
    r.note("the standard construction does not give a sublattice here; whether the system has a limit in this category is not decided");
    Ok(r)
}

fn discrepancy_claim(name: &str, d: Option<crate::dirlimit::Discrepancy>) -> Claim {
    match d {
        Some(d) if d.verdict.is_conclusive() => Claim::pass_if(name, true)
            .with_verdict(d.verdict)
            .with_detail(format!(
                "at index {}: {}; at index {}: {}",
                d.first,
                show(&d.at_first.rep),
                d.second,
                show(&d.at_second.rep)
            )),
        _ => Claim::pass_if(name, false),
    }
}

fn show(e: &Element) -> String {
    match e {
        Element::Vector(v) => v.to_string(),
        Element::Sequence(s) => s.to_string(),
    }
}

fn run_averaging_linf_plain(bundle: &ExampleBundle) -> Result<Report> {
    let sys = system(bundle);
    let mut r = Report::new("");
    validation_summary(&mut r, &validate_system(sys, EXAMPLE_DEPTH)?);

    let mut first = None;
    let mut ok = true;
    for n in 1..=10 {
        match alternating_modulus_not_in_image(n)? {
            Some(cert) => {
                first.get_or_insert(cert);
            }
            None => ok = false,
        }
    }
    let mut c = Claim::pass_if("modulus of the alternating class is not in the image for N = 1..10", ok);
    if let Some(cert) = first {
        c = c.with_verdict(Verdict::holds_with(
            Method::Certificate,
            Evidence::Detail {
                text: format!("N = 1: {}", serde_json::to_string(&cert).unwrap_or_default()),
            },
        ));
    }
    r.push(c);

    let e1 = ColimitElement::new(sys, 1, Element::Sequence(EpSeq::unit(1)))?;
    let e2 = ColimitElement::new(sys, 1, Element::Sequence(EpSeq::unit(2)))?;
    let d = find_op_discrepancy(sys, LatticeOp::Sup, &e1, &e2, EXAMPLE_DEPTH)?;
    r.push(discrepancy_claim("supremum depends on the index", d));
    r.note("the standard construction does not give a sublattice here; whether the system has a limit in this category is not decided");
    Ok(r)
}

fn ones() -> EpSeq {
    EpSeq::constant(Rat::one())
}

fn c_witness(space: SpaceTag, kind: WitnessKind) -> NonOcWitness {
    NonOcWitness {
        space,
        bound: ones(),
        sequence: match kind {
            WitnessKind::IncreasingNonCauchy => TermRule::PartialSums,
            WitnessKind::DisjointBoundedBelow => TermRule::Units,
        },
        delta: Rat::one(),
        kind,
    }
}

const WITNESS_TERMS: usize = 16;

fn run_wickstead(bundle: &ExampleBundle, probe: Probe) -> Result<Report> {
    let sys = system(bundle);
    let mut r = Report::new("");
    validation_summary(&mut r, &validate_system(sys, EXAMPLE_DEPTH)?);

    let dims_ok = (1..=EXAMPLE_DEPTH).all(|i| {
        sys.object(i).ok() == Some(SpaceDesc::Coord(i))
            && Cone::model(sys)
                .and_then(|c| c.leg(sys, i))
                .and_then(|l| l.window(2 * EXAMPLE_DEPTH))
                .is_ok_and(|w| w.rank() == i)
    });
    r.push(
        Claim::pass_if("each c_i has dimension i", dims_ok)
            .with_verdict(Verdict::holds(Method::Structural))
            .with_detail(format!("i = 1..{EXAMPLE_DEPTH}")),
    );

    let st = structure_claims(&mut r, sys)?;
    aggregate(&mut r, &st, "image of ", "is a sublattice", "images are sublattices");

    let mut verdicts = Vec::new();
    for i in 1..EXAMPLE_DEPTH {
        verdicts.push(is_almost_interval_preserving(&sys.map(i, i + 1)?, DEFAULT_CAP)?);
    }
    let ok = verdicts.iter().all(Verdict::is_fails);
    r.push(
        Claim::pass_if("no inclusion c_i -> c_(i+1) is almost interval preserving", ok)
            .with_verdict(verdicts[0].clone()),
    );

    let leg = LatticeMap::sequence(
        SequenceMap::Embed { dim: 1, repeat_last: true },
        SpaceDesc::Coord(1),
        SpaceDesc::Seq(SpaceTag::C),
    );
    let y = EpSeq::new(vec![rat(1, 2)], vec![Rat::one()])?;
    let cert = SeparationCertificate::find(&leg, Element::Vector(RatVec::new(vec![Rat::one()])), y, 2)?;
    let claim = match cert {
        Some(cert) if cert.bound == rat(1, 4) => {
            let bound = cert.bound.clone();
            Claim::expect_fails("inclusion of c_1 into c is not almost interval preserving", aip_fails_with(&leg, cert)?)
                .with_detail(format!("separation bound {bound}"))
        }
        _ => Claim::pass_if("inclusion of c_1 into c is not almost interval preserving", false),
    };
    r.push(claim);

    let inc = c_witness(SpaceTag::C, WitnessKind::IncreasingNonCauchy);
    r.push(Claim::expect_holds("increasing non-Cauchy witness accepted in c", inc.verify(WITNESS_TERMS)));
    let in_c0 = NonOcWitness {
        space: SpaceTag::C0ClosureModel,
        ..inc
    };
    r.push(Claim::expect_fails("same witness rejected in the c0 model", in_c0.verify(WITNESS_TERMS)));
    let disjoint = c_witness(SpaceTag::C, WitnessKind::DisjointBoundedBelow);
    r.push(Claim::expect_holds("disjoint witness accepted in c", disjoint.verify(WITNESS_TERMS)));

    let legs = Cone::model(sys)?.legs_up_to(sys, 3)?;
    let v = promote_limit(&legs, CategoryTag::BlAiplh, DEFAULT_CAP, Probe::new(probe.seed, probe.samples.max(64)))?;
    r.push(Claim::expect_fails("limit not promoted to BL_AIPLH", v));

    let mut sampler = Sampler::new(probe.seed);
    let (tested, failure) = permanence_experiment(&mut sampler, 20)?;
    r.push(Claim::expect_sampled(
        "finite-dimensional IPLH chains reject every sampled witness",
        match failure {
            None => Verdict::sampled_positive(probe.seed, tested),
            Some(text) => Verdict::fails(Method::Sampled { seed: probe.seed, samples: tested }, Evidence::Detail { text }),
        },
    ));
    r.note("the edges are not almost interval preserving, so order continuity of the c_i does not pass to c");
    Ok(r)
}

/// Random finite chain whose steps are positive multiples of partial
/// permutations, i.e. interval preserving lattice homomorphisms.
pub fn random_iplh_chain(sampler: &mut Sampler) -> Result<DirectSystem> {
    let len = sampler.between(2, 4);
    let mut dim = sampler.between(1, 3);
    let mut steps = Vec::new();
    for _ in 1..len {
        let rows = sampler.between(1, 3);
        let mut m = RatMat::zeros(rows, dim);
        let mut free: Vec<usize> = (0..rows).collect();
        for c in 0..dim {
            if !free.is_empty() && sampler.chance(3, 4) {
                let r = free.remove(sampler.index(free.len()));
                m.set(r, c, sampler.positive(3, 2));
            }
        }
        steps.push(m);
        dim = rows;
    }
    DirectSystem::finite_chain(CategoryTag::VlIplh, steps, SpaceTag::Linf)
}

/// Increasing sequences below `bound` with `count` terms: a greedy one
/// taking steps of exactly `delta`, and random ones.
fn increasing_attempts(sampler: &mut Sampler, bound: &RatVec, delta: &Rat, count: usize) -> Vec<Vec<EpSeq>> {
    let d = bound.dim();
    let mut out = Vec::new();
    let mut greedy = vec![RatVec::zeros(d)];
    while greedy.len() < count {
        let cur = greedy.last().expect("nonempty").clone();
        let mut next = cur.clone().into_entries();
        if let Some(k) = (0..d).find(|&k| &bound[k] - &cur[k] >= *delta) {
            next[k] = &next[k] + delta;
        }
        greedy.push(RatVec::new(next));
    }
    out.push(greedy);
    for _ in 0..4 {
        let mut seq = vec![RatVec::zeros(d)];
        while seq.len() < count {
            let cur = seq.last().expect("nonempty");
            let next = cur
                .iter()
                .zip(bound.iter())
                .map(|(c, b)| {
                    let step = sampler.nonnegative(4, 3);
                    let v = c + step;
                    if &v > b {
                        b.clone()
                    } else {
                        v
                    }
                })
                .collect();
            seq.push(RatVec::new(next));
        }
        out.push(seq);
    }
    out.into_iter()
        .map(|s| s.into_iter().map(|v| EpSeq::finite(v.into_entries())).collect())
        .collect()
}

/// Below `x` in a finite-dimensional lattice at most `Σ ⌊x_k / δ⌋` steps can
/// have sup-norm at least `δ`; sequences one term longer must be rejected.
fn reject_all_in_dimension(sampler: &mut Sampler, d: usize) -> Option<String> {
    let bound = RatVec::new((0..d).map(|_| sampler.positive(4, 2)).collect());
    let delta = sampler.positive(2, 3);
    let budget: usize = bound
        .iter()
        .map(|b| (b / &delta).floor().to_integer().try_into().unwrap_or(0usize))
        .sum();
    let count = budget + 2;
    let bound_seq = EpSeq::finite(bound.entries().to_vec());
    for attempt in increasing_attempts(sampler, &bound, &delta, count) {
        let v = super::verify_increasing_non_cauchy(SpaceTag::C00, &attempt, &bound_seq, &delta);
        if !v.is_fails() {
            return Some(format!("accepted a witness below {bound} with delta {delta}"));
        }
    }
    None
}

/// Seeded chains of finite-dimensional lattices with IPLH edges: in the
/// limit (the top object) every sampled increasing witness is rejected.
/// Returns the number of chains tested and the first failure.
pub fn permanence_experiment(sampler: &mut Sampler, chains: usize) -> Result<(usize, Option<String>)> {
    for _ in 0..chains {
        let sys = random_iplh_chain(sampler)?;
        if !validate_system(&sys, sys.depth_hint)?.passed() {
            return Ok((chains, Some("random chain is not IPLH".into())));
        }
        let top = sys.largest().expect("finite chain");
        let SpaceDesc::Coord(d) = sys.object(top)? else { unreachable!() };
        if d == 0 {
            continue;
        }
        if let Some(f) = reject_all_in_dimension(sampler, d) {
            return Ok((chains, Some(f)));
        }
    }
    Ok((chains, None))
}

fn finitely_supported_probes(sampler: &mut Sampler, count: usize, max_len: usize) -> Vec<EpSeq> {
    let mut probes = vec![EpSeq::zero()];
    probes.extend((0..count).map(|_| {
        let len = sampler.between(1, max_len);
        sampler.finite_support(len, false)
    }));
    probes
}

fn density_claim(name: &str, report: &Report) -> Claim {
    let ok = report.claims.iter().all(|c| c.status == ClaimStatus::Pass);
    Claim::pass_if(name, ok)
        .with_verdict(Verdict::holds(Method::Structural))
        .with_detail(format!("{} probes", report.claims.len()))
}

fn run_bands_c0(bundle: &ExampleBundle, probe: Probe) -> Result<Report> {
    let sys = system(bundle);
    let mut r = Report::new("");
    validation_summary(&mut r, &validate_system(sys, EXAMPLE_DEPTH)?);
    let st = structure_claims(&mut r, sys)?;
    aggregate(&mut r, &st, "image of ", "is an ideal", "images are ideals");

    let space = SpaceTag::C0ClosureModel;
    let bands: Vec<_> = (1..=EXAMPLE_DEPTH).map(|n| BandProjection::initial(space, n)).collect();
    let mut sampler = Sampler::new(probe.seed);
    let probes = finitely_supported_probes(&mut sampler, 30, EXAMPLE_DEPTH);
    let density = check_band_density(space, &bands, &probes, &rat(1, 1000))?;
    r.push(density_claim("coordinate bands dense for finitely supported probes", &density));

    let inc = c_witness(space, WitnessKind::IncreasingNonCauchy);
    r.push(Claim::expect_fails("increasing witness rejected in c0", inc.verify(WITNESS_TERMS)));
    let dis = c_witness(space, WitnessKind::DisjointBoundedBelow);
    r.push(Claim::expect_fails("disjoint witness rejected in c0", dis.verify(WITNESS_TERMS)));

    let legs = Cone::model(sys)?.legs_up_to(sys, 3)?;
    let v = promote_limit(&legs, CategoryTag::BlAiplh, DEFAULT_CAP, probe)?;
    r.push(Claim::expect_sampled("limit promoted to BL_AIPLH", v));
    r.note("order continuity is never claimed from a search; only the witnesses are rejected");
    Ok(r)
}

fn run_bands_c() -> Result<Report> {
    let space = SpaceTag::C;
    let mut r = Report::new("");
    let bands: Vec<_> = (1..=EXAMPLE_DEPTH).map(|n| BandProjection::initial(space, n)).collect();
    for (eps, name) in [
        (rat(1, 2), "probe (1,1,...) violates density for every band at eps 1/2"),
        (Rat::one(), "probe (1,1,...) violates density for every band at eps 1"),
    ] {
        let d = check_band_density(space, &bands, &[ones()], &eps)?;
        let c = &d.claims[0];
        r.push(
            Claim::pass_if(name, c.status == ClaimStatus::Fail)
                .with_verdict(Verdict::holds(Method::Structural))
                .with_detail(c.detail.clone().unwrap_or_default()),
        );
    }
    let mut sampler = Sampler::new(3);
    let probes = finitely_supported_probes(&mut sampler, 20, EXAMPLE_DEPTH);
    let density = check_band_density(space, &bands, &probes, &rat(1, 1000))?;
    r.push(density_claim("finitely supported probes satisfy density", &density));
    let inc = c_witness(space, WitnessKind::IncreasingNonCauchy);
    r.push(Claim::expect_holds("increasing non-Cauchy witness accepted in c", inc.verify(WITNESS_TERMS)));
    r.note("the coordinate bands are not dense in c, and c is not order continuous");
    Ok(r)
}

fn run_atomic(probe: Probe) -> Result<Report> {
    let space = SpaceTag::Lp(1);
    let mut r = Report::new("");
    let mut sampler = Sampler::new(probe.seed);

    let mut dims_ok = true;
    for _ in 0..20 {
        let k: BTreeSet<usize> = (1..=10).filter(|_| sampler.chance(1, 3)).collect();
        let p = BandProjection {
            space,
            support: BandSupport::Finite(k.clone()),
        };
        let dim = (1..=15).filter(|&n| !band_project(&p, &EpSeq::unit(n)).is_zero()).count();
        dims_ok &= dim == k.len();
    }
    r.push(
        Claim::pass_if("compact sets are finite: each band has dimension |K|", dims_ok)
            .with_verdict(Verdict::holds(Method::Structural)),
    );

    let mut inside = true;
    let mut idempotent = true;
    for _ in 0..probe.samples {
        let len = sampler.between(1, 8);
        let f = sampler.finite_support(len, false);
        let supp: BTreeSet<usize> = (1..=len).filter(|&n| !f.coord(n).is_zero()).collect();
        let p = BandProjection {
            space,
            support: BandSupport::Finite(supp.clone()),
        };
        inside &= band_project(&p, &f) == f;
        let g = sampler.finite_support(len, true);
        for support in [BandSupport::Finite(supp.clone()), BandSupport::Cofinite(supp)] {
            let q = BandProjection { space, support };
            let pg = band_project(&q, &g);
            idempotent &= band_project(&q, &pg) == pg && pg.inf(&g.sub(&pg)).is_zero();
        }
    }
    let sampled = |ok: bool, what: &str| {
        if ok {
            Verdict::sampled_positive(probe.seed, probe.samples)
        } else {
            Verdict::fails(
                Method::Sampled { seed: probe.seed, samples: probe.samples },
                Evidence::Detail { text: what.into() },
            )
        }
    };
    r.push(Claim::expect_sampled(
        "finitely supported functions lie in the band of their support",
        sampled(inside, "masking by the support changed a function"),
    ));
    r.push(Claim::expect_sampled(
        "band projections idempotent with disjoint complements",
        sampled(idempotent, "a projection is not idempotent or not disjoint from its complement"),
    ));

    let bands: Vec<_> = (1..=EXAMPLE_DEPTH).map(|n| BandProjection::initial(space, n)).collect();
    let probes = finitely_supported_probes(&mut sampler, 30, EXAMPLE_DEPTH);
    let density = check_band_density(space, &bands, &probes, &rat(1, 1000))?;
    r.push(density_claim("coordinate bands dense for finitely supported probes", &density));

    let inc = c_witness(space, WitnessKind::IncreasingNonCauchy);
    r.push(Claim::expect_fails("increasing witness from c rejected in l1", inc.verify(WITNESS_TERMS)));

    let mut failure = None;
    for _ in 0..20 {
        let d = sampler.between(1, 5);
        if let Some(f) = reject_all_in_dimension(&mut sampler, d) {
            failure = Some(f);
            break;
        }
    }
    r.push(Claim::expect_sampled(
        "bounded increasing sequences inside a band reject every sampled witness",
        match failure {
            None => Verdict::sampled_positive(probe.seed, 20),
            Some(text) => Verdict::fails(Method::Sampled { seed: probe.seed, samples: 20 }, Evidence::Detail { text }),
        },
    ));
    r.note("X is the natural numbers with the discrete topology: compact sets are finite and compactly supported continuous functions are the finitely supported sequences");
    Ok(r)
}
