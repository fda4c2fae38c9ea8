//! Acceptance run: one pass/fail line per criterion, nonzero exit if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{all_matrices, grid_values};
use dirlat::cli::run;
use dirlat::dirlimit::{
    build_factoring_map, check_factoring, check_psi_ip_iff_zero, colimit_norm, random_ip_chain, validate_system,
    CategoryTag, ChainGenerator, ColimitElement, Cone, DirectSystem,
};
use dirlat::latmaps::{
    aip_fails_with, check_duality, interval_oracle, is_interval_preserving, random_factoring_instance,
    random_pushdown_square, verify_factoring, verify_pushdown_square, Element, LatticeMap, NormIndex, Probe, Property,
    SeparationCertificate, SequenceMap, SpaceDesc, DEFAULT_CAP,
};
use dirlat::ordercont::{
    build_example, check_band_density, example_53_lower_bound, run_example, BandProjection, NonOcWitness, TermRule,
    WitnessKind, EXAMPLE_IDS,
};
use dirlat::ratcore::{rat, Rat, RatVec};
use dirlat::report::ClaimStatus;
use dirlat::sampling::Sampler;
use dirlat::seqlat::{xprime, EpSeq, NormValue, SpaceTag};
use dirlat::verdict::{Evidence, Method};
use rayon::prelude::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn grid_3x3() -> Vec<dirlat::ratcore::RatMat> {
    all_matrices(3, 3, &grid_values())
}

fn duality_sweep() -> Outcome {
    let start = Instant::now();
    let cases = grid_3x3();
    let bad = cases
        .par_iter()
        .filter(|m| !check_duality(&LatticeMap::matrix((*m).clone()), DEFAULT_CAP).unwrap().passed())
        .count();
    let took = start.elapsed();
    outcome(
        bad == 0 && took < Duration::from_secs(300),
        format!("{} matrices, {bad} exceptions, {:.1}s", cases.len(), took.as_secs_f64()),
    )
}

fn interval_oracle_sweep() -> Outcome {
    let cases = grid_3x3();
    let bad = cases
        .par_iter()
        .enumerate()
        .filter(|(k, m)| {
            let fast = is_interval_preserving(&LatticeMap::matrix((*m).clone()), DEFAULT_CAP).unwrap();
            let slow = interval_oracle(m, DEFAULT_CAP, Probe::new(*k as u64, 1)).unwrap();
            fast.is_holds() != slow.leans_true()
        })
        .count();
    outcome(bad == 0, format!("{} matrices, {bad} disagreements", cases.len()))
}

fn l1_of(s: &EpSeq) -> Rat {
    assert!(s.is_finitely_supported());
    s.prefix().iter().map(|x| if *x < rat(0, 1) { -x.clone() } else { x.clone() }).sum()
}

fn averaging_l1() -> DirectSystem {
    let mut sys = DirectSystem::chain(CategoryTag::BlIp, ChainGenerator::Averaging { p: NormIndex::Finite(1) });
    sys.depth_hint = 8;
    sys
}

fn averaging_example() -> Outcome {
    let sys = averaging_l1();
    let report = validate_system(&sys, 8).unwrap();
    let mut problems = Vec::new();
    if !report.passed() {
        problems.push("validation failed".to_string());
    }
    for i in 1..8 {
        let edge = |what: &str| report.claim(&format!("edge {i}->{} {what}", i + 1)).and_then(|c| c.verdict.clone());
        let ip = edge("interval preserving");
        let hom = edge("lattice homomorphism");
        if !ip.as_ref().is_some_and(|v| v.is_holds()) {
            problems.push(format!("edge {i} not IP"));
        }
        let exact_witness = hom.as_ref().is_some_and(|v| {
            v.is_fails()
                && !matches!(v.method, Method::Sampled { .. })
                && matches!(v.evidence, Some(Evidence::ModulusMismatch { .. }))
        });
        if !exact_witness {
            problems.push(format!("edge {i} lacks an exact hom witness"));
        }
    }
    let chi = build_factoring_map(&sys, Cone::model(&sys).unwrap(), 8).unwrap();
    let f = check_factoring(&chi, 8, Probe::new(2024, 100)).unwrap();
    if f.claim("isometric").map(|c| c.status) != Some(ClaimStatus::Pass) {
        problems.push("factoring report not isometric".into());
    }
    // independent check: ‖leg_i x‖₁ against the ℓ¹ norm of x′ summed by hand
    let mut sampler = Sampler::new(2024);
    let mut mismatches = 0;
    for _ in 0..100 {
        let i = sampler.between(1, 8);
        let len = sampler.between(1, 8);
        let x = sampler.finite_support(len, false);
        let a = ColimitElement::new(&sys, i, Element::Sequence(x.clone())).unwrap();
        let Element::Sequence(image) = chi.apply(&a).unwrap() else { unreachable!() };
        let bracket = colimit_norm(&sys, &a, 12).unwrap();
        let limit = bracket.certified_limit.map(|l| l.value);
        if limit != Some(NormValue::Exact(l1_of(&image))) {
            mismatches += 1;
        }
    }
    if mismatches > 0 {
        problems.push(format!("{mismatches} of 100 legs not isometric"));
    }
    let detail = if problems.is_empty() {
        "depth 8 valid; 7 edges IP, not homs with exact witnesses; 100 isometric samples".to_string()
    } else {
        problems.join("; ")
    };
    outcome(problems.is_empty(), detail)
}

fn lower_bound() -> Outcome {
    let start = Instant::now();
    let values: Vec<Rat> = (1..=10).map(|n| example_53_lower_bound(n).unwrap()).collect();
    let took = start.elapsed();
    let ok = values.iter().all(|v| *v == rat(1, 2)) && took < Duration::from_secs(1);
    outcome(ok, format!("lower bound = 1/2 for N = 1..10: {ok}, {:.3}s", took.as_secs_f64()))
}

fn eventually_constant_example() -> Outcome {
    let witness = NonOcWitness {
        space: SpaceTag::C,
        bound: EpSeq::constant(rat(1, 1)),
        sequence: TermRule::PartialSums,
        delta: rat(1, 1),
        kind: WitnessKind::IncreasingNonCauchy,
    };
    let accepted = witness.verify(32).is_holds();
    let gate = NonOcWitness {
        space: SpaceTag::C0ClosureModel,
        ..witness
    }
    .verify(32);
    let rejected_by_gate = gate.is_fails()
        && matches!(&gate.evidence, Some(Evidence::Detail { text }) if text.contains("not a member"));
    let leg = LatticeMap::sequence(
        SequenceMap::Embed { dim: 1, repeat_last: true },
        SpaceDesc::Coord(1),
        SpaceDesc::Seq(SpaceTag::C),
    );
    let y = EpSeq::new(vec![rat(1, 2)], vec![rat(1, 1)]).unwrap();
    let cert = SeparationCertificate::find(&leg, Element::Vector(RatVec::new(vec![rat(1, 1)])), y, 2).unwrap();
    let bound = cert.as_ref().map(|c| c.bound.clone());
    let certified = match cert {
        Some(c) if c.bound == rat(1, 4) => c.verify(&leg).unwrap() && aip_fails_with(&leg, c).unwrap().is_fails(),
        _ => false,
    };
    outcome(
        accepted && rejected_by_gate && certified,
        format!(
            "witness accepted in c: {accepted}; rejected by the c0 membership gate: {rejected_by_gate}; separation bound {}",
            bound.map_or("none".into(), |b| b.to_string())
        ),
    )
}

fn harnesses() -> Outcome {
    let mut failures = Vec::new();
    let mut applicable = [0usize; 2];
    for (slot, property) in [Property::IntervalPreserving, Property::AlmostIntervalPreserving].into_iter().enumerate() {
        let mut sampler = Sampler::new(600 + slot as u64);
        for n in 0..200 {
            let square = random_pushdown_square(&mut sampler).unwrap();
            let r = verify_pushdown_square(&square, property, DEFAULT_CAP).unwrap();
            if r.status() == ClaimStatus::Fail {
                failures.push(format!("pushdown {property} #{n}"));
            }
            if r.claim("top property implies bottom property").map(|c| c.status) == Some(ClaimStatus::Pass) {
                applicable[0] += 1;
            }
            let (legs, chi) = random_factoring_instance(&mut sampler, property);
            let r = verify_factoring(&legs, &chi, property, DEFAULT_CAP).unwrap();
            if r.status() == ClaimStatus::Fail {
                failures.push(format!("factoring {property} #{n}"));
            }
            applicable[1] += 1;
        }
    }
    let detail = if failures.is_empty() {
        format!(
            "400 pushdown squares ({} with hypotheses met), 400 factoring instances",
            applicable[0]
        )
    } else {
        failures.join(", ")
    };
    outcome(failures.is_empty(), detail)
}

fn psi_obstruction() -> Outcome {
    let mut sampler = Sampler::new(77);
    let mut bad = 0;
    let mut checked = 0;
    for _ in 0..50 {
        let sys = random_ip_chain(&mut sampler).unwrap();
        for i in sys.indices(sys.depth_hint) {
            checked += 1;
            if !check_psi_ip_iff_zero(&sys, i, sys.depth_hint).unwrap().passed() {
                bad += 1;
            }
        }
    }
    let avg = averaging_l1();
    let r = check_psi_ip_iff_zero(&avg, 1, 3).unwrap();
    let psi_fails = r.claim("psi interval preserving").and_then(|c| c.verdict.clone()).is_some_and(|v| v.is_fails());
    let edge_nonzero =
        r.claim("outgoing edges zero").and_then(|c| c.verdict.clone()).is_some_and(|v| v.is_fails());
    outcome(
        bad == 0 && r.passed() && psi_fails && edge_nonzero,
        format!("50 systems ({checked} indices), {bad} inconsistent; averaging: psi_1 not IP and edge 1->2 nonzero: {}", psi_fails && edge_nonzero),
    )
}

fn band_density() -> Outcome {
    let bands = |space| (1..=8).map(|n| BandProjection::initial(space, n)).collect::<Vec<_>>();
    let mut sampler = Sampler::new(88);
    let mut probes = vec![EpSeq::zero()];
    probes.extend((0..50).map(|_| {
        let len = sampler.between(1, 8);
        sampler.finite_support(len, false)
    }));
    let c0 = check_band_density(SpaceTag::C0ClosureModel, &bands(SpaceTag::C0ClosureModel), &probes, &rat(1, 1000))
        .unwrap();
    let c = check_band_density(SpaceTag::C, &bands(SpaceTag::C), &[EpSeq::constant(rat(1, 1))], &rat(1, 2)).unwrap();
    let ok_c0 = c0.passed() && c0.claims.iter().all(|k| k.status == ClaimStatus::Pass);
    let ok_c = c.claims.len() == 1 && c.claims[0].status == ClaimStatus::Fail;
    outcome(
        ok_c0 && ok_c,
        format!(
            "c0: {} finitely supported probes satisfied: {ok_c0}; c: (1,1,...) violates every band at eps 1/2: {ok_c}",
            probes.len()
        ),
    )
}

fn norm_formula() -> Outcome {
    let sys = averaging_l1();
    let mut sampler = Sampler::new(99);
    let mut bad = 0;
    for _ in 0..100 {
        let i = sampler.between(1, 6);
        let len = sampler.between(1, 10);
        let x = sampler.finite_support(len, false);
        let a = ColimitElement::new(&sys, i, Element::Sequence(x.clone())).unwrap();
        let bracket = colimit_norm(&sys, &a, 16).unwrap();
        let expected = NormValue::Exact(l1_of(&xprime(i, &x).unwrap()));
        let nonincreasing = bracket.upper_sequence.windows(2).all(|w| w[0].powered() >= w[1].powered());
        let ok = nonincreasing && bracket.certified_limit.is_some_and(|l| l.value == expected);
        if !ok {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("100 inputs, {bad} brackets off the l1 norm of x'"))
}

fn determinism() -> Outcome {
    let mut differing = Vec::new();
    for id in EXAMPLE_IDS {
        let bundle = build_example(id).unwrap();
        let a = run_example(&bundle, Probe::new(5, 32)).unwrap().to_json();
        let b = run_example(&bundle, Probe::new(5, 32)).unwrap().to_json();
        if a != b {
            differing.push(id.to_string());
        }
    }
    for id in ["5.1", "6.1"] {
        let args = ["dirlat", "example", id, "--seed", "9", "--format", "machine"];
        if run(args) != run(args) {
            differing.push(format!("cli {id}"));
        }
    }
    let detail = if differing.is_empty() {
        format!("{} bundle reports and 2 CLI runs byte-identical", EXAMPLE_IDS.len())
    } else {
        format!("differ: {}", differing.join(", "))
    };
    outcome(differing.is_empty(), detail)
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("duality sweep over 3x3 {0,1/2,1} matrices", duality_sweep),
        ("interval preserving check vs vertex oracle", interval_oracle_sweep),
        ("averaging system on l1", averaging_example),
        ("sup-norm lower bound 1/2", lower_bound),
        ("eventually constant sequences in c", eventually_constant_example),
        ("pushdown and factoring harnesses", harnesses),
        ("psi interval preserving iff edges vanish", psi_obstruction),
        ("coordinate band density", band_density),
        ("colimit norm equals l1 norm of x'", norm_formula),
        ("deterministic machine reports", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        if !o.ok {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}) [{:.2}s]",
            n + 1,
            if o.ok { "PASS" } else { "FAIL" },
            name,
            o.detail,
            start.elapsed().as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
