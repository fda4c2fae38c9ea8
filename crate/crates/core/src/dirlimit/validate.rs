use super::{ChainGenerator, DirectSystem};
use crate::error::Result;
use crate::latmaps::{
    is_almost_interval_preserving, is_contractive, is_interval_preserving, is_lattice_hom, LatticeMap, DEFAULT_CAP,
};
use crate::ratcore::RatMat;
use crate::report::{Claim, Report};
use crate::verdict::{Evidence, Method, Verdict};

fn first_difference(a: &RatMat, b: &RatMat) -> Option<(usize, usize)> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Some((0, 0));
    }
    (0..a.rows())
        .flat_map(|r| (0..a.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| a.get(r, c) != b.get(r, c))
        .map(|(r, c)| (r + 1, c + 1))
}

/// Identity, cocycle, and morphism-class checks up to `depth`.
///
/// Averaging systems are checked on truncations wide enough that every
/// compared output coordinate is determined exactly.
pub fn validate_system(sys: &DirectSystem, depth: usize) -> Result<Report> {
    let depth = depth.max(1);
    let mut report = Report::new(format!("direct system ({})", sys.category));
    let indices = sys.indices(depth);
    let width = sys.truncation_width(depth);
    let truncated = sys.generator().is_some_and(ChainGenerator::is_averaging);
    let method = if truncated {
        Method::Truncation { dim: width }
    } else {
        Method::Structural
    };

    let mut bad_identity = Vec::new();
    for &i in &indices {
        let m = sys.truncated_map(i, i, width)?;
        if first_difference(&m, &RatMat::identity(m.cols())).is_some() {
            bad_identity.push(i);
        }
    }
    report.push(
        Claim::pass_if("identity at every index", bad_identity.is_empty())
            .with_verdict(Verdict::holds(method.clone())),
    );

    let mut violations = Vec::new();
    let mut first = None;
    for &i in &indices {
        for &j in indices.iter().filter(|&&j| sys.leq(i, j)) {
            for &k in indices.iter().filter(|&&k| sys.leq(j, k)) {
                let inner = sys.truncated_map(i, j, width)?;
                let outer = sys.truncated_map(j, k, inner.rows())?;
                let direct = sys.truncated_map(i, k, width)?;
                let composite = outer.mul(&inner)?;
                if let Some((row, col)) = first_difference(&composite, &direct) {
                    violations.push(format!("({i},{j},{k})"));
                    first.get_or_insert(Evidence::MapMismatch { row, col });
                }
            }
        }
    }
    let verdict = match first {
        None => Verdict::holds(method.clone()),
        Some(e) => Verdict::fails(method.clone(), e),
    };
    let mut claim = Claim::expect_holds("cocycle on all triples", verdict);
    if !violations.is_empty() {
        claim = claim.with_detail(format!("violated at {}", violations.join(", ")));
    }
    report.push(claim);

    let tag = sys.category;
    for (i, j) in sys.generating_edges(depth) {
        let edge = LatticeMap::matrix(sys.truncated_map(i, j, width)?);
        let label = |what: &str| format!("edge {i}->{j} {what}");
        let on_truncation = |v: Verdict| {
            if truncated {
                v.with_note(format!("on the first {width} coordinates"))
            } else {
                v
            }
        };
        let hom = on_truncation(is_lattice_hom(&edge)?);
        if tag.requires_hom() {
            report.push(Claim::expect_holds(label("lattice homomorphism"), hom));
        } else {
            report.push(Claim::info(label("lattice homomorphism"), hom));
        }
        if tag.requires_ip() {
            let v = on_truncation(is_interval_preserving(&edge, DEFAULT_CAP)?);
            report.push(Claim::expect_holds(label("interval preserving"), v));
        }
        if tag.requires_aip() {
            let v = on_truncation(is_almost_interval_preserving(&edge, DEFAULT_CAP)?);
            report.push(Claim::expect_holds(label("almost interval preserving"), v));
        }
        if tag.is_normed() {
            let v = on_truncation(is_contractive(&edge, sys.norm)?);
            report.push(Claim::expect_holds(label("contractive"), v));
        }
    }

    if tag.is_exceptional() {
        report.note(format!(
            "{tag}: the standard construction is attempted only; it need not give a direct limit in this category"
        ));
    }
    if tag.is_banach() {
        report.note("the closure of the union of images is not represented; checks run on the normed model");
    }
    if !sys.is_chain() && sys.largest().is_some() {
        report.note("finite directed index set: the largest index carries the limit");
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::dirlimit::{CategoryTag, FinitePoset};
    use crate::latmaps::NormIndex;
    use crate::ratcore::RatVec;
    use crate::report::ClaimStatus;
    use crate::seqlat::SpaceTag;

    #[test]
    fn averaging_system_is_valid_but_edges_are_not_homs() {
        let sys = DirectSystem::chain(CategoryTag::NlIp, ChainGenerator::Averaging { p: NormIndex::Finite(1) });
        let report = validate_system(&sys, 6).unwrap();
        assert!(report.passed(), "{}", report.to_text());
        for i in 1..6 {
            let hom = report.claim(&format!("edge {i}->{} lattice homomorphism", i + 1)).unwrap();
            assert_eq!(hom.status, ClaimStatus::Info);
            assert!(hom.verdict.as_ref().unwrap().is_fails());
        }
        let first = report.claim("edge 1->2 lattice homomorphism").unwrap();
        match &first.verdict.as_ref().unwrap().evidence {
            Some(Evidence::ModulusMismatch { x, .. }) => {
                let expected = RatVec::unit(x.dim(), 0).sub(&RatVec::unit(x.dim(), 1)).unwrap();
                assert_eq!(x, &expected);
            }
            other => panic!("unexpected evidence {other:?}"),
        }
    }

    #[test]
    fn inclusions_are_valid_iplh() {
        let sys = DirectSystem::chain(CategoryTag::VlIplh, ChainGenerator::CoordinateInclusions { start: 1 });
        assert!(validate_system(&sys, 5).unwrap().passed());
    }

    #[test]
    fn broken_cocycle_is_reported() {
        let poset = FinitePoset::new(4, vec![(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        let one = RatMat::identity(1);
        let two = RatMat::from_int_rows(&[&[2]]);
        let edges = BTreeMap::from([
            ((1, 2), one.clone()),
            ((1, 3), one.clone()),
            ((2, 4), one),
            ((3, 4), two),
        ]);
        let sys = DirectSystem::finite(CategoryTag::VlLh, poset, vec![1; 4], edges, SpaceTag::Linf).unwrap();
        let report = validate_system(&sys, 4).unwrap();
        let claim = report.claim("cocycle on all triples").unwrap();
        assert_eq!(claim.status, ClaimStatus::Fail);
        assert!(claim.detail.as_ref().unwrap().contains("(1,3,4)"));
    }
}
