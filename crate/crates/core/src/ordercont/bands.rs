//! Coordinate band projections on sequence lattices.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratcore::Rat;
use crate::report::{Claim, Report};
use crate::seqlat::{ep_norm, is_member, EpSeq, NormValue, SpaceTag};
use crate::verdict::{Evidence, Method, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "coords", rename_all = "snake_case")]
pub enum BandSupport {
    /// Keep exactly these coordinates (1-based).
    Finite(BTreeSet<usize>),
    /// Keep every coordinate except these.
    Cofinite(BTreeSet<usize>),
}

/// Multiplication by the indicator of a coordinate set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BandProjection {
    pub space: SpaceTag,
    pub support: BandSupport,
}

impl BandProjection {
    /// The band of sequences supported in `1..=n`.
    pub fn initial(space: SpaceTag, n: usize) -> Self {
        BandProjection {
            space,
            support: BandSupport::Finite((1..=n).collect()),
        }
    }

    pub fn full(space: SpaceTag) -> Self {
        BandProjection {
            space,
            support: BandSupport::Cofinite(BTreeSet::new()),
        }
    }

    pub fn keeps(&self, n: usize) -> bool {
        match &self.support {
            BandSupport::Finite(set) => set.contains(&n),
            BandSupport::Cofinite(set) => !set.contains(&n),
        }
    }

    fn contains(&self, other: &BandProjection) -> bool {
        match (&self.support, &other.support) {
            (BandSupport::Finite(a), BandSupport::Finite(b)) => b.is_subset(a),
            (BandSupport::Cofinite(a), BandSupport::Cofinite(b)) => a.is_subset(b),
            (BandSupport::Cofinite(a), BandSupport::Finite(b)) => a.is_disjoint(b),
            (BandSupport::Finite(_), BandSupport::Cofinite(_)) => false,
        }
    }
}

/// Coordinatewise mask. Finite and cofinite masks keep sequences eventually
/// periodic, so every input is representable.
pub fn band_project(p: &BandProjection, s: &EpSeq) -> EpSeq {
    match &p.support {
        BandSupport::Finite(set) => {
            let end = set.iter().next_back().copied().unwrap_or(0);
            let values = (1..=end)
                .map(|n| if set.contains(&n) { s.coord(n).clone() } else { Rat::zero() })
                .collect();
            EpSeq::finite(values)
        }
        BandSupport::Cofinite(set) => {
            let end = set.iter().next_back().copied().unwrap_or(0);
            let len = end.max(s.prefix().len());
            let prefix = (1..=len)
                .map(|n| if set.contains(&n) { Rat::zero() } else { s.coord(n).clone() })
                .collect();
            let period = (len + 1..=len + s.period().len()).map(|n| s.coord(n).clone()).collect();
            EpSeq::new(prefix, period).expect("nonempty period")
        }
    }
}

fn below(norm: &NormValue, eps: &Rat) -> bool {
    match norm {
        NormValue::Exact(v) => v < eps,
        NormValue::ExactSqrt(v) => *v < eps * eps,
        NormValue::Infinite => false,
    }
}

/// For every probe `x`, whether some listed band has `‖x - P x‖ < eps`.
pub fn check_band_density(space: SpaceTag, bands: &[BandProjection], probes: &[EpSeq], eps: &Rat) -> Result<Report> {
    for pair in bands.windows(2) {
        if !pair[1].contains(&pair[0]) {
            return Err(Error::PreconditionViolated("bands must be nested".into()));
        }
    }
    let mut report = Report::new(format!("band density in {space}"));
    for (k, x) in probes.iter().enumerate() {
        let name = format!("probe {}", k + 1);
        if !is_member(x, space).is_holds() {
            report.push(
                Claim::new(name, crate::report::ClaimStatus::Skipped).with_detail(format!("{x} is not in {space}")),
            );
            continue;
        }
        let mut hit = None;
        let mut distances = Vec::new();
        for (i, p) in bands.iter().enumerate() {
            let rest = ep_norm(&x.sub(&band_project(p, x)), space)?;
            if below(&rest, eps) {
                hit = Some(i + 1);
                break;
            }
            distances.push(rest.to_string());
        }
        let claim = match hit {
            Some(i) => Claim::expect_holds(
                name,
                Verdict::holds_with(Method::Structural, Evidence::Detail { text: format!("band {i}") }),
            )
            .with_detail(format!("satisfied at band {i}")),
            None => Claim::expect_holds(
                name,
                Verdict::fails(
                    Method::Structural,
                    Evidence::Detail {
                        text: format!("distances to the bands: {}", distances.join(", ")),
                    },
                ),
            )
            .with_detail(format!("violated for all {} bands at eps = {eps}", bands.len())),
        };
        report.push(claim);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, rat};
    use crate::report::ClaimStatus;
    use crate::sampling::Sampler;

    fn seq(prefix: &[i64], period: &[i64]) -> EpSeq {
        EpSeq::new(prefix.iter().map(|&x| int(x)).collect(), period.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn masks() {
        let first_two = BandProjection {
            space: SpaceTag::C,
            support: BandSupport::Finite(BTreeSet::from([1, 2])),
        };
        assert_eq!(band_project(&first_two, &seq(&[], &[1])), seq(&[1, 1], &[0]));
        let s = seq(&[5], &[1]);
        assert_eq!(band_project(&BandProjection::full(SpaceTag::C), &s), s);
        let not_first = BandProjection {
            space: SpaceTag::C,
            support: BandSupport::Cofinite(BTreeSet::from([1])),
        };
        assert_eq!(band_project(&not_first, &s), seq(&[0], &[1]));
    }

    #[test]
    fn projections_are_idempotent_and_split_disjointly() {
        let mut sampler = Sampler::new(9);
        for _ in 0..100 {
            let s = sampler.eventually_periodic(4, 3, true);
            let set: BTreeSet<usize> = (1..=6).filter(|_| sampler.chance(1, 2)).collect();
            for support in [BandSupport::Finite(set.clone()), BandSupport::Cofinite(set)] {
                let p = BandProjection { space: SpaceTag::Linf, support };
                let ps = band_project(&p, &s);
                assert_eq!(band_project(&p, &ps), ps);
                assert!(ps.inf(&s.sub(&ps)).is_zero());
                for n in 1..12 {
                    let expected = if p.keeps(n) { s.coord(n).clone() } else { int(0) };
                    assert_eq!(ps.coord(n), &expected);
                }
            }
        }
    }

    #[test]
    fn density() {
        let bands: Vec<_> = (1..=8).map(|n| BandProjection::initial(SpaceTag::C0ClosureModel, n)).collect();
        let probes = vec![seq(&[0, 3, 0, 1], &[0]), seq(&[], &[0])];
        let r = check_band_density(SpaceTag::C0ClosureModel, &bands, &probes, &rat(1, 1000)).unwrap();
        assert!(r.passed());
        assert_eq!(r.claims[0].detail.as_deref(), Some("satisfied at band 4"));
        assert_eq!(r.claims[1].detail.as_deref(), Some("satisfied at band 1"));

        let bands: Vec<_> = (1..=8).map(|n| BandProjection::initial(SpaceTag::C, n)).collect();
        let r = check_band_density(SpaceTag::C, &bands, &[seq(&[], &[1])], &rat(1, 2)).unwrap();
        assert_eq!(r.claims[0].status, ClaimStatus::Fail);

        let reversed: Vec<_> = bands.iter().rev().cloned().collect();
        assert!(check_band_density(SpaceTag::C, &reversed, &[], &rat(1, 2)).is_err());
    }
}
