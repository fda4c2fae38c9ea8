//! Checkable witnesses that a sequence lattice is not order continuous.

use num_traits::One;
use serde::Serialize;

use crate::ratcore::{rat, Rat};
use crate::seqlat::{ep_norm, is_member, EpSeq, NormValue, SpaceTag};
use crate::verdict::{Evidence, Method, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    DisjointBoundedBelow,
    IncreasingNonCauchy,
}

/// Rule producing the terms `x_1, x_2, ...` of a witness sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum TermRule {
    /// `x_n = e_1 + ... + e_n`.
    PartialSums,
    /// `x_n = e_n`.
    Units,
    /// `x_n = 2^-n e_n`.
    HalvingUnits,
    /// `x_n = s` for every `n`.
    Constant { value: EpSeq },
}

impl TermRule {
    pub fn term(&self, n: usize) -> EpSeq {
        match self {
            TermRule::PartialSums => EpSeq::finite(vec![Rat::one(); n]),
            TermRule::Units => EpSeq::unit(n),
            TermRule::HalvingUnits => EpSeq::unit(n).scale(&rat(1, 1i64 << n.min(62))),
            TermRule::Constant { value } => value.clone(),
        }
    }

    pub fn terms(&self, count: usize) -> Vec<EpSeq> {
        (1..=count).map(|n| self.term(n)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonOcWitness {
    pub space: SpaceTag,
    pub bound: EpSeq,
    pub sequence: TermRule,
    #[serde(with = "crate::ratcore::rat::as_string")]
    pub delta: Rat,
    pub kind: WitnessKind,
}

impl NonOcWitness {
    /// Checks the first `count` terms.
    pub fn verify(&self, count: usize) -> Verdict {
        let terms = self.sequence.terms(count);
        match self.kind {
            WitnessKind::IncreasingNonCauchy => {
                verify_increasing_non_cauchy(self.space, &terms, &self.bound, &self.delta)
            }
            WitnessKind::DisjointBoundedBelow => verify_disjoint_witness(self.space, &self.bound, &terms, &self.delta),
        }
    }
}

fn rejected(text: String) -> Verdict {
    Verdict::fails(Method::Structural, Evidence::Detail { text })
}

fn at_least(norm: &NormValue, delta: &Rat) -> bool {
    match norm {
        NormValue::Exact(v) => v >= delta,
        NormValue::ExactSqrt(v) => *v >= delta * delta,
        NormValue::Infinite => true,
    }
}

fn membership(space: SpaceTag, named: &[(&str, &EpSeq)]) -> Option<Verdict> {
    named
        .iter()
        .find(|(_, s)| !is_member(s, space).is_holds())
        .map(|(name, s)| rejected(format!("{name} = {s} is not a member of {space}")))
}

fn too_short(count: usize) -> Option<Verdict> {
    (count < 2).then(|| {
        Verdict::inconclusive_negative(Method::Structural, "need at least two terms to check a witness")
    })
}

/// `0 <= x_1 <= x_2 <= ... <= bound` in `space` with consecutive gaps of
/// norm at least `delta`. Holding means the completion of `space` is not
/// order continuous.
pub fn verify_increasing_non_cauchy(space: SpaceTag, xs: &[EpSeq], bound: &EpSeq, delta: &Rat) -> Verdict {
    if let Some(v) = too_short(xs.len()) {
        return v;
    }
    let mut named = vec![("bound", bound)];
    named.extend(xs.iter().map(|x| ("term", x)));
    if let Some(v) = membership(space, &named) {
        return v;
    }
    if !xs[0].is_nonnegative() {
        return rejected("first term is not positive".into());
    }
    for (n, x) in xs.iter().enumerate() {
        if !x.le(bound) {
            return rejected(format!("term {} is not below the bound", n + 1));
        }
    }
    for (n, pair) in xs.windows(2).enumerate() {
        if !pair[0].le(&pair[1]) {
            return rejected(format!("terms {} and {} are not increasing", n + 1, n + 2));
        }
        let gap = ep_norm(&pair[1].sub(&pair[0]), space).expect("sup-type or l1/l2 norm");
        if !at_least(&gap, delta) {
            return rejected(format!("gap between terms {} and {} has norm {gap} < {delta}", n + 1, n + 2));
        }
    }
    Verdict::holds(Method::Structural).with_note(format!("{} terms checked", xs.len()))
}

/// Pairwise disjoint `0 <= x_n <= x` with `‖x_n‖ >= delta`.
pub fn verify_disjoint_witness(space: SpaceTag, x: &EpSeq, xs: &[EpSeq], delta: &Rat) -> Verdict {
    if let Some(v) = too_short(xs.len()) {
        return v;
    }
    let mut named = vec![("x", x)];
    named.extend(xs.iter().map(|t| ("term", t)));
    if let Some(v) = membership(space, &named) {
        return v;
    }
    for (n, t) in xs.iter().enumerate() {
        if !t.is_nonnegative() || !t.le(x) {
            return rejected(format!("term {} is not in [0, x]", n + 1));
        }
        let norm = ep_norm(t, space).expect("sup-type or l1/l2 norm");
        if !at_least(&norm, delta) {
            return rejected(format!("term {} has norm {norm} < {delta}", n + 1));
        }
    }
    for m in 0..xs.len() {
        for n in m + 1..xs.len() {
            if !xs[m].inf(&xs[n]).is_zero() {
                return rejected(format!("terms {} and {} are not disjoint", m + 1, n + 1));
            }
        }
    }
    Verdict::holds(Method::Structural).with_note(format!("{} terms checked", xs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::int;

    fn ones() -> EpSeq {
        EpSeq::constant(int(1))
    }

    #[test]
    fn increasing_witness_in_c() {
        let xs = TermRule::PartialSums.terms(12);
        assert!(verify_increasing_non_cauchy(SpaceTag::C, &xs, &ones(), &int(1)).is_holds());
        let v = verify_increasing_non_cauchy(SpaceTag::C0ClosureModel, &xs, &ones(), &int(1));
        assert!(v.is_fails());
        assert!(format!("{:?}", v.evidence).contains("not a member"));
        let flat = TermRule::Constant { value: EpSeq::unit(1) }.terms(4);
        assert!(verify_increasing_non_cauchy(SpaceTag::C, &flat, &ones(), &int(1)).is_fails());
        assert!(!verify_increasing_non_cauchy(SpaceTag::C, &xs[..1], &ones(), &int(1)).is_conclusive());
    }

    #[test]
    fn disjoint_witness_in_c() {
        let units = TermRule::Units.terms(10);
        assert!(verify_disjoint_witness(SpaceTag::C, &ones(), &units, &int(1)).is_holds());
        let same = TermRule::Constant { value: EpSeq::unit(1) }.terms(5);
        let v = verify_disjoint_witness(SpaceTag::C, &ones(), &same, &int(1));
        assert!(format!("{:?}", v.evidence).contains("not disjoint"));
        let small = TermRule::HalvingUnits.terms(5);
        let v = verify_disjoint_witness(SpaceTag::C, &ones(), &small, &int(1));
        assert!(format!("{:?}", v.evidence).contains("norm"));
    }

    #[test]
    fn witness_struct() {
        let w = NonOcWitness {
            space: SpaceTag::C,
            bound: ones(),
            sequence: TermRule::PartialSums,
            delta: int(1),
            kind: WitnessKind::IncreasingNonCauchy,
        };
        assert!(w.verify(20).is_holds());
    }
}
