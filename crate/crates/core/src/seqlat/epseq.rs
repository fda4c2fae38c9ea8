//! Eventually periodic rational sequences.
//!
//! A sequence is stored as a finite prefix followed by a repeating period.
//! The canonical form has a primitive period and the shortest prefix, so two
//! sequences are equal as sequences iff their canonical forms are equal.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ratcore::rat::{format_rat, list_as_strings};
use crate::ratcore::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EpSeq {
    prefix: Vec<Rat>,
    period: Vec<Rat>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointwiseOp {
    Sup,
    Inf,
    Add,
    Sub,
}

impl EpSeq {
    /// Builds and canonicalizes.
    pub fn new(prefix: Vec<Rat>, period: Vec<Rat>) -> Result<Self> {
        ep_normalize(EpSeq { prefix, period })
    }

    pub fn zero() -> Self {
        EpSeq {
            prefix: Vec::new(),
            period: vec![Rat::zero()],
        }
    }

    pub fn constant(c: Rat) -> Self {
        EpSeq {
            prefix: Vec::new(),
            period: vec![c],
        }
    }

    /// Finitely supported sequence `(values, 0, 0, ...)`.
    pub fn finite(values: Vec<Rat>) -> Self {
        Self::new(values, vec![Rat::zero()]).expect("nonempty period")
    }

    /// `e_n` with 1-based `n`.
    pub fn unit(n: usize) -> Self {
        assert!(n >= 1, "coordinates are 1-based");
        let mut prefix = vec![Rat::zero(); n];
        prefix[n - 1] = Rat::one();
        Self::finite(prefix)
    }

    /// `(1, -1, 1, -1, ...)`.
    pub fn alternating() -> Self {
        EpSeq {
            prefix: Vec::new(),
            period: vec![Rat::one(), -Rat::one()],
        }
    }

    /// Sequence with `prefix_len` free terms and then period `period_len`,
    /// read off from `f` (0-based).
    pub fn from_fn(prefix_len: usize, period_len: usize, f: impl Fn(usize) -> Rat) -> Self {
        assert!(period_len > 0, "period must be nonempty");
        let prefix = (0..prefix_len).map(&f).collect();
        let period = (prefix_len..prefix_len + period_len).map(&f).collect();
        Self::new(prefix, period).expect("nonempty period")
    }

    pub fn prefix(&self) -> &[Rat] {
        &self.prefix
    }

    pub fn period(&self) -> &[Rat] {
        &self.period
    }

    /// Term `n`, 0-based.
    pub fn term(&self, n: usize) -> &Rat {
        if n < self.prefix.len() {
            &self.prefix[n]
        } else {
            &self.period[(n - self.prefix.len()) % self.period.len()]
        }
    }

    /// Term `n`, 1-based as in the usual coordinate notation.
    pub fn coord(&self, n: usize) -> &Rat {
        self.term(n - 1)
    }

    /// The first `n` terms.
    pub fn head(&self, n: usize) -> Vec<Rat> {
        (0..n).map(|k| self.term(k).clone()).collect()
    }

    /// Number of terms that pin the sequence down: the prefix plus one period.
    pub fn horizon(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    pub fn is_zero(&self) -> bool {
        self.prefix.is_empty() && self.period.len() == 1 && self.period[0].is_zero()
    }

    /// Eventually zero.
    pub fn is_finitely_supported(&self) -> bool {
        self.period.len() == 1 && self.period[0].is_zero()
    }

    /// One past the last nonzero 1-based coordinate, for finitely supported sequences.
    pub fn support_end(&self) -> Option<usize> {
        self.is_finitely_supported().then(|| self.prefix.len())
    }

    /// Eventually constant.
    pub fn is_convergent(&self) -> bool {
        self.period.len() == 1
    }

    pub fn is_nonnegative(&self) -> bool {
        self.prefix.iter().chain(&self.period).all(|x| !x.is_negative())
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> EpSeq {
        Self::new(self.prefix.iter().map(&f).collect(), self.period.iter().map(&f).collect())
            .expect("nonempty period")
    }

    pub fn scale(&self, c: &Rat) -> EpSeq {
        self.map(|x| x * c)
    }

    pub fn abs(&self) -> EpSeq {
        self.map(|x| x.abs())
    }

    pub fn neg(&self) -> EpSeq {
        self.map(|x| -x)
    }

    pub fn pos_part(&self) -> EpSeq {
        self.map(|x| if x.is_positive() { x.clone() } else { Rat::zero() })
    }

    pub fn neg_part(&self) -> EpSeq {
        self.map(|x| if x.is_negative() { -x } else { Rat::zero() })
    }

    /// Length of a window after which both sequences are jointly periodic.
    fn joint_window(&self, other: &EpSeq) -> (usize, usize) {
        let l = self.prefix.len().max(other.prefix.len());
        let p = self.period.len().lcm(&other.period.len());
        (l, p)
    }

    pub fn pointwise(&self, op: PointwiseOp, other: &EpSeq) -> EpSeq {
        let (l, p) = self.joint_window(other);
        Self::from_fn(l, p, |n| {
            let (a, b) = (self.term(n), other.term(n));
            match op {
                PointwiseOp::Sup => a.max(b).clone(),
                PointwiseOp::Inf => a.min(b).clone(),
                PointwiseOp::Add => a + b,
                PointwiseOp::Sub => a - b,
            }
        })
    }

    pub fn add(&self, other: &EpSeq) -> EpSeq {
        self.pointwise(PointwiseOp::Add, other)
    }

    pub fn sub(&self, other: &EpSeq) -> EpSeq {
        self.pointwise(PointwiseOp::Sub, other)
    }

    pub fn sup(&self, other: &EpSeq) -> EpSeq {
        self.pointwise(PointwiseOp::Sup, other)
    }

    pub fn inf(&self, other: &EpSeq) -> EpSeq {
        self.pointwise(PointwiseOp::Inf, other)
    }

    /// Pointwise `self <= other`.
    pub fn le(&self, other: &EpSeq) -> bool {
        let (l, p) = self.joint_window(other);
        (0..l + p).all(|n| self.term(n) <= other.term(n))
    }

    /// Largest absolute value of a term.
    pub fn sup_abs(&self) -> Rat {
        self.prefix
            .iter()
            .chain(&self.period)
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rat::zero)
    }

    /// Largest absolute value among terms with 0-based index `>= from`.
    pub fn tail_sup_abs(&self, from: usize) -> Rat {
        let end = from.max(self.prefix.len()) + self.period.len();
        (from..end).map(|n| self.term(n).abs()).max().unwrap_or_else(Rat::zero)
    }
}

/// Canonical form: primitive period, then shortest prefix.
pub fn ep_normalize(s: EpSeq) -> Result<EpSeq> {
    let EpSeq { mut prefix, period } = s;
    if period.is_empty() {
        return Err(Error::EmptyPeriod);
    }
    let n = period.len();
    let root = (1..=n)
        .find(|&d| n % d == 0 && (0..n).all(|k| period[k] == period[k % d]))
        .expect("d = n always works");
    let mut period: Vec<Rat> = period[..root].to_vec();
    while let Some(last) = prefix.last() {
        if *last != period[period.len() - 1] {
            break;
        }
        prefix.pop();
        period.rotate_right(1);
    }
    Ok(EpSeq { prefix, period })
}

impl fmt::Display for EpSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Rat]| v.iter().map(format_rat).collect::<Vec<_>>().join(",");
        write!(f, "[{}|{}]", join(&self.prefix), join(&self.period))
    }
}

#[derive(Serialize, Deserialize)]
struct EpSeqWire {
    #[serde(with = "list_as_strings")]
    prefix: Vec<Rat>,
    #[serde(with = "list_as_strings")]
    period: Vec<Rat>,
}

impl Serialize for EpSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        EpSeqWire {
            prefix: self.prefix.clone(),
            period: self.period.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for EpSeq {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let wire = EpSeqWire::deserialize(deserializer)?;
        EpSeq::new(wire.prefix, wire.period).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, rat};
    use crate::sampling::Sampler;

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn raw(prefix: &[i64], period: &[i64]) -> EpSeq {
        EpSeq {
            prefix: ints(prefix),
            period: ints(period),
        }
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(ep_normalize(raw(&[1], &[0, 0])).unwrap(), raw(&[1], &[0]));
        assert_eq!(ep_normalize(raw(&[1, 0], &[0])).unwrap(), raw(&[1], &[0]));
        assert_eq!(ep_normalize(raw(&[], &[1, -1])).unwrap(), raw(&[], &[1, -1]));
        assert_eq!(ep_normalize(raw(&[], &[])), Err(Error::EmptyPeriod));
        // prefix absorbed with a phase shift of the period
        assert_eq!(ep_normalize(raw(&[2, 1, 2], &[1, 2])).unwrap(), raw(&[], &[2, 1]));
    }

    #[test]
    fn pointwise_examples() {
        let pos = EpSeq::alternating().sup(&EpSeq::zero());
        assert_eq!(pos, raw(&[], &[1, 0]));
        assert!(EpSeq::constant(int(1)).add(&EpSeq::constant(int(-1))).is_zero());
        let a = raw(&[1], &[0]);
        let b = raw(&[], &[0, 2]);
        let s = a.sup(&b);
        // pointwise max oracle on the first terms
        let expect = [1, 2, 0, 2, 0, 2, 0, 2];
        for (n, e) in expect.iter().enumerate() {
            assert_eq!(*s.term(n), int(*e));
        }
        assert_eq!(s, raw(&[1], &[2, 0]));
    }

    #[test]
    fn pointwise_agrees_with_termwise_oracle() {
        let mut sampler = Sampler::new(11);
        for _ in 0..200 {
            let a = sampler.eventually_periodic(3, 3, false);
            let b = sampler.eventually_periodic(3, 3, false);
            let window = a.prefix().len().max(b.prefix().len())
                + 2 * a.period().len().lcm(&b.period().len());
            for (op, f) in [
                (PointwiseOp::Sup, (|x: &Rat, y: &Rat| x.max(y).clone()) as fn(&Rat, &Rat) -> Rat),
                (PointwiseOp::Inf, |x, y| x.min(y).clone()),
                (PointwiseOp::Add, |x, y| x + y),
                (PointwiseOp::Sub, |x, y| x - y),
            ] {
                let c = a.pointwise(op, &b);
                for n in 0..window {
                    assert_eq!(*c.term(n), f(a.term(n), b.term(n)));
                }
                assert_eq!(ep_normalize(c.clone()).unwrap(), c);
            }
        }
    }

    #[test]
    fn json_form() {
        let s = EpSeq::new(vec![rat(1, 2)], ints(&[0])).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(text, r#"{"prefix":["1/2"],"period":["0"]}"#);
        let back: EpSeq = serde_json::from_str(r#"{"prefix":["1/2","0"],"period":["0","0"]}"#).unwrap();
        assert_eq!(back, s);
        assert!(serde_json::from_str::<EpSeq>(r#"{"prefix":[],"period":[]}"#).is_err());
    }
}
