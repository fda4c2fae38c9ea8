//! The coordinate lattice `Q^n`: lattice operations, order intervals, the
//! Riesz decomposition, and exact ideal and sublattice tests.
//!
//! Ideals of `Q^n` under the coordinatewise order are exactly the subspaces
//! `{x : support(x) ⊆ S}`, so deciding whether a span is an ideal reduces to
//! comparing its dimension with the size of its joint support.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ratcore::{in_span, Rat, RatMat, RatVec};
use crate::verdict::{Evidence, Method, Verdict};

/// An element of the coordinate lattice of dimension `space_dim()`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FinLatElement(RatVec);

impl FinLatElement {
    pub fn new(vec: RatVec) -> Self {
        FinLatElement(vec)
    }

    pub fn from_ints(values: &[i64]) -> Self {
        FinLatElement(RatVec::from_ints(values))
    }

    pub fn space_dim(&self) -> usize {
        self.0.dim()
    }

    pub fn vec(&self) -> &RatVec {
        &self.0
    }

    pub fn into_vec(self) -> RatVec {
        self.0
    }

    pub fn sup(&self, other: &Self) -> Result<Self> {
        self.0.zip_with(&other.0, |a, b| a.max(b).clone()).map(Self)
    }

    pub fn inf(&self, other: &Self) -> Result<Self> {
        self.0.zip_with(&other.0, |a, b| a.min(b).clone()).map(Self)
    }

    pub fn abs(&self) -> Self {
        Self(self.0.map(|a| a.abs()))
    }

    pub fn pos_part(&self) -> Self {
        Self(self.0.map(|a| if a.is_positive() { a.clone() } else { Rat::zero() }))
    }

    pub fn neg_part(&self) -> Self {
        Self(self.0.map(|a| if a.is_negative() { -a } else { Rat::zero() }))
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_nonnegative()
    }

    pub fn le(&self, other: &Self) -> Result<bool> {
        self.0.le(&other.0)
    }

    /// `self ∧ other == 0` for positive elements, i.e. disjoint supports.
    pub fn disjoint(&self, other: &Self) -> Result<bool> {
        Ok(self.abs().inf(&other.abs())?.0.is_zero())
    }
}

pub fn sup(x: &RatVec, y: &RatVec) -> Result<RatVec> {
    x.zip_with(y, |a, b| a.max(b).clone())
}

pub fn inf(x: &RatVec, y: &RatVec) -> Result<RatVec> {
    x.zip_with(y, |a, b| a.min(b).clone())
}

pub fn abs(x: &RatVec) -> RatVec {
    x.map(|a| a.abs())
}

/// The order interval `[lower, upper]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderInterval {
    lower: FinLatElement,
    upper: FinLatElement,
}

impl OrderInterval {
    pub fn new(lower: FinLatElement, upper: FinLatElement) -> Result<Self> {
        if !lower.le(&upper)? {
            return Err(Error::PreconditionViolated(format!(
                "interval bounds out of order: {} > {}",
                lower.vec(),
                upper.vec()
            )));
        }
        Ok(OrderInterval { lower, upper })
    }

    /// `[0, upper]`.
    pub fn from_zero(upper: FinLatElement) -> Result<Self> {
        let zero = FinLatElement(RatVec::zeros(upper.space_dim()));
        Self::new(zero, upper)
    }

    pub fn lower(&self) -> &FinLatElement {
        &self.lower
    }

    pub fn upper(&self) -> &FinLatElement {
        &self.upper
    }

    pub fn contains(&self, x: &FinLatElement) -> Result<bool> {
        Ok(self.lower.le(x)? && x.le(&self.upper)?)
    }
}

/// Splits `0 <= x <= a + b` as `y + z` with `y ∈ [0, a]`, `z ∈ [0, b]`,
/// taking `y = x ∧ a`.
pub fn riesz_decompose(
    x: &FinLatElement,
    a: &FinLatElement,
    b: &FinLatElement,
) -> Result<(FinLatElement, FinLatElement)> {
    let sum = FinLatElement(a.0.add(&b.0)?);
    if !a.is_positive() || !b.is_positive() {
        return Err(Error::PreconditionViolated("summands must be positive".into()));
    }
    if !x.is_positive() || !x.le(&sum)? {
        return Err(Error::PreconditionViolated(format!(
            "{} is not in [0, {}]",
            x.vec(),
            sum.vec()
        )));
    }
    let y = x.inf(a)?;
    let z = FinLatElement(x.0.sub(&y.0)?);
    Ok((y, z))
}

/// A coordinate ideal `{x ∈ Q^dim : support(x) ⊆ support}` (0-based indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealDescriptor {
    pub dim: usize,
    pub support: BTreeSet<usize>,
}

impl IdealDescriptor {
    pub fn new(dim: usize, support: BTreeSet<usize>) -> Result<Self> {
        if let Some(&k) = support.iter().find(|&&k| k >= dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: k + 1,
            });
        }
        Ok(IdealDescriptor { dim, support })
    }

    pub fn contains(&self, x: &RatVec) -> bool {
        x.dim() == self.dim && x.support().iter().all(|k| self.support.contains(k))
    }
}

fn check_dims(dim: usize, basis: &[RatVec]) -> Result<()> {
    if let Some(b) = basis.iter().find(|b| b.dim() != dim) {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: b.dim(),
        });
    }
    Ok(())
}

/// A vector of the span whose support is the joint support of the basis.
///
/// Tries the combinations `sum_k c^k b_k` for `c = 1, 2, ...`; only finitely
/// many `c` can cancel a coordinate, so this terminates.
fn full_support_vector(dim: usize, basis: &[RatVec], support: &BTreeSet<usize>) -> RatVec {
    let mut c = Rat::zero();
    loop {
        c += Rat::from_integer(1.into());
        let mut v = RatVec::zeros(dim);
        let mut w = Rat::from_integer(1.into());
        for b in basis {
            v = v.add(&b.scale(&w)).expect("checked dims");
            w *= &c;
        }
        if v.support().len() == support.len() {
            return v;
        }
    }
}

/// Decides whether `span(basis)` is an ideal of `Q^dim`.
///
/// On success the evidence is the support set (1-based). On failure it is a
/// pair `v` in the span and `u` with `|u| <= |v|` outside the span.
pub fn is_ideal(dim: usize, basis: &[RatVec]) -> Result<Verdict> {
    check_dims(dim, basis)?;
    let support: BTreeSet<usize> = basis.iter().flat_map(|b| b.support()).collect();
    let rank = RatMat::from_columns(dim, basis)?.rank();
    if rank == support.len() {
        return Ok(Verdict::holds_with(
            Method::Structural,
            Evidence::IdealSupport {
                support: support.iter().map(|k| k + 1).collect(),
            },
        ));
    }
    let v = full_support_vector(dim, basis, &support);
    for &s in &support {
        let u = RatVec::unit(dim, s).scale(&v[s]);
        if !in_span(dim, basis, &u)? {
            return Ok(Verdict::fails(Method::Structural, Evidence::IdealEscape { v, u }));
        }
    }
    unreachable!("rank below support size means some unit vector escapes the span")
}

/// Decides whether `span(basis)` is a vector sublattice of `Q^dim`.
///
/// Write the basis as the columns of a matrix. The span is a sublattice iff
/// its nonzero rows fall into exactly `rank` classes under positive
/// proportionality; the classes are then the supports of disjoint positive
/// generators.
pub fn is_sublattice(dim: usize, basis: &[RatVec]) -> Result<Verdict> {
    check_dims(dim, basis)?;
    let m = RatMat::from_columns(dim, basis)?;
    let (reduced, pivots) = m.transpose().rref();
    let rank = pivots.len();
    // coordinates of the canonical basis: rows of reduced^T
    let coords: Vec<RatVec> = (0..dim)
        .map(|r| RatVec::new((0..rank).map(|k| reduced.get(k, r).clone()).collect()))
        .collect();
    let mut classes: Vec<(RatVec, Vec<usize>)> = Vec::new();
    for (r, row) in coords.iter().enumerate() {
        if row.is_zero() {
            continue;
        }
        let found = classes.iter_mut().find(|(rep, _)| positively_proportional(rep, row));
        match found {
            Some((_, members)) => members.push(r),
            None => classes.push((row.clone(), vec![r])),
        }
    }
    let canonical: Vec<RatVec> = (0..rank)
        .map(|k| RatVec::new((0..dim).map(|r| reduced.get(k, r).clone()).collect()))
        .collect();
    if classes.len() == rank {
        let atoms = classes
            .iter()
            .map(|(rep, members)| {
                // the span element equal to `rep`-scaled weights on the class
                let mut atom = RatVec::zeros(dim);
                let pivot = rep.support()[0];
                for &r in members {
                    atom.set(r, &coords[r][pivot] / &rep[pivot]);
                }
                atom
            })
            .collect();
        return Ok(Verdict::holds_with(Method::Structural, Evidence::SublatticeAtoms { atoms }));
    }
    // The sign chambers of the span are open cones, so integer combinations
    // with growing radius reach one where |v| leaves the span.
    let mut radius = 1i64;
    loop {
        for coeffs in integer_grid(rank, radius) {
            let mut v = RatVec::zeros(dim);
            for (c, b) in coeffs.iter().zip(&canonical) {
                v = v.add(&b.scale(&Rat::from_integer((*c).into())))?;
            }
            let abs_v = abs(&v);
            if !in_span(dim, &canonical, &abs_v)? {
                return Ok(Verdict::fails(Method::Structural, Evidence::SublatticeEscape { v, abs_v }));
            }
        }
        radius += 1;
    }
}

/// All integer vectors of length `n` with entries in `-radius..=radius`.
fn integer_grid(n: usize, radius: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (-radius..=radius).map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out
}

fn positively_proportional(a: &RatVec, b: &RatVec) -> bool {
    let Some(&k) = a.support().first() else {
        return false;
    };
    if b[k].is_zero() {
        return false;
    }
    let ratio = &b[k] / &a[k];
    ratio.is_positive() && a.scale(&ratio) == *b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, rat};
    use crate::verdict::Outcome;

    fn el(v: &[i64]) -> FinLatElement {
        FinLatElement::from_ints(v)
    }

    #[test]
    fn lattice_operations() {
        assert_eq!(el(&[1, -1]).sup(&el(&[0, 0])).unwrap(), el(&[1, 0]));
        assert_eq!(el(&[-2, 3]).abs(), el(&[2, 3]));
        assert_eq!(el(&[1, 2]).inf(&el(&[2, 1])).unwrap(), el(&[1, 1]));
        let x = el(&[3, -4, 0]);
        let pos = x.pos_part();
        let neg = x.neg_part();
        assert_eq!(pos.vec().sub(neg.vec()).unwrap(), *x.vec());
        assert_eq!(pos.vec().add(neg.vec()).unwrap(), *x.abs().vec());
        assert!(el(&[1]).sup(&el(&[1, 2])).is_err());
    }

    #[test]
    fn zero_dimensional_lattice() {
        let z = el(&[]);
        assert_eq!(z.sup(&z).unwrap(), z);
        assert!(is_ideal(0, &[]).unwrap().is_holds());
    }

    #[test]
    fn riesz_examples() {
        let (y, z) = riesz_decompose(&el(&[1, 1]), &el(&[1, 0]), &el(&[0, 1])).unwrap();
        assert_eq!((y, z), (el(&[1, 0]), el(&[0, 1])));
        let (y, z) = riesz_decompose(&el(&[1]), &el(&[1]), &el(&[1])).unwrap();
        assert!(OrderInterval::from_zero(el(&[1])).unwrap().contains(&y).unwrap());
        assert_eq!(y.vec().add(z.vec()).unwrap(), RatVec::from_ints(&[1]));
        let x = FinLatElement::new(RatVec::new(vec![rat(3, 2)]));
        let (y, z) = riesz_decompose(&x, &el(&[1]), &el(&[1])).unwrap();
        assert_eq!(y, el(&[1]));
        assert_eq!(z.vec()[0], rat(1, 2));
        assert!(riesz_decompose(&el(&[3]), &el(&[1]), &el(&[1])).is_err());
        assert!(riesz_decompose(&el(&[0]), &el(&[-1]), &el(&[1])).is_err());
    }

    #[test]
    fn ideal_examples() {
        let v = is_ideal(2, &[RatVec::from_ints(&[1, 0])]).unwrap();
        assert_eq!(v.evidence, Some(Evidence::IdealSupport { support: vec![1] }));
        let v = is_ideal(2, &[RatVec::from_ints(&[1, 1])]).unwrap();
        assert_eq!(v.outcome, Outcome::Fails);
        assert_eq!(
            v.evidence,
            Some(Evidence::IdealEscape {
                v: RatVec::from_ints(&[1, 1]),
                u: RatVec::from_ints(&[1, 0]),
            })
        );
        let v = is_ideal(3, &[RatVec::from_ints(&[1, 0, 0]), RatVec::from_ints(&[0, 0, 2])]).unwrap();
        assert_eq!(v.evidence, Some(Evidence::IdealSupport { support: vec![1, 3] }));
    }

    #[test]
    fn sublattice_examples() {
        assert!(is_sublattice(2, &[RatVec::from_ints(&[1, 1])]).unwrap().is_holds());
        assert!(is_sublattice(2, &[RatVec::from_ints(&[1, -1])]).unwrap().is_fails());
        let basis = [RatVec::from_ints(&[1, 2, 0]), RatVec::from_ints(&[0, 1, 1])];
        let v = is_sublattice(3, &basis).unwrap();
        match v.evidence {
            Some(Evidence::SublatticeEscape { v: x, abs_v }) => {
                assert!(in_span(3, &basis, &x).unwrap());
                assert!(!in_span(3, &basis, &abs_v).unwrap());
            }
            other => panic!("unexpected {other:?}"),
        }
        let atoms = is_sublattice(3, &[RatVec::from_ints(&[2, 0, 4]), RatVec::from_ints(&[0, 3, 0])]).unwrap();
        assert!(atoms.is_holds());
        let _ = int(0);
    }
}
