//! Decision procedures for positivity, lattice homomorphisms, and (almost)
//! interval preserving maps.
//!
//! Matrix maps are decided exactly. Sequence maps are probed with seeded
//! samples: a failure found this way carries an exact witness, while a run
//! without failures is only reported as an inconclusive positive.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::map::{Element, LatticeMap, MapKind, SpaceDesc};
use crate::error::{Error, Result};
use crate::fdlat::abs;
use crate::ratcore::rat::as_string;
use crate::ratcore::{
    box_vertices, lp_feasible, minimize_linear_over_max, AffineTerm, Feasibility, FeasibilityProblem, Rat,
    RatMat, RatVec, VarBound,
};
use crate::sampling::Sampler;
use crate::seqlat::{EpSeq, SpaceTag};
use crate::verdict::{Evidence, Method, Verdict};

/// Default cap on the number of box vertices enumerated per check.
pub const DEFAULT_CAP: usize = 1 << 12;

/// Seed and sample count for randomized checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Probe {
    pub seed: u64,
    pub samples: usize,
}

impl Default for Probe {
    fn default() -> Self {
        Probe { seed: 0, samples: 64 }
    }
}

impl Probe {
    pub fn new(seed: u64, samples: usize) -> Self {
        Probe { seed, samples }
    }

    fn verdict(&self) -> Verdict {
        Verdict::sampled_positive(self.seed, self.samples)
    }

    fn method(&self) -> Method {
        Method::Sampled {
            seed: self.seed,
            samples: self.samples,
        }
    }
}

const SEQUENCE_NOTE: &str = "checked on eventually periodic elements only";

fn first_negative_entry(m: &RatMat) -> Option<(usize, usize, Rat)> {
    (0..m.rows())
        .flat_map(|r| (0..m.cols()).map(move |c| (r, c)))
        .find(|&(r, c)| m.get(r, c).is_negative())
        .map(|(r, c)| (r, c, m.get(r, c).clone()))
}

pub fn is_positive(t: &LatticeMap) -> Verdict {
    match &t.kind {
        MapKind::Matrix(m) => match first_negative_entry(m) {
            Some((row, col, value)) => Verdict::fails(
                Method::Structural,
                Evidence::NegativeEntry {
                    row: row + 1,
                    col: col + 1,
                    value,
                },
            ),
            None => Verdict::holds(Method::Structural),
        },
        MapKind::Sequence(s) => {
            debug_assert!(s.has_nonnegative_coefficients());
            Verdict::holds(Method::Structural).with_note("built-in sequence maps have nonnegative coefficients")
        }
    }
}

/// Positivity probed on seeded positive inputs.
pub fn is_positive_sampled(t: &LatticeMap, probe: Probe) -> Result<Verdict> {
    let mut sampler = Sampler::new(probe.seed);
    for _ in 0..probe.samples {
        let x = sample_element(t.domain, &mut sampler, true);
        let image = t.apply(&x)?;
        if !image.is_nonnegative() {
            return Ok(Verdict::fails(probe.method(), Evidence::SequenceNegative { x, image }));
        }
    }
    Ok(probe.verdict().with_note(SEQUENCE_NOTE))
}

/// Random element of a space; nonnegative if asked.
pub fn sample_element(space: SpaceDesc, sampler: &mut Sampler, nonnegative: bool) -> Element {
    let draw = |s: &mut Sampler| {
        if nonnegative {
            s.nonnegative(4, 3)
        } else {
            s.rational(4, 3)
        }
    };
    match space {
        SpaceDesc::Coord(n) => Element::Vector(RatVec::new((0..n).map(|_| draw(sampler)).collect())),
        SpaceDesc::Seq(tag) => {
            let seq = match tag {
                SpaceTag::C00 | SpaceTag::C0ClosureModel | SpaceTag::Lp(_) => {
                    let len = sampler.between(1, 6);
                    EpSeq::finite((0..len).map(|_| draw(sampler)).collect())
                }
                SpaceTag::C => {
                    let len = sampler.between(0, 4);
                    let prefix = (0..len).map(|_| draw(sampler)).collect();
                    EpSeq::new(prefix, vec![draw(sampler)]).expect("nonempty period")
                }
                SpaceTag::EventuallyConstant { from } => {
                    let prefix = (0..from.saturating_sub(1)).map(|_| draw(sampler)).collect();
                    EpSeq::new(prefix, vec![draw(sampler)]).expect("nonempty period")
                }
                SpaceTag::Linf => {
                    let plen = sampler.between(0, 3);
                    let qlen = sampler.between(1, 3);
                    let prefix = (0..plen).map(|_| draw(sampler)).collect();
                    let period = (0..qlen).map(|_| draw(sampler)).collect();
                    EpSeq::new(prefix, period).expect("nonempty period")
                }
            };
            Element::Sequence(seq)
        }
    }
}

/// A point of `[0, s]` for `s >= 0`. Weights are free on the prefix plus up to
/// `extra` further terms and then repeat along the period of `s`, so the
/// result stays in the same sequence space.
pub fn sequence_below(s: &EpSeq, sampler: &mut Sampler, extra: usize) -> EpSeq {
    let l = s.prefix().len() + sampler.between(0, extra);
    let p = s.period().len();
    let weights: Vec<Rat> = (0..l + p)
        .map(|_| {
            let w = sampler.nonnegative(3, 3);
            if w > Rat::one() {
                Rat::one()
            } else {
                w
            }
        })
        .collect();
    EpSeq::from_fn(l, p, |n| {
        let k = if n < l { n } else { l + (n - l) % p };
        s.term(n) * &weights[k]
    })
}

/// Structural: nonnegative and at most one nonzero entry per row.
pub fn is_lattice_hom(t: &LatticeMap) -> Result<Verdict> {
    is_lattice_hom_with(t, Probe::default())
}

pub fn is_lattice_hom_with(t: &LatticeMap, probe: Probe) -> Result<Verdict> {
    match &t.kind {
        MapKind::Matrix(m) => {
            let structural = structural_hom(m);
            let oracle = hom_oracle(t, probe)?;
            if structural.is_fails() != oracle.is_fails() {
                return Err(Error::PreconditionViolated(format!(
                    "structural lattice homomorphism test and definitional oracle disagree on {m}"
                )));
            }
            Ok(structural)
        }
        MapKind::Sequence(_) => Ok(hom_oracle(t, probe)?.with_note(SEQUENCE_NOTE)),
    }
}

fn structural_hom(m: &RatMat) -> Verdict {
    if let Some((_, col, _)) = first_negative_entry(m) {
        return modulus_witness(m, RatVec::unit(m.cols(), col));
    }
    for r in 0..m.rows() {
        let nonzero: Vec<usize> = (0..m.cols()).filter(|&c| !m.get(r, c).is_zero()).collect();
        if let [a, b, ..] = nonzero[..] {
            // x = e_a - (T_ra / T_rb) e_b cancels in row r but not in T|x|
            let mut x = RatVec::zeros(m.cols());
            x.set(a, Rat::one());
            x.set(b, -(m.get(r, a) / m.get(r, b)));
            return modulus_witness(m, x);
        }
    }
    Verdict::holds(Method::Structural)
}

fn modulus_witness(m: &RatMat, x: RatVec) -> Verdict {
    let abs_of_image = abs(&m.apply(&x).expect("witness has domain dimension"));
    let image_of_abs = m.apply(&abs(&x)).expect("witness has domain dimension");
    debug_assert_ne!(abs_of_image, image_of_abs);
    Verdict::fails(
        Method::Structural,
        Evidence::ModulusMismatch {
            x,
            abs_of_image,
            image_of_abs,
        },
    )
}

/// Definitional test `T(x ∨ y) = Tx ∨ Ty` on seeded samples.
///
/// For matrices a failing pair is shrunk greedily before it is reported.
/// For sequence maps the equivalent form `|Tx| = T|x|` is probed.
pub fn hom_oracle(t: &LatticeMap, probe: Probe) -> Result<Verdict> {
    let mut sampler = Sampler::new(probe.seed);
    match &t.kind {
        MapKind::Matrix(m) => {
            let n = m.cols();
            for _ in 0..probe.samples {
                let x = small_vector(&mut sampler, n);
                let y = small_vector(&mut sampler, n);
                if sup_mismatch(m, &x, &y)? {
                    let (x, y) = shrink_pair(m, x, y)?;
                    let image_of_sup = m.apply(&crate::fdlat::sup(&x, &y)?)?;
                    let sup_of_images = crate::fdlat::sup(&m.apply(&x)?, &m.apply(&y)?)?;
                    return Ok(Verdict::fails(
                        probe.method(),
                        Evidence::SupMismatch {
                            x,
                            y,
                            image_of_sup,
                            sup_of_images,
                        },
                    ));
                }
            }
            Ok(probe.verdict())
        }
        MapKind::Sequence(_) => {
            for _ in 0..probe.samples {
                let x = sample_element(t.domain, &mut sampler, false);
                if let Some(found) = modulus_mismatch(t, &x)? {
                    let x = shrink_sequence(t, found)?;
                    let abs_of_image = t.apply(&x)?.abs();
                    let image_of_abs = t.apply(&x.abs())?;
                    return Ok(Verdict::fails(
                        probe.method(),
                        Evidence::SequenceModulusMismatch {
                            x,
                            abs_of_image,
                            image_of_abs,
                        },
                    ));
                }
            }
            Ok(probe.verdict())
        }
    }
}

fn small_vector(sampler: &mut Sampler, n: usize) -> RatVec {
    RatVec::new((0..n).map(|_| sampler.rational(3, 2)).collect())
}

fn sup_mismatch(m: &RatMat, x: &RatVec, y: &RatVec) -> Result<bool> {
    let lhs = m.apply(&crate::fdlat::sup(x, y)?)?;
    let rhs = crate::fdlat::sup(&m.apply(x)?, &m.apply(y)?)?;
    Ok(lhs != rhs)
}

fn shrink_pair(m: &RatMat, mut x: RatVec, mut y: RatVec) -> Result<(RatVec, RatVec)> {
    let simpler = |v: &Rat| -> Vec<Rat> {
        let mut out = vec![Rat::zero()];
        if !v.is_integer() || v.abs() > Rat::one() {
            out.push(if v.is_negative() { -Rat::one() } else { Rat::one() });
        }
        out
    };
    loop {
        let mut changed = false;
        for k in 0..x.dim() {
            for which in 0..2 {
                let current = if which == 0 { x[k].clone() } else { y[k].clone() };
                for candidate in simpler(&current) {
                    if candidate == current {
                        continue;
                    }
                    let (mut nx, mut ny) = (x.clone(), y.clone());
                    if which == 0 {
                        nx.set(k, candidate);
                    } else {
                        ny.set(k, candidate);
                    }
                    if sup_mismatch(m, &nx, &ny)? {
                        x = nx;
                        y = ny;
                        changed = true;
                        break;
                    }
                }
            }
        }
        if !changed {
            return Ok((x, y));
        }
    }
}

fn modulus_mismatch(t: &LatticeMap, x: &Element) -> Result<Option<Element>> {
    Ok((t.apply(x)?.abs() != t.apply(&x.abs())?).then(|| x.clone()))
}

/// Zero out prefix and period terms while the mismatch persists.
fn shrink_sequence(t: &LatticeMap, x: Element) -> Result<Element> {
    let Element::Sequence(mut s) = x else {
        return Ok(x);
    };
    loop {
        let mut changed = false;
        let (prefix, period) = (s.prefix().to_vec(), s.period().to_vec());
        let candidates = (0..prefix.len())
            .map(|k| {
                let mut p = prefix.clone();
                p[k] = Rat::zero();
                (p, period.clone())
            })
            .chain(std::iter::once((prefix.clone(), vec![Rat::zero()])));
        for (p, q) in candidates {
            let c = EpSeq::new(p, q)?;
            if c != s && modulus_mismatch(t, &Element::Sequence(c.clone()))?.is_some() {
                s = c;
                changed = true;
                break;
            }
        }
        if !changed {
            return Ok(Element::Sequence(s));
        }
    }
}

/// Interval preservation.
///
/// For a positive matrix `T`, Riesz decomposition gives
/// `[0, Tx] = Σ x_i [0, T e_i]` and `T[0, x] = Σ x_i T[0, e_i]`, so it is
/// enough that every vertex of each box `[0, T e_i]` is reached from `[0, e_i]`.
pub fn is_interval_preserving(t: &LatticeMap, cap: usize) -> Result<Verdict> {
    is_interval_preserving_with(t, cap, Probe::default())
}

pub fn is_interval_preserving_with(t: &LatticeMap, cap: usize, probe: Probe) -> Result<Verdict> {
    let positive = is_positive(t);
    if positive.is_fails() {
        return Ok(positive);
    }
    match &t.kind {
        MapKind::Matrix(m) => basis_interval_check(m, cap),
        MapKind::Sequence(_) => sampled_interval_check(t, probe),
    }
}

fn basis_interval_check(m: &RatMat, cap: usize) -> Result<Verdict> {
    for i in 0..m.cols() {
        let column = m.column(i);
        let e = RatVec::unit(m.cols(), i);
        for vertex in box_vertices(&column, cap)? {
            let problem = FeasibilityProblem::boxed(m, &vertex, &RatVec::zeros(m.cols()), &e)?;
            if let Feasibility::Infeasible(certificate) = lp_feasible(&problem)? {
                return Ok(Verdict::fails(
                    Method::LpExact,
                    Evidence::IntervalGap {
                        basis_index: i + 1,
                        vertex,
                        certificate,
                    },
                ));
            }
        }
    }
    Ok(Verdict::holds(Method::LpExact))
}

/// Definitional interval check: for seeded strictly positive `x`, every
/// vertex of `[0, Tx]` must be `Tz` for some `z` in `[0, x]`.
///
/// With `x` of full support a single sample already decides the question for
/// a positive matrix; more samples only repeat the check.
pub fn interval_oracle(m: &RatMat, cap: usize, probe: Probe) -> Result<Verdict> {
    let t = LatticeMap::matrix(m.clone());
    let positive = is_positive(&t);
    if positive.is_fails() {
        return Ok(positive);
    }
    let mut sampler = Sampler::new(probe.seed);
    for _ in 0..probe.samples.max(1) {
        let x = sampler.positive_vector(m.cols());
        let tx = m.apply(&x)?;
        for vertex in box_vertices(&tx, cap)? {
            let problem = FeasibilityProblem::boxed(m, &vertex, &RatVec::zeros(m.cols()), &x)?;
            if let Feasibility::Infeasible(certificate) = lp_feasible(&problem)? {
                return Ok(Verdict::fails(
                    probe.method(),
                    Evidence::IntervalGapAt { x, vertex, certificate },
                ));
            }
        }
    }
    Ok(Verdict::holds(Method::LpExact).with_note(format!(
        "all box vertices reached for {} strictly positive samples (seed {})",
        probe.samples.max(1),
        probe.seed
    )))
}

/// Problem data for a sampled pair `(x, y)` with `0 <= y <= Tx`: the window
/// matrix on the first `n` output coordinates and the box `[0, x]` on the
/// input coordinates it reads.
struct WindowProblem {
    window: usize,
    matrix: RatMat,
    upper: RatVec,
    target: RatVec,
}

fn window_problem(t: &LatticeMap, x: &Element, y: &EpSeq, window: usize) -> Result<WindowProblem> {
    let matrix = t.window(window)?;
    let upper = x.head(matrix.cols());
    let target = RatVec::new(y.head(window));
    Ok(WindowProblem {
        window,
        matrix,
        upper,
        target,
    })
}

fn default_window(tx: &EpSeq, y: &EpSeq) -> usize {
    tx.horizon().max(y.horizon()) + 2
}

/// `min_{z in [0,x]} max_k |y_k - (Tz)_k|` over the window.
fn window_distance(p: &WindowProblem) -> Result<Rat> {
    let terms: Vec<AffineTerm> = (0..p.window)
        .map(|k| AffineTerm::new(p.matrix.row(k).scale(&-Rat::one()), p.target[k].clone()))
        .collect();
    let vars: Vec<VarBound> = p
        .upper
        .iter()
        .map(|u| VarBound::between(Rat::zero(), u.clone()))
        .collect();
    Ok(minimize_linear_over_max(&terms, &vars)?.value)
}

fn sampled_pairs(t: &LatticeMap, probe: Probe) -> Result<Vec<(Element, EpSeq)>> {
    let mut sampler = Sampler::new(probe.seed);
    let mut out = Vec::with_capacity(probe.samples);
    for _ in 0..probe.samples {
        let x = sample_element(t.domain, &mut sampler, true);
        let Element::Sequence(tx) = t.apply(&x)? else {
            return Err(Error::PreconditionViolated("sequence map with vector values".into()));
        };
        let extra = match t.codomain {
            SpaceDesc::Seq(SpaceTag::EventuallyConstant { from }) => {
                from.saturating_sub(1).saturating_sub(tx.prefix().len())
            }
            _ => 3,
        };
        let y = sequence_below(&tx, &mut sampler, extra);
        out.push((x, y));
    }
    Ok(out)
}

fn sampled_interval_check(t: &LatticeMap, probe: Probe) -> Result<Verdict> {
    for (x, y) in sampled_pairs(t, probe)? {
        let Element::Sequence(tx) = t.apply(&x)? else { unreachable!() };
        let p = window_problem(t, &x, &y, default_window(&tx, &y))?;
        let problem = FeasibilityProblem::boxed(&p.matrix, &p.target, &RatVec::zeros(p.upper.dim()), &p.upper)?;
        if let Feasibility::Infeasible(certificate) = lp_feasible(&problem)? {
            return Ok(Verdict::fails(
                probe.method(),
                Evidence::SequenceIntervalGap {
                    x,
                    y,
                    window: p.window,
                    certificate,
                },
            ));
        }
    }
    Ok(probe.verdict().with_note(SEQUENCE_NOTE))
}

/// Exact evidence that `y` is at positive distance from `T[0, x]`.
///
/// Any `z` in `[0, x]` has `‖y - Tz‖ >= max_{k <= window} |y_k - (Tz)_k|`,
/// and the minimum of the right side over the box is an exact LP value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SeparationCertificate {
    pub x: Element,
    pub y: EpSeq,
    pub window: usize,
    #[serde(with = "as_string")]
    pub bound: Rat,
    pub summary: String,
}

impl SeparationCertificate {
    /// Computes the bound for the pair; `None` if it is zero.
    pub fn find(t: &LatticeMap, x: Element, y: EpSeq, window: usize) -> Result<Option<Self>> {
        let p = window_problem(t, &x, &y, window)?;
        let bound = window_distance(&p)?;
        if !bound.is_positive() {
            return Ok(None);
        }
        let summary = format!(
            "every element of T[0,x] is at sup-distance at least {bound} from y on coordinates 1..{window}"
        );
        Ok(Some(SeparationCertificate {
            x,
            y,
            window,
            bound,
            summary,
        }))
    }

    /// Re-checks `0 <= y <= Tx` and recomputes the bound.
    pub fn verify(&self, t: &LatticeMap) -> Result<bool> {
        let Element::Sequence(tx) = t.apply(&self.x)? else {
            return Ok(false);
        };
        if !self.x.is_nonnegative() || !self.y.is_nonnegative() || !self.y.le(&tx) {
            return Ok(false);
        }
        let p = window_problem(t, &self.x, &self.y, self.window)?;
        let value = window_distance(&p)?;
        Ok(self.bound.is_positive() && value >= self.bound)
    }
}

/// Almost interval preservation: `[0, Tx]` is the closure of `T[0, x]`.
///
/// Images of boxes under matrices are closed, so for matrices this is the
/// interval check. For sequence maps a negative verdict needs a verified
/// separation certificate.
pub fn is_almost_interval_preserving(t: &LatticeMap, cap: usize) -> Result<Verdict> {
    is_almost_interval_preserving_with(t, cap, Probe::default())
}

pub fn is_almost_interval_preserving_with(t: &LatticeMap, cap: usize, probe: Probe) -> Result<Verdict> {
    let positive = is_positive(t);
    if positive.is_fails() {
        return Ok(positive);
    }
    match &t.kind {
        MapKind::Matrix(m) => Ok(basis_interval_check(m, cap)?.with_note("AIP⟺IP: finite-dimensional")),
        MapKind::Sequence(_) => {
            for (x, y) in sampled_pairs(t, probe)? {
                let Element::Sequence(tx) = t.apply(&x)? else { unreachable!() };
                let window = default_window(&tx, &y);
                if let Some(cert) = SeparationCertificate::find(t, x, y, window)? {
                    if cert.verify(t)? {
                        return Ok(Verdict::fails(Method::Certificate, Evidence::Separation(cert)));
                    }
                }
            }
            Ok(probe.verdict().with_note(SEQUENCE_NOTE))
        }
    }
}

/// Checks a given separation certificate for `t`.
pub fn aip_fails_with(t: &LatticeMap, cert: SeparationCertificate) -> Result<Verdict> {
    if cert.verify(t)? {
        Ok(Verdict::fails(Method::Certificate, Evidence::Separation(cert)))
    } else {
        Ok(Verdict::inconclusive_negative(Method::Certificate, "separation certificate did not verify"))
    }
}

pub fn is_injective(m: &RatMat) -> bool {
    m.rank() == m.cols()
}

pub fn is_surjective(m: &RatMat) -> bool {
    m.rank() == m.rows()
}

/// `‖T‖ <= 1` for the norm of the space tag (ℓ¹, ℓ², or a sup norm).
pub fn is_contractive(t: &LatticeMap, norm: SpaceTag) -> Result<Verdict> {
    match &t.kind {
        MapKind::Matrix(m) => {
            let ok = match norm {
                SpaceTag::Lp(1) => m.max_column_abs_sum() <= Rat::one(),
                SpaceTag::Lp(2) => l2_contractive(m)?,
                SpaceTag::Lp(p) => return Err(Error::UnsupportedNorm(p)),
                _ => m.max_row_abs_sum() <= Rat::one(),
            };
            if ok {
                Ok(Verdict::holds(Method::Structural))
            } else {
                Ok(Verdict::fails(
                    Method::Structural,
                    Evidence::Detail {
                        text: format!("operator norm of {m} exceeds 1 in {norm}"),
                    },
                ))
            }
        }
        MapKind::Sequence(_) => Ok(Verdict::holds(Method::Structural)
            .with_note("built-in sequence maps average or copy coordinates")),
    }
}

/// `I - TᵀT` is positive semidefinite iff all its principal minors are `>= 0`.
fn l2_contractive(m: &RatMat) -> Result<bool> {
    let gram = m.transpose().mul(m)?;
    let n = gram.rows();
    let mut d = RatMat::identity(n);
    for r in 0..n {
        for c in 0..n {
            d.set(r, c, d.get(r, c) - gram.get(r, c));
        }
    }
    for mask in 1u32..(1u32 << n) {
        let idx: Vec<usize> = (0..n).filter(|&k| mask & (1 << k) != 0).collect();
        if d.principal(&idx).determinant()?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latmaps::map::SequenceMap;
    use crate::ratcore::{int, rat};
    use crate::seqlat::averaging_matrix;

    fn phi21() -> LatticeMap {
        LatticeMap::matrix(averaging_matrix(1, 2, 4).unwrap())
    }

    #[test]
    fn positivity_examples() {
        assert!(is_positive(&LatticeMap::matrix(RatMat::identity(2))).is_holds());
        let v = is_positive(&LatticeMap::matrix(RatMat::from_int_rows(&[&[1, -1], &[0, 1]])));
        assert_eq!(
            v.evidence,
            Some(Evidence::NegativeEntry { row: 1, col: 2, value: int(-1) })
        );
        let a = LatticeMap::averaging(1, 2, SpaceTag::Lp(1)).unwrap();
        assert!(is_positive(&a).is_holds());
        assert!(is_positive_sampled(&a, Probe::new(3, 50)).unwrap().leans_true());
    }

    #[test]
    fn lattice_hom_examples() {
        let v = is_lattice_hom(&phi21()).unwrap();
        assert_eq!(
            v.evidence,
            Some(Evidence::ModulusMismatch {
                x: RatVec::from_ints(&[1, -1, 0, 0]),
                abs_of_image: RatVec::from_ints(&[0, 0, 0]),
                image_of_abs: RatVec::from_ints(&[1, 0, 0]),
            })
        );
        assert!(is_lattice_hom(&LatticeMap::matrix(RatMat::diagonal(&[int(1), int(2)]))).unwrap().is_holds());
        let row = is_lattice_hom(&LatticeMap::matrix(RatMat::from_int_rows(&[&[1, 1]]))).unwrap();
        assert_eq!(
            row.evidence,
            Some(Evidence::ModulusMismatch {
                x: RatVec::from_ints(&[1, -1]),
                abs_of_image: RatVec::from_ints(&[0]),
                image_of_abs: RatVec::from_ints(&[2]),
            })
        );
    }

    #[test]
    fn sequence_hom_oracle_finds_exact_witness() {
        let a = LatticeMap::averaging(2, 4, SpaceTag::Lp(1)).unwrap();
        let v = is_lattice_hom(&a).unwrap();
        let Some(Evidence::SequenceModulusMismatch { x, abs_of_image, image_of_abs }) = v.evidence else {
            panic!("expected a witness, got {v:?}");
        };
        assert_eq!(a.apply(&x).unwrap().abs(), abs_of_image);
        assert_eq!(a.apply(&x.abs()).unwrap(), image_of_abs);
        assert_ne!(abs_of_image, image_of_abs);
        let id = LatticeMap::averaging(3, 3, SpaceTag::Lp(1)).unwrap();
        assert!(is_lattice_hom(&id).unwrap().leans_true());
    }

    #[test]
    fn interval_examples() {
        assert!(is_interval_preserving(&phi21(), DEFAULT_CAP).unwrap().is_holds());
        let v = is_interval_preserving(&LatticeMap::matrix(RatMat::from_int_rows(&[&[1, 0], &[1, 0]])), DEFAULT_CAP)
            .unwrap();
        let Some(Evidence::IntervalGap { basis_index, vertex, .. }) = v.evidence else {
            panic!("{v:?}")
        };
        assert_eq!(basis_index, 1);
        // both (1,0) and (0,1) are unreachable; the first found is reported
        assert!(vertex == RatVec::from_ints(&[1, 0]) || vertex == RatVec::from_ints(&[0, 1]));
        assert!(is_interval_preserving(&LatticeMap::matrix(RatMat::identity(3)), DEFAULT_CAP).unwrap().is_holds());
        let neg = LatticeMap::matrix(RatMat::from_int_rows(&[&[1, -1]]));
        assert!(matches!(
            is_interval_preserving(&neg, DEFAULT_CAP).unwrap().evidence,
            Some(Evidence::NegativeEntry { .. })
        ));
        let big = LatticeMap::matrix(RatMat::from_rows(1, vec![vec![int(1)]; 20]).unwrap());
        assert!(matches!(
            is_interval_preserving(&big, 16),
            Err(Error::SupportTooLarge { .. })
        ));
    }

    #[test]
    fn certificates_recheck() {
        let v = is_interval_preserving(&LatticeMap::matrix(RatMat::from_int_rows(&[&[1, 1], &[1, 0]])), DEFAULT_CAP)
            .unwrap();
        let Some(Evidence::IntervalGap { basis_index, vertex, certificate }) = v.evidence else {
            panic!("{v:?}")
        };
        let m = RatMat::from_int_rows(&[&[1, 1], &[1, 0]]);
        let problem = FeasibilityProblem::boxed(
            &m,
            &vertex,
            &RatVec::zeros(2),
            &RatVec::unit(2, basis_index - 1),
        )
        .unwrap();
        assert!(certificate.verify(&problem));
    }

    #[test]
    fn basis_reduction_matches_oracle_on_random_matrices() {
        let mut sampler = Sampler::new(77);
        for k in 0..150 {
            let rows = sampler.between(1, 4);
            let cols = sampler.between(1, 4);
            let m = if k % 2 == 0 {
                sampler.interval_preserving_matrix(rows, cols)
            } else {
                sampler.nonnegative_matrix(rows, cols)
            };
            let t = LatticeMap::matrix(m.clone());
            let fast = is_interval_preserving(&t, DEFAULT_CAP).unwrap();
            let slow = interval_oracle(&m, DEFAULT_CAP, Probe::new(k, 2)).unwrap();
            assert_eq!(fast.is_holds(), slow.is_holds(), "{m}");
        }
    }

    #[test]
    fn sampled_sequence_interval_checks() {
        let a = LatticeMap::averaging(1, 3, SpaceTag::Lp(1)).unwrap();
        let v = is_interval_preserving_with(&a, DEFAULT_CAP, Probe::new(5, 40)).unwrap();
        assert!(v.leans_true() && !v.is_conclusive());
        let aip = is_almost_interval_preserving_with(&a, DEFAULT_CAP, Probe::new(5, 40)).unwrap();
        assert!(aip.leans_true());
    }

    #[test]
    fn constant_inclusion_is_not_almost_interval_preserving() {
        // c_1 (constants) into c
        let inc = LatticeMap::sequence(
            SequenceMap::Embed { dim: 1, repeat_last: true },
            SpaceDesc::Coord(1),
            SpaceDesc::Seq(SpaceTag::C),
        );
        let x = Element::Vector(RatVec::from_ints(&[1]));
        let y = EpSeq::new(vec![rat(1, 2)], vec![int(1)]).unwrap();
        let cert = SeparationCertificate::find(&inc, x, y, 2).unwrap().unwrap();
        assert_eq!(cert.bound, rat(1, 4));
        assert!(cert.verify(&inc).unwrap());
        let forged = SeparationCertificate { bound: rat(1, 3), ..cert.clone() };
        assert!(!forged.verify(&inc).unwrap());
        assert!(aip_fails_with(&inc, cert).unwrap().is_fails());
        let found = is_almost_interval_preserving_with(&inc, DEFAULT_CAP, Probe::new(1, 30)).unwrap();
        assert!(found.is_fails(), "{found:?}");
        assert!(is_interval_preserving_with(&inc, DEFAULT_CAP, Probe::new(1, 30)).unwrap().is_fails());
    }

    #[test]
    fn contraction_norms() {
        let m = averaging_matrix(1, 2, 4).unwrap();
        let t = LatticeMap::matrix(m);
        for tag in [SpaceTag::Lp(1), SpaceTag::Lp(2), SpaceTag::Linf] {
            assert!(is_contractive(&t, tag).unwrap().is_holds(), "{tag}");
        }
        let sum = LatticeMap::matrix(RatMat::from_int_rows(&[&[1, 1]]));
        assert!(is_contractive(&sum, SpaceTag::Lp(1)).unwrap().is_holds());
        assert!(is_contractive(&sum, SpaceTag::Linf).unwrap().is_fails());
        assert!(is_contractive(&sum, SpaceTag::Lp(2)).unwrap().is_fails());
        let dup = LatticeMap::matrix(RatMat::from_int_rows(&[&[1], &[1]]));
        assert!(is_contractive(&dup, SpaceTag::Linf).unwrap().is_holds());
        assert!(is_contractive(&dup, SpaceTag::Lp(1)).unwrap().is_fails());
    }
}
