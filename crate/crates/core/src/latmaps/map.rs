//! Linear maps between coordinate lattices and sequence spaces.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ratcore::rat::RatString;
use crate::ratcore::{Rat, RatMat, RatVec};
use crate::seqlat::{averaging_map, averaging_matrix, xprime, EpSeq, SpaceTag};

/// Where a map starts or ends.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceDesc {
    /// `ℝⁿ` with the coordinatewise order.
    Coord(usize),
    Seq(SpaceTag),
}

impl fmt::Display for SpaceDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceDesc::Coord(n) => write!(f, "R^{n}"),
            SpaceDesc::Seq(tag) => write!(f, "{tag}"),
        }
    }
}

/// An element of either kind of space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Element {
    Vector(RatVec),
    Sequence(EpSeq),
}

impl Element {
    pub fn as_vector(&self) -> Option<&RatVec> {
        match self {
            Element::Vector(v) => Some(v),
            Element::Sequence(_) => None,
        }
    }

    pub fn as_sequence(&self) -> Option<&EpSeq> {
        match self {
            Element::Sequence(s) => Some(s),
            Element::Vector(_) => None,
        }
    }

    fn mismatch() -> Error {
        Error::PreconditionViolated("vector and sequence elements mixed".into())
    }

    fn zip(
        &self,
        other: &Element,
        fv: impl Fn(&RatVec, &RatVec) -> Result<RatVec>,
        fs: impl Fn(&EpSeq, &EpSeq) -> EpSeq,
    ) -> Result<Element> {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) => Ok(Element::Vector(fv(a, b)?)),
            (Element::Sequence(a), Element::Sequence(b)) => Ok(Element::Sequence(fs(a, b))),
            _ => Err(Self::mismatch()),
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.zip(other, |a, b| a.add(b), |a, b| a.add(b))
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.zip(other, |a, b| a.sub(b), |a, b| a.sub(b))
    }

    pub fn sup(&self, other: &Element) -> Result<Element> {
        self.zip(other, crate::fdlat::sup, |a, b| a.sup(b))
    }

    pub fn inf(&self, other: &Element) -> Result<Element> {
        self.zip(other, crate::fdlat::inf, |a, b| a.inf(b))
    }

    pub fn abs(&self) -> Element {
        match self {
            Element::Vector(v) => Element::Vector(crate::fdlat::abs(v)),
            Element::Sequence(s) => Element::Sequence(s.abs()),
        }
    }

    pub fn scale(&self, c: &Rat) -> Element {
        match self {
            Element::Vector(v) => Element::Vector(v.scale(c)),
            Element::Sequence(s) => Element::Sequence(s.scale(c)),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Vector(v) => v.is_zero(),
            Element::Sequence(s) => s.is_zero(),
        }
    }

    pub fn is_nonnegative(&self) -> bool {
        match self {
            Element::Vector(v) => v.is_nonnegative(),
            Element::Sequence(s) => s.is_nonnegative(),
        }
    }

    pub fn le(&self, other: &Element) -> Result<bool> {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) => a.le(b),
            (Element::Sequence(a), Element::Sequence(b)) => Ok(a.le(b)),
            _ => Err(Self::mismatch()),
        }
    }

    /// The first `n` coordinates (vectors are padded with zeros).
    pub fn head(&self, n: usize) -> RatVec {
        match self {
            Element::Vector(v) => {
                RatVec::new((0..n).map(|k| v.entries().get(k).cloned().unwrap_or_else(Rat::zero)).collect())
            }
            Element::Sequence(s) => RatVec::new(s.head(n)),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Vector(v) => write!(f, "{v}"),
            Element::Sequence(s) => write!(f, "{s}"),
        }
    }
}

/// Built-in maps acting on eventually periodic sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SequenceMap {
    /// The pair-averaging map from index `i` to index `j`.
    Averaging { i: usize, j: usize },
    /// Pair-average the whole tail from coordinate `i` on.
    PairAverage { i: usize },
    /// Inclusion of one sequence space into a larger one.
    Identity,
    /// `ℝ^dim` into sequences: `x` followed by zeros, or by `x_dim` repeated.
    Embed { dim: usize, repeat_last: bool },
    /// Apply the listed maps left to right.
    Chain(Vec<SequenceMap>),
}

impl SequenceMap {
    fn apply(&self, x: &Element) -> Result<Element> {
        match (self, x) {
            (SequenceMap::Averaging { i, j }, Element::Sequence(s)) => {
                Ok(Element::Sequence(averaging_map(*i, *j, s)?))
            }
            (SequenceMap::PairAverage { i }, Element::Sequence(s)) => Ok(Element::Sequence(xprime(*i, s)?)),
            (SequenceMap::Identity, Element::Sequence(s)) => Ok(Element::Sequence(s.clone())),
            (SequenceMap::Embed { dim, repeat_last }, Element::Vector(v)) => {
                if v.dim() != *dim {
                    return Err(Error::DimensionMismatch { expected: *dim, found: v.dim() });
                }
                Ok(Element::Sequence(embed(v, *repeat_last)))
            }
            (SequenceMap::Chain(maps), x) => maps.iter().try_fold(x.clone(), |acc, m| m.apply(&acc)),
            _ => Err(Element::mismatch()),
        }
    }

    /// Matrix giving output coordinates `1..=n` from the first `m` input
    /// coordinates, where `m` is the column count. Exact: no other input
    /// coordinate influences these outputs.
    pub fn window(&self, n: usize) -> Result<RatMat> {
        match self {
            SequenceMap::Averaging { i, j } => {
                let rows = n.max(j - 1);
                let full = averaging_matrix(*i, *j, rows + (j - i))?;
                Ok(first_rows(&full, n))
            }
            SequenceMap::PairAverage { i } => {
                let keep = (i - 1).min(n);
                let pairs = n - keep;
                let cols = keep + 2 * pairs;
                let mut m = RatMat::zeros(n, cols);
                for r in 0..keep {
                    m.set(r, r, Rat::one());
                }
                let half = Rat::new(1.into(), 2.into());
                for t in 0..pairs {
                    m.set(keep + t, keep + 2 * t, half.clone());
                    m.set(keep + t, keep + 2 * t + 1, half.clone());
                }
                Ok(m)
            }
            SequenceMap::Identity => Ok(RatMat::identity(n)),
            SequenceMap::Embed { dim, repeat_last } => {
                let mut m = RatMat::zeros(n, *dim);
                for r in 0..n {
                    if r < *dim {
                        m.set(r, r, Rat::one());
                    } else if *repeat_last && *dim > 0 {
                        m.set(r, dim - 1, Rat::one());
                    }
                }
                Ok(m)
            }
            SequenceMap::Chain(maps) => {
                let mut acc: Option<RatMat> = None;
                let mut rows = n;
                for map in maps.iter().rev() {
                    let w = map.window(rows)?;
                    rows = w.cols();
                    acc = Some(match acc {
                        None => w,
                        Some(a) => a.mul(&w)?,
                    });
                }
                Ok(acc.unwrap_or_else(|| RatMat::identity(n)))
            }
        }
    }

    /// Every built-in transformer has nonnegative coefficients.
    pub fn has_nonnegative_coefficients(&self) -> bool {
        true
    }

    fn name(&self) -> String {
        match self {
            SequenceMap::Averaging { i, j } => format!("averaging({i},{j})"),
            SequenceMap::PairAverage { i } => format!("pair_average({i})"),
            SequenceMap::Identity => "inclusion".into(),
            SequenceMap::Embed { dim, repeat_last } => {
                format!("embed({dim},{})", if *repeat_last { "constant tail" } else { "zero tail" })
            }
            SequenceMap::Chain(maps) => maps.iter().map(|m| m.name()).collect::<Vec<_>>().join(" ; "),
        }
    }
}

fn first_rows(m: &RatMat, n: usize) -> RatMat {
    let rows = (0..n).map(|r| m.row(r).into_entries()).collect();
    RatMat::from_rows(m.cols(), rows).expect("rows have the source width")
}

/// `x` as a sequence: followed by zeros, or with its last entry repeated.
pub fn embed(x: &RatVec, repeat_last: bool) -> EpSeq {
    let entries = x.entries().to_vec();
    match (repeat_last, entries.split_last()) {
        (true, Some((last, init))) => EpSeq::new(init.to_vec(), vec![last.clone()]).expect("nonempty period"),
        _ => EpSeq::finite(entries),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MapKind {
    Matrix(RatMat),
    Sequence(SequenceMap),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeMap {
    pub kind: MapKind,
    pub domain: SpaceDesc,
    pub codomain: SpaceDesc,
}

impl LatticeMap {
    pub fn matrix(m: RatMat) -> Self {
        LatticeMap {
            domain: SpaceDesc::Coord(m.cols()),
            codomain: SpaceDesc::Coord(m.rows()),
            kind: MapKind::Matrix(m),
        }
    }

    pub fn sequence(map: SequenceMap, domain: SpaceDesc, codomain: SpaceDesc) -> Self {
        LatticeMap {
            kind: MapKind::Sequence(map),
            domain,
            codomain,
        }
    }

    /// `φ_ji` on `ℓ^p` (or `ℓ^∞` for `p = 0`).
    pub fn averaging(i: usize, j: usize, tag: SpaceTag) -> Result<Self> {
        if i == 0 || j < i {
            return Err(Error::BadIndices { i, j });
        }
        Ok(Self::sequence(
            SequenceMap::Averaging { i, j },
            SpaceDesc::Seq(tag),
            SpaceDesc::Seq(tag),
        ))
    }

    pub fn as_matrix(&self) -> Option<&RatMat> {
        match &self.kind {
            MapKind::Matrix(m) => Some(m),
            MapKind::Sequence(_) => None,
        }
    }

    pub fn apply(&self, x: &Element) -> Result<Element> {
        match (&self.kind, x) {
            (MapKind::Matrix(m), Element::Vector(v)) => Ok(Element::Vector(m.apply(v)?)),
            (MapKind::Matrix(_), Element::Sequence(_)) => Err(Element::mismatch()),
            (MapKind::Sequence(s), x) => s.apply(x),
        }
    }

    /// Matrix of output coordinates `1..=n` in terms of the input coordinates
    /// they depend on. For matrices `n` is ignored.
    pub fn window(&self, n: usize) -> Result<RatMat> {
        match &self.kind {
            MapKind::Matrix(m) => Ok(m.clone()),
            MapKind::Sequence(s) => s.window(n),
        }
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            MapKind::Matrix(m) => format!("matrix {}x{}", m.rows(), m.cols()),
            MapKind::Sequence(s) => format!("{}: {} -> {}", s.name(), self.domain, self.codomain),
        }
    }

    pub fn to_file(&self) -> MapFile {
        match &self.kind {
            MapKind::Matrix(m) => MapFile::Matrix {
                entries: m.row_vecs().into_iter().map(|r| r.into_iter().map(RatString).collect()).collect(),
                domain: Some(m.cols()),
                codomain: Some(m.rows()),
            },
            MapKind::Sequence(SequenceMap::Averaging { i, j }) => MapFile::Averaging {
                i: *i,
                j: *j,
                p: match self.domain {
                    SpaceDesc::Seq(SpaceTag::Lp(p)) => NormIndex::Finite(p),
                    _ => NormIndex::Infinite,
                },
            },
            MapKind::Sequence(other) => MapFile::Builtin {
                name: other.name(),
                domain: self.domain,
                codomain: self.codomain,
            },
        }
    }
}

/// `S ∘ T`.
pub fn compose(s: &LatticeMap, t: &LatticeMap) -> Result<LatticeMap> {
    if t.codomain != s.domain {
        let dims = |d: SpaceDesc| match d {
            SpaceDesc::Coord(n) => n,
            SpaceDesc::Seq(_) => 0,
        };
        return Err(Error::DimensionMismatch {
            expected: dims(s.domain),
            found: dims(t.codomain),
        });
    }
    let kind = match (&s.kind, &t.kind) {
        (MapKind::Matrix(a), MapKind::Matrix(b)) => MapKind::Matrix(a.mul(b)?),
        (MapKind::Sequence(SequenceMap::Averaging { i: j2, j: k }), MapKind::Sequence(SequenceMap::Averaging { i, j }))
            if j == j2 =>
        {
            MapKind::Sequence(SequenceMap::Averaging { i: *i, j: *k })
        }
        (MapKind::Sequence(a), MapKind::Sequence(b)) => {
            let mut maps = match b {
                SequenceMap::Chain(v) => v.clone(),
                other => vec![other.clone()],
            };
            match a {
                SequenceMap::Chain(v) => maps.extend(v.iter().cloned()),
                other => maps.push(other.clone()),
            }
            MapKind::Sequence(SequenceMap::Chain(maps))
        }
        _ => {
            return Err(Error::PreconditionViolated(
                "composition of a matrix with a sequence map".into(),
            ))
        }
    };
    Ok(LatticeMap {
        kind,
        domain: t.domain,
        codomain: s.codomain,
    })
}

/// The adjoint as a transpose; finite-dimensional duals are identified with the spaces.
pub fn adjoint(t: &LatticeMap) -> Result<LatticeMap> {
    match &t.kind {
        MapKind::Matrix(m) => Ok(LatticeMap::matrix(m.transpose())),
        MapKind::Sequence(_) => Err(Error::NotMatrixKind),
    }
}

/// `1`, `2`, or `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormIndex {
    Finite(u32),
    Infinite,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum NormIndexWire {
    Number(u32),
    Text(String),
}

impl Serialize for NormIndex {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NormIndex::Finite(p) => NormIndexWire::Number(*p),
            NormIndex::Infinite => NormIndexWire::Text("inf".into()),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for NormIndex {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        match NormIndexWire::deserialize(deserializer)? {
            NormIndexWire::Number(p) => Ok(NormIndex::Finite(p)),
            NormIndexWire::Text(t) if t == "inf" => Ok(NormIndex::Infinite),
            NormIndexWire::Text(t) => Err(serde::de::Error::custom(format!("expected 1, 2 or \"inf\", got {t:?}"))),
        }
    }
}

impl NormIndex {
    pub fn space(self) -> SpaceTag {
        match self {
            NormIndex::Finite(p) => SpaceTag::Lp(p),
            NormIndex::Infinite => SpaceTag::Linf,
        }
    }
}

/// On-disk description of a map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum MapFile {
    Matrix {
        entries: Vec<Vec<RatString>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        domain: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        codomain: Option<usize>,
    },
    Averaging {
        i: usize,
        j: usize,
        #[serde(default = "default_p")]
        p: NormIndex,
    },
    PairAverage {
        i: usize,
        #[serde(default = "default_p")]
        p: NormIndex,
    },
    /// `ℝ^dim` placed at the start of a sequence space.
    Embed {
        dim: usize,
        #[serde(default)]
        repeat_last: bool,
        codomain: SpaceDesc,
    },
    Inclusion {
        domain: SpaceDesc,
        codomain: SpaceDesc,
    },
    /// Written for reports only.
    Builtin {
        name: String,
        domain: SpaceDesc,
        codomain: SpaceDesc,
    },
}

fn default_p() -> NormIndex {
    NormIndex::Finite(1)
}

impl MapFile {
    pub fn into_map(self) -> Result<LatticeMap> {
        match self {
            MapFile::Matrix { entries, domain, codomain } => {
                let cols = match (entries.first(), domain) {
                    (Some(r), _) => r.len(),
                    (None, Some(d)) => d,
                    (None, None) => 0,
                };
                let rows: Vec<Vec<Rat>> = entries.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
                let m = RatMat::from_rows(cols, rows)?;
                if let Some(d) = domain {
                    if d != m.cols() {
                        return Err(Error::DimensionMismatch { expected: d, found: m.cols() });
                    }
                }
                if let Some(c) = codomain {
                    if c != m.rows() {
                        return Err(Error::DimensionMismatch { expected: c, found: m.rows() });
                    }
                }
                Ok(LatticeMap::matrix(m))
            }
            MapFile::Averaging { i, j, p } => {
                let tag = p.space();
                if let SpaceTag::Lp(q) = tag {
                    if q == 0 {
                        return Err(Error::UnsupportedNorm(q));
                    }
                }
                LatticeMap::averaging(i, j, tag)
            }
            MapFile::PairAverage { i, p } => {
                if i == 0 {
                    return Err(Error::BadIndices { i, j: i });
                }
                Ok(LatticeMap::sequence(
                    SequenceMap::PairAverage { i },
                    SpaceDesc::Seq(p.space()),
                    SpaceDesc::Seq(p.space()),
                ))
            }
            MapFile::Embed { dim, repeat_last, codomain } => Ok(LatticeMap::sequence(
                SequenceMap::Embed { dim, repeat_last },
                SpaceDesc::Coord(dim),
                codomain,
            )),
            MapFile::Inclusion { domain, codomain } => match (domain, codomain) {
                (SpaceDesc::Coord(a), SpaceDesc::Coord(b)) => {
                    let mut m = RatMat::zeros(b, a);
                    for k in 0..a.min(b) {
                        m.set(k, k, Rat::one());
                    }
                    Ok(LatticeMap::matrix(m))
                }
                (SpaceDesc::Seq(_), SpaceDesc::Seq(_)) => Ok(LatticeMap::sequence(SequenceMap::Identity, domain, codomain)),
                _ => Err(Error::PreconditionViolated("inclusion between different kinds of space".into())),
            },
            MapFile::Builtin { name, .. } => Err(Error::Parse(format!("cannot rebuild map {name:?} from a report"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::{int, rat};
    use crate::sampling::Sampler;

    #[test]
    fn windows_agree_with_application() {
        let mut sampler = Sampler::new(41);
        let maps = [
            SequenceMap::Averaging { i: 2, j: 4 },
            SequenceMap::Averaging { i: 1, j: 1 },
            SequenceMap::PairAverage { i: 3 },
            SequenceMap::Identity,
            SequenceMap::Chain(vec![SequenceMap::Averaging { i: 1, j: 2 }, SequenceMap::PairAverage { i: 2 }]),
        ];
        for map in &maps {
            for _ in 0..40 {
                let s = sampler.eventually_periodic(5, 3, false);
                let n = sampler.between(1, 9);
                let w = map.window(n).unwrap();
                let input = RatVec::new(s.head(w.cols()));
                let out = map.apply(&Element::Sequence(s)).unwrap();
                assert_eq!(w.apply(&input).unwrap(), out.head(n), "{map:?} n={n}");
            }
        }
        let embed = SequenceMap::Embed { dim: 2, repeat_last: true };
        let w = embed.window(4).unwrap();
        assert_eq!(w, RatMat::from_int_rows(&[&[1, 0], &[0, 1], &[0, 1], &[0, 1]]));
        let out = embed.apply(&Element::Vector(RatVec::from_ints(&[3, 5]))).unwrap();
        assert_eq!(out, Element::Sequence(EpSeq::new(vec![int(3)], vec![int(5)]).unwrap()));
    }

    #[test]
    fn compose_examples() {
        let a21 = LatticeMap::averaging(1, 2, SpaceTag::Lp(1)).unwrap();
        let a32 = LatticeMap::averaging(2, 3, SpaceTag::Lp(1)).unwrap();
        let a31 = LatticeMap::averaging(1, 3, SpaceTag::Lp(1)).unwrap();
        assert_eq!(compose(&a32, &a21).unwrap(), a31);
        // truncations compose the same way
        let m21 = averaging_matrix(1, 2, 6).unwrap();
        let m32 = averaging_matrix(2, 3, 5).unwrap();
        assert_eq!(m32.mul(&m21).unwrap(), averaging_matrix(1, 3, 6).unwrap());
        let t = LatticeMap::matrix(RatMat::from_rows(2, vec![vec![rat(1, 2), int(3)], vec![int(0), int(-1)]]).unwrap());
        let id = LatticeMap::matrix(RatMat::identity(2));
        assert_eq!(compose(&id, &t).unwrap(), t);
        let wide = LatticeMap::matrix(RatMat::identity(3));
        assert!(matches!(compose(&wide, &t), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn adjoint_examples() {
        let t = LatticeMap::matrix(RatMat::from_int_rows(&[&[1, 2], &[0, 1]]));
        let ta = adjoint(&t).unwrap();
        assert_eq!(ta.as_matrix().unwrap(), &RatMat::from_int_rows(&[&[1, 0], &[2, 1]]));
        assert_eq!(adjoint(&ta).unwrap(), t);
        let d = LatticeMap::matrix(RatMat::diagonal(&[int(2), rat(1, 3)]));
        assert_eq!(adjoint(&d).unwrap(), d);
        let a = LatticeMap::averaging(1, 2, SpaceTag::Lp(1)).unwrap();
        assert_eq!(adjoint(&a), Err(Error::NotMatrixKind));
    }

    #[test]
    fn map_files() {
        let m: MapFile = serde_json::from_str(
            r#"{"kind":"matrix","entries":[["1/2","1/2",0,0],[0,0,1,0],[0,0,0,1]],"domain":4,"codomain":3}"#,
        )
        .unwrap();
        let map = m.into_map().unwrap();
        assert_eq!(map.as_matrix().unwrap(), &averaging_matrix(1, 2, 4).unwrap());
        let a: MapFile = serde_json::from_str(r#"{"kind":"averaging","i":1,"j":2,"p":"inf"}"#).unwrap();
        assert_eq!(a.into_map().unwrap().domain, SpaceDesc::Seq(SpaceTag::Linf));
        let bad: MapFile = serde_json::from_str(r#"{"kind":"matrix","entries":[[1],[1,2]]}"#).unwrap();
        assert!(bad.into_map().is_err());
        let round = serde_json::to_string(&map.to_file()).unwrap();
        assert_eq!(serde_json::from_str::<MapFile>(&round).unwrap().into_map().unwrap(), map);
    }
}
