//! Direct systems over finite directed posets and over the natural numbers.
//!
//! Indices are 1-based throughout. On a chain, `map(i, j)` is `φ_ji`.

use std::collections::{BTreeMap, VecDeque};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::CategoryTag;
use crate::error::{Error, Result};
use crate::latmaps::{compose, LatticeMap, NormIndex, SequenceMap, SpaceDesc};
use crate::ratcore::rat::RatString;
use crate::ratcore::{Rat, RatMat};
use crate::seqlat::{averaging_matrix, SpaceTag};

/// Rule producing the objects and maps of a chain indexed by `1, 2, 3, ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChainGenerator {
    /// `ℓ^p` at every index, with the pair-averaging maps.
    Averaging { p: NormIndex },
    /// `c00` at every index, with the pair-averaging maps.
    AveragingC00,
    /// `ℝ^(start + i - 1)` at index `i`, each included in the next.
    CoordinateInclusions {
        #[serde(default = "one")]
        start: usize,
    },
    /// The sequences constant from coordinate `i` on, as `ℝ^i` with the
    /// last coordinate standing for the constant tail.
    EventuallyConstant,
    /// `ℝ^dim` at every index, with zero maps between distinct indices.
    Zero { dim: usize },
}

fn one() -> usize {
    1
}

impl ChainGenerator {
    /// The sequence space at every index of an averaging chain.
    pub fn averaging_space(&self) -> Option<SpaceTag> {
        match self {
            ChainGenerator::Averaging { p } => Some(p.space()),
            ChainGenerator::AveragingC00 => Some(SpaceTag::C00),
            _ => None,
        }
    }

    pub fn is_averaging(&self) -> bool {
        self.averaging_space().is_some()
    }
}

/// A finite poset given by its cover relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    size: usize,
    hasse: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
}

impl FinitePoset {
    /// Elements `1..=size`; `hasse` lists pairs `(i, j)` with `i < j`.
    pub fn new(size: usize, hasse: Vec<(usize, usize)>) -> Result<Self> {
        let mut leq = vec![vec![false; size]; size];
        for (k, row) in leq.iter_mut().enumerate() {
            row[k] = true;
        }
        for &(i, j) in &hasse {
            if i == 0 || j == 0 || i > size || j > size || i == j {
                return Err(Error::BadIndices { i, j });
            }
            leq[i - 1][j - 1] = true;
        }
        // transitive closure
        for k in 0..size {
            for i in 0..size {
                if leq[i][k] {
                    for j in 0..size {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..size {
            for j in 0..size {
                if i != j && leq[i][j] && leq[j][i] {
                    return Err(Error::PreconditionViolated(format!(
                        "cover relation has a cycle through {} and {}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(FinitePoset { size, hasse, leq })
    }

    /// Chain `1 < 2 < ... < size`.
    pub fn chain(size: usize) -> Self {
        Self::new(size, (1..size).map(|i| (i, i + 1)).collect()).expect("a chain is a poset")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn hasse(&self) -> &[(usize, usize)] {
        &self.hasse
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        i >= 1 && j >= 1 && i <= self.size && j <= self.size && self.leq[i - 1][j - 1]
    }

    pub fn upper_bounds(&self, i: usize, j: usize) -> Vec<usize> {
        (1..=self.size).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect()
    }

    pub fn is_directed(&self) -> bool {
        self.size > 0
            && (1..=self.size).all(|i| (1..=self.size).all(|j| !self.upper_bounds(i, j).is_empty()))
    }

    /// Greatest element, if any.
    pub fn top(&self) -> Option<usize> {
        (1..=self.size).find(|&k| (1..=self.size).all(|i| self.leq(i, k)))
    }

    /// A fixed path of cover relations from `i` up to `j`.
    fn path(&self, i: usize, j: usize) -> Option<Vec<usize>> {
        let mut prev = vec![None; self.size + 1];
        let mut queue = VecDeque::from([i]);
        let mut seen = vec![false; self.size + 1];
        seen[i] = true;
        while let Some(v) = queue.pop_front() {
            if v == j {
                let mut out = vec![j];
                let mut cur = j;
                while let Some(p) = prev[cur] {
                    out.push(p);
                    cur = p;
                }
                out.reverse();
                return Some(out);
            }
            let mut next: Vec<usize> = self.hasse.iter().filter(|e| e.0 == v).map(|e| e.1).collect();
            next.sort_unstable();
            for w in next {
                if !seen[w] {
                    seen[w] = true;
                    prev[w] = Some(v);
                    queue.push_back(w);
                }
            }
        }
        None
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IndexKind {
    Chain(ChainGenerator),
    Finite {
        poset: FinitePoset,
        dims: Vec<usize>,
        edges: BTreeMap<(usize, usize), RatMat>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectSystem {
    pub category: CategoryTag,
    pub index: IndexKind,
    /// Norm on finite-dimensional objects: ℓ¹, ℓ², or a sup norm.
    pub norm: SpaceTag,
    /// Default depth for validation of chains.
    pub depth_hint: usize,
}

impl DirectSystem {
    pub fn chain(category: CategoryTag, generator: ChainGenerator) -> Self {
        let norm = match &generator {
            ChainGenerator::Averaging { p } => p.space(),
            _ => SpaceTag::Linf,
        };
        DirectSystem {
            category,
            index: IndexKind::Chain(generator),
            norm,
            depth_hint: 8,
        }
    }

    /// Finite directed system; edges are given on cover relations.
    pub fn finite(
        category: CategoryTag,
        poset: FinitePoset,
        dims: Vec<usize>,
        edges: BTreeMap<(usize, usize), RatMat>,
        norm: SpaceTag,
    ) -> Result<Self> {
        if !poset.is_directed() {
            return Err(Error::PreconditionViolated("index poset is not directed".into()));
        }
        if dims.len() != poset.size() {
            return Err(Error::DimensionMismatch {
                expected: poset.size(),
                found: dims.len(),
            });
        }
        for &(i, j) in poset.hasse() {
            let m = edges.get(&(i, j)).ok_or(Error::BadIndices { i, j })?;
            if m.cols() != dims[i - 1] || m.rows() != dims[j - 1] {
                return Err(Error::DimensionMismatch {
                    expected: dims[j - 1],
                    found: m.rows(),
                });
            }
        }
        if let Some(&(i, j)) = edges.keys().find(|e| !poset.hasse().contains(e)) {
            return Err(Error::BadIndices { i, j });
        }
        let depth_hint = poset.size();
        Ok(DirectSystem {
            category,
            index: IndexKind::Finite { poset, dims, edges },
            norm,
            depth_hint,
        })
    }

    /// Finite chain `1 < 2 < ... < n` with the given step matrices.
    pub fn finite_chain(category: CategoryTag, steps: Vec<RatMat>, norm: SpaceTag) -> Result<Self> {
        let n = steps.len() + 1;
        let mut dims = Vec::with_capacity(n);
        match steps.first() {
            Some(m) => dims.push(m.cols()),
            None => return Err(Error::PreconditionViolated("need at least one step".into())),
        }
        let mut edges = BTreeMap::new();
        for (k, m) in steps.into_iter().enumerate() {
            dims.push(m.rows());
            edges.insert((k + 1, k + 2), m);
        }
        Self::finite(category, FinitePoset::chain(n), dims, edges, norm)
    }

    pub fn is_chain(&self) -> bool {
        matches!(self.index, IndexKind::Chain(_))
    }

    pub fn generator(&self) -> Option<&ChainGenerator> {
        match &self.index {
            IndexKind::Chain(g) => Some(g),
            IndexKind::Finite { .. } => None,
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        match &self.index {
            IndexKind::Chain(_) => i >= 1,
            IndexKind::Finite { poset, .. } => i >= 1 && i <= poset.size(),
        }
    }

    fn check(&self, i: usize) -> Result<()> {
        if self.contains(i) {
            Ok(())
        } else {
            Err(Error::UnknownIndex { index: i })
        }
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        match &self.index {
            IndexKind::Chain(_) => i >= 1 && i <= j,
            IndexKind::Finite { poset, .. } => poset.leq(i, j),
        }
    }

    /// Indices considered up to `depth`: `1..=depth` on a chain, everything otherwise.
    pub fn indices(&self, depth: usize) -> Vec<usize> {
        match &self.index {
            IndexKind::Chain(_) => (1..=depth).collect(),
            IndexKind::Finite { poset, .. } => (1..=poset.size()).collect(),
        }
    }

    /// Generating edges among the indices up to `depth`.
    pub fn generating_edges(&self, depth: usize) -> Vec<(usize, usize)> {
        match &self.index {
            IndexKind::Chain(_) => (1..depth).map(|i| (i, i + 1)).collect(),
            IndexKind::Finite { poset, .. } => poset.hasse().to_vec(),
        }
    }

    /// Least-labelled common upper bound.
    pub fn upper_bound(&self, i: usize, j: usize) -> Result<usize> {
        self.check(i)?;
        self.check(j)?;
        match &self.index {
            IndexKind::Chain(_) => Ok(i.max(j)),
            IndexKind::Finite { poset, .. } => {
                poset.upper_bounds(i, j).first().copied().ok_or(Error::NoCommonIndex(i, j))
            }
        }
    }

    /// All indices `k >= i` up to `limit` (chains) in increasing order.
    pub fn above(&self, i: usize, limit: usize) -> Vec<usize> {
        match &self.index {
            IndexKind::Chain(_) => (i..=limit.max(i)).collect(),
            IndexKind::Finite { poset, .. } => (1..=poset.size()).filter(|&k| poset.leq(i, k)).collect(),
        }
    }

    /// Greatest index, if the index set has one.
    pub fn largest(&self) -> Option<usize> {
        match &self.index {
            IndexKind::Chain(_) => None,
            IndexKind::Finite { poset, .. } => poset.top(),
        }
    }

    pub fn object(&self, i: usize) -> Result<SpaceDesc> {
        self.check(i)?;
        Ok(match &self.index {
            IndexKind::Chain(g) => match g {
                ChainGenerator::Averaging { p } => SpaceDesc::Seq(p.space()),
                ChainGenerator::AveragingC00 => SpaceDesc::Seq(SpaceTag::C00),
                ChainGenerator::CoordinateInclusions { start } => SpaceDesc::Coord(start + i - 1),
                ChainGenerator::EventuallyConstant => SpaceDesc::Coord(i),
                ChainGenerator::Zero { dim } => SpaceDesc::Coord(*dim),
            },
            IndexKind::Finite { dims, .. } => SpaceDesc::Coord(dims[i - 1]),
        })
    }

    /// `φ_ji` for `i <= j`.
    pub fn map(&self, i: usize, j: usize) -> Result<LatticeMap> {
        self.check(i)?;
        self.check(j)?;
        if !self.leq(i, j) {
            return Err(Error::BadIndices { i, j });
        }
        match &self.index {
            IndexKind::Chain(g) => Ok(match g {
                ChainGenerator::Averaging { p } => LatticeMap::averaging(i, j, p.space())?,
                ChainGenerator::AveragingC00 => LatticeMap::averaging(i, j, SpaceTag::C00)?,
                ChainGenerator::CoordinateInclusions { start } => {
                    LatticeMap::matrix(inclusion_matrix(start + i - 1, start + j - 1))
                }
                ChainGenerator::EventuallyConstant => LatticeMap::matrix(constant_tail_inclusion(i, j)),
                ChainGenerator::Zero { dim } => {
                    if i == j {
                        LatticeMap::matrix(RatMat::identity(*dim))
                    } else {
                        LatticeMap::matrix(RatMat::zeros(*dim, *dim))
                    }
                }
            }),
            IndexKind::Finite { poset, dims, edges } => {
                let path = poset.path(i, j).ok_or(Error::BadIndices { i, j })?;
                let mut acc = LatticeMap::matrix(RatMat::identity(dims[i - 1]));
                for w in path.windows(2) {
                    let step = LatticeMap::matrix(edges[&(w[0], w[1])].clone());
                    acc = compose(&step, &acc)?;
                }
                Ok(acc)
            }
        }
    }

    /// `φ_ji` as a matrix. Averaging maps are cut to the first `n` input
    /// coordinates, which determine the first `n - (j - i)` outputs exactly.
    pub fn truncated_map(&self, i: usize, j: usize, n: usize) -> Result<RatMat> {
        match self.generator() {
            Some(g) if g.is_averaging() => {
                self.check(i)?;
                if j < i {
                    return Err(Error::BadIndices { i, j });
                }
                averaging_matrix(i, j, n)
            }
            _ => Ok(self
                .map(i, j)?
                .as_matrix()
                .expect("finite-dimensional objects carry matrices")
                .clone()),
        }
    }

    /// Width used for truncating sequence objects when checking up to `depth`.
    pub fn truncation_width(&self, depth: usize) -> usize {
        2 * depth + 2
    }

    /// The Hasse edge map `(i, j)` as given, for finite systems.
    pub fn edge(&self, i: usize, j: usize) -> Option<&RatMat> {
        match &self.index {
            IndexKind::Finite { edges, .. } => edges.get(&(i, j)),
            IndexKind::Chain(_) => None,
        }
    }
}

/// `ℝ^a` into `ℝ^b` as the first coordinates.
pub fn inclusion_matrix(a: usize, b: usize) -> RatMat {
    let mut m = RatMat::zeros(b, a);
    for k in 0..a.min(b) {
        m.set(k, k, Rat::one());
    }
    m
}

/// `c_i` into `c_j` in tail coordinates: the constant tail of length
/// `j - i + 1` copies coordinate `i`.
pub fn constant_tail_inclusion(i: usize, j: usize) -> RatMat {
    let mut m = RatMat::zeros(j, i);
    for r in 0..j {
        m.set(r, r.min(i - 1), Rat::one());
    }
    m
}

/// Cone legs into sequence spaces for the chain generators.
pub fn model_leg(sys: &DirectSystem, i: usize) -> Result<LatticeMap> {
    match sys.generator() {
        Some(g) if g.is_averaging() => {
            let space = SpaceDesc::Seq(g.averaging_space().expect("averaging chain"));
            Ok(LatticeMap::sequence(SequenceMap::PairAverage { i }, space, space))
        }
        Some(ChainGenerator::CoordinateInclusions { start }) => Ok(LatticeMap::sequence(
            SequenceMap::Embed {
                dim: start + i - 1,
                repeat_last: false,
            },
            SpaceDesc::Coord(start + i - 1),
            SpaceDesc::Seq(SpaceTag::C00),
        )),
        Some(ChainGenerator::EventuallyConstant) => Ok(LatticeMap::sequence(
            SequenceMap::Embed { dim: i, repeat_last: true },
            SpaceDesc::Coord(i),
            SpaceDesc::Seq(SpaceTag::C),
        )),
        _ => Err(Error::PreconditionViolated("system has no sequence model".into())),
    }
}

/// On-disk description of a system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub category: CategoryTag,
    pub index: IndexFile,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<ChainGenerator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub edges: Vec<EdgeFile>,
    /// `1`, `2`, or `"inf"`; defaults to the sup norm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub norm: Option<NormIndex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum IndexFile {
    NatChain {
        #[serde(default = "default_depth")]
        depth_hint: usize,
    },
    FinitePoset {
        size: usize,
        hasse: Vec<(usize, usize)>,
    },
}

fn default_depth() -> usize {
    8
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeFile {
    pub from: usize,
    pub to: usize,
    pub matrix: Vec<Vec<RatString>>,
}

impl SystemFile {
    pub fn into_system(self) -> Result<DirectSystem> {
        match self.index {
            IndexFile::NatChain { depth_hint } => {
                let generator = self
                    .generator
                    .ok_or_else(|| Error::Parse("nat_chain systems need a generator".into()))?;
                let mut sys = DirectSystem::chain(self.category, generator);
                if let Some(n) = self.norm {
                    if !sys.generator().is_some_and(ChainGenerator::is_averaging) {
                        sys.norm = n.space();
                    }
                }
                sys.depth_hint = depth_hint.max(1);
                Ok(sys)
            }
            IndexFile::FinitePoset { size, hasse } => {
                let poset = FinitePoset::new(size, hasse)?;
                let dims = self
                    .objects
                    .ok_or_else(|| Error::Parse("finite systems need object dimensions".into()))?;
                let mut edges = BTreeMap::new();
                for e in self.edges {
                    let cols = e.matrix.first().map(|r| r.len()).unwrap_or_else(|| {
                        dims.get(e.from.wrapping_sub(1)).copied().unwrap_or(0)
                    });
                    let rows = e.matrix.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
                    edges.insert((e.from, e.to), RatMat::from_rows(cols, rows)?);
                }
                let norm = self.norm.map(NormIndex::space).unwrap_or(SpaceTag::Linf);
                DirectSystem::finite(self.category, poset, dims, edges, norm)
            }
        }
    }

    pub fn from_system(sys: &DirectSystem) -> Self {
        let norm = match sys.norm {
            SpaceTag::Lp(p) => Some(NormIndex::Finite(p)),
            _ => None,
        };
        match &sys.index {
            IndexKind::Chain(g) => SystemFile {
                category: sys.category,
                index: IndexFile::NatChain {
                    depth_hint: sys.depth_hint,
                },
                generator: Some(g.clone()),
                objects: None,
                edges: Vec::new(),
                norm: if g.is_averaging() { None } else { norm },
            },
            IndexKind::Finite { poset, dims, edges } => SystemFile {
                category: sys.category,
                index: IndexFile::FinitePoset {
                    size: poset.size(),
                    hasse: poset.hasse().to_vec(),
                },
                generator: None,
                objects: Some(dims.clone()),
                edges: edges
                    .iter()
                    .map(|(&(from, to), m)| EdgeFile {
                        from,
                        to,
                        matrix: m.row_vecs().into_iter().map(|r| r.into_iter().map(RatString).collect()).collect(),
                    })
                    .collect(),
                norm,
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratcore::int;

    #[test]
    fn posets() {
        let diamond = FinitePoset::new(4, vec![(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap();
        assert!(diamond.is_directed());
        assert_eq!(diamond.top(), Some(4));
        assert_eq!(diamond.upper_bounds(2, 3), vec![4]);
        let vee = FinitePoset::new(3, vec![(1, 2), (1, 3)]).unwrap();
        assert!(!vee.is_directed());
        assert!(FinitePoset::new(2, vec![(1, 2), (2, 1)]).is_err());
        let sys = DirectSystem::finite(
            CategoryTag::VlLh,
            vee,
            vec![1, 1, 1],
            BTreeMap::from([
                ((1, 2), RatMat::identity(1)),
                ((1, 3), RatMat::identity(1)),
            ]),
            SpaceTag::Linf,
        );
        assert!(matches!(sys, Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn chain_maps() {
        let sys = DirectSystem::chain(CategoryTag::VlIplh, ChainGenerator::CoordinateInclusions { start: 1 });
        assert_eq!(sys.object(3).unwrap(), SpaceDesc::Coord(3));
        assert_eq!(sys.map(1, 3).unwrap().as_matrix().unwrap(), &inclusion_matrix(1, 3));
        assert!(sys.map(3, 1).is_err());
        assert!(matches!(sys.object(0), Err(Error::UnknownIndex { index: 0 })));
        let c = constant_tail_inclusion(2, 4);
        assert_eq!(c, RatMat::from_int_rows(&[&[1, 0], &[0, 1], &[0, 1], &[0, 1]]));
    }

    #[test]
    fn finite_composites_follow_paths() {
        let steps = vec![averaging_matrix(1, 2, 4).unwrap(), averaging_matrix(2, 3, 3).unwrap()];
        let sys = DirectSystem::finite_chain(CategoryTag::VlIp, steps, SpaceTag::Lp(1)).unwrap();
        assert_eq!(sys.map(1, 3).unwrap().as_matrix().unwrap(), &averaging_matrix(1, 3, 4).unwrap());
        assert_eq!(sys.largest(), Some(3));
    }

    #[test]
    fn system_files() {
        let text = r#"{"category":"NL_IP","index":{"kind":"nat_chain","depth_hint":8},"generator":{"kind":"averaging","p":1}}"#;
        let file: SystemFile = serde_json::from_str(text).unwrap();
        let sys = file.into_system().unwrap();
        assert_eq!(sys.norm, SpaceTag::Lp(1));
        assert_eq!(serde_json::to_string(&SystemFile::from_system(&sys)).unwrap(), text);

        let text = r#"{"category":"VL_IPLH","index":{"kind":"finite_poset","size":2,"hasse":[[1,2]]},"objects":[1,2],"edges":[{"from":1,"to":2,"matrix":[["1"],["0"]]}]}"#;
        let sys = serde_json::from_str::<SystemFile>(text).unwrap().into_system().unwrap();
        assert_eq!(sys.map(1, 2).unwrap().as_matrix().unwrap(), &inclusion_matrix(1, 2));
        assert_eq!(*sys.edge(1, 2).unwrap().get(0, 0), int(1));
        let bad = r#"{"category":"VL_IPLH","index":{"kind":"finite_poset","size":2,"hasse":[[1,2]]},"objects":[1,3],"edges":[{"from":1,"to":2,"matrix":[["1"],["0"]]}]}"#;
        assert!(serde_json::from_str::<SystemFile>(bad).unwrap().into_system().is_err());
    }
}
