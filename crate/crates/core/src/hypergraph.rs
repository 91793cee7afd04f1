//! Hypergraphs on `[n]`, fractional weightings of their hyperedges, and the
//! standard collections (k-sets, singletons, consecutive runs).
//!
//! Edges are positional: a weighting assigns one value per entry of the edge
//! list, and repeated subsets are distinct entries that each count toward
//! vertex degrees.

use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::subset::{Subset, MAX_GROUND};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    edges: Vec<Subset>,
}

/// Nonnegative rational weight per hyperedge, aligned with the edge list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Weighting(Vec<Rational>);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeightingClass {
    Covering,
    Packing,
    Partition,
    Neither,
}

impl WeightingClass {
    pub fn is_covering(self) -> bool {
        matches!(self, WeightingClass::Covering | WeightingClass::Partition)
    }

    pub fn is_packing(self) -> bool {
        matches!(self, WeightingClass::Packing | WeightingClass::Partition)
    }

    pub fn is_partition(self) -> bool {
        self == WeightingClass::Partition
    }
}

/// The named collections used throughout: all k-sets, singletons,
/// consecutive runs and the leave-one-out sets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StandardCollection {
    KSets(usize),
    Singletons,
    /// `{[j, min(j+k-1, n)] : j in [n]}`, truncated at the right boundary.
    Consecutive(usize),
    AllMinusOne,
}

/// One class of the canonical split of a quasiregular hypergraph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularPart {
    pub degree: usize,
    pub vertices: Subset,
    /// Positions in the parent edge list.
    pub edge_positions: Vec<usize>,
}

/// Both sides of the fractional additivity comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalSums {
    /// `sum_s w(s) * sum_{i in s} a_i`
    pub weighted: Rational,
    /// `sum_i a_i`
    pub total: Rational,
    pub class: WeightingClass,
}

impl FractionalSums {
    /// Whether the inequality implied by the weighting class holds.
    pub fn holds(&self) -> bool {
        match self.class {
            WeightingClass::Partition => self.weighted == self.total,
            WeightingClass::Covering => self.weighted >= self.total,
            WeightingClass::Packing => self.weighted <= self.total,
            WeightingClass::Neither => true,
        }
    }
}

impl Weighting {
    pub fn new(values: Vec<Rational>) -> Result<Self> {
        if let Some(edge) = values.iter().position(Signed::is_negative) {
            return Err(Error::NegativeWeight { edge: edge + 1 });
        }
        Ok(Weighting(values))
    }

    pub fn uniform(len: usize, value: Rational) -> Result<Self> {
        Self::new(vec![value; len])
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total_weight(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, w| acc + w)
    }

    pub fn into_values(self) -> Vec<Rational> {
        self.0
    }
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Subset>) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND });
        }
        let full = Subset::full(n);
        for (pos, edge) in edges.iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::EmptyEdge { edge: pos + 1 });
            }
            if !edge.is_subset_of(full) {
                let index = edge.difference(full).first().unwrap_or(0) + 1;
                return Err(Error::IndexOutOfRange { index, n });
            }
        }
        Ok(Hypergraph { n, edges })
    }

    /// Edges given as lists of 1-based indices.
    pub fn from_one_based(n: usize, edges: &[Vec<usize>]) -> Result<Self> {
        if n > MAX_GROUND {
            return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND });
        }
        let edges = edges
            .iter()
            .map(|e| Subset::from_one_based(e, n))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, edges)
    }

    pub fn standard(kind: StandardCollection, n: usize) -> Result<Self> {
        let check_k = |k: usize| if k == 0 || k > n { Err(Error::KOutOfRange { k, n }) } else { Ok(k) };
        let edges = match kind {
            StandardCollection::KSets(k) => Subset::k_subsets(n, check_k(k)?),
            StandardCollection::Singletons => Subset::k_subsets(n, check_k(1)?),
            StandardCollection::AllMinusOne => {
                if n < 2 {
                    return Err(Error::KOutOfRange { k: 0, n });
                }
                Subset::k_subsets(n, n - 1)
            }
            StandardCollection::Consecutive(k) => {
                let k = check_k(k)?;
                (0..n)
                    .map(|j| Subset::from_indices(j..(j + k).min(n)))
                    .collect()
            }
        };
        Self::new(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Subset] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Degree of the 1-based index `i`, counting repeated edges separately.
    pub fn degree(&self, i: usize) -> Result<usize> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, n: self.n });
        }
        Ok(self.degree0(i - 1))
    }

    pub(crate) fn degree0(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.contains(i)).count()
    }

    /// Degrees of all vertices, 0-based.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for e in &self.edges {
            for i in e.iter() {
                deg[i] += 1;
            }
        }
        deg
    }

    /// Fails with the first uncovered index, if any.
    pub fn require_full_coverage(&self) -> Result<()> {
        match self.degrees().iter().position(|&d| d == 0) {
            Some(i) => Err(Error::UncoveredIndex { index: i + 1 }),
            None => Ok(()),
        }
    }

    /// `(r_-(s), r_+(s))`: the smallest and largest degree inside `s`.
    pub fn min_max_degree_in(&self, s: Subset) -> Result<(usize, usize)> {
        self.min_max_with(&self.degrees(), s)
    }

    fn min_max_with(&self, degrees: &[usize], s: Subset) -> Result<(usize, usize)> {
        if s.is_empty() {
            return Err(Error::EmptyEdge { edge: 0 });
        }
        let mut lo = usize::MAX;
        let mut hi = 0;
        for i in s.iter() {
            if i >= self.n {
                return Err(Error::IndexOutOfRange { index: i + 1, n: self.n });
            }
            let d = degrees[i];
            if d == 0 {
                return Err(Error::UncoveredIndex { index: i + 1 });
            }
            lo = lo.min(d);
            hi = hi.max(d);
        }
        Ok((lo, hi))
    }

    /// Sum of weights of edges containing the 0-based vertex `i`.
    pub fn incident_weight(&self, w: &Weighting, i: usize) -> Rational {
        self.edges
            .iter()
            .zip(w.values())
            .filter(|(e, _)| e.contains(i))
            .fold(Rational::zero(), |acc, (_, v)| acc + v)
    }

    fn check_len(&self, w: &Weighting) -> Result<()> {
        if w.len() != self.edges.len() {
            return Err(Error::LengthMismatch { expected: self.edges.len(), found: w.len() });
        }
        Ok(())
    }

    pub fn classify(&self, w: &Weighting) -> Result<WeightingClass> {
        self.check_len(w)?;
        let one = Rational::one();
        let (mut covering, mut packing) = (true, true);
        for i in 0..self.n {
            let sum = self.incident_weight(w, i);
            covering &= sum >= one;
            packing &= sum <= one;
        }
        Ok(match (covering, packing) {
            (true, true) => WeightingClass::Partition,
            (true, false) => WeightingClass::Covering,
            (false, true) => WeightingClass::Packing,
            (false, false) => WeightingClass::Neither,
        })
    }

    fn require(&self, w: &Weighting, required: &'static str, ok: impl Fn(&Rational) -> bool) -> Result<()> {
        self.check_len(w)?;
        for i in 0..self.n {
            let sum = self.incident_weight(w, i);
            if !ok(&sum) {
                return Err(Error::Classification {
                    required,
                    found: self.classify(w)?,
                    index: i + 1,
                    incident: sum.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Fails with the first index whose incident weight is below 1.
    pub fn require_covering(&self, w: &Weighting) -> Result<()> {
        self.require(w, "fractional covering", |s| *s >= Rational::one())
    }

    /// Fails with the first index whose incident weight is above 1.
    pub fn require_packing(&self, w: &Weighting) -> Result<()> {
        self.require(w, "fractional packing", |s| *s <= Rational::one())
    }

    pub fn require_partition(&self, w: &Weighting) -> Result<()> {
        self.require(w, "fractional partition", |s| s.is_one())
    }

    /// Weight `1/r_-(s)` on each edge.
    pub fn degree_covering(&self) -> Result<Weighting> {
        self.degree_weighting(|(lo, _)| lo)
    }

    /// Weight `1/r_+(s)` on each edge.
    pub fn degree_packing(&self) -> Result<Weighting> {
        self.degree_weighting(|(_, hi)| hi)
    }

    fn degree_weighting(&self, pick: impl Fn((usize, usize)) -> usize) -> Result<Weighting> {
        self.require_full_coverage()?;
        let degrees = self.degrees();
        let values = self
            .edges
            .iter()
            .map(|&e| {
                let r = pick(self.min_max_with(&degrees, e)?);
                Ok(Rational::new(1.into(), r.into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Weighting::new(values)
    }

    /// `Some(r)` when every vertex has degree exactly `r`.
    pub fn regularity(&self) -> Option<usize> {
        let degrees = self.degrees();
        let r = degrees[0];
        degrees.iter().all(|&d| d == r).then_some(r)
    }

    pub fn is_quasiregular(&self) -> bool {
        self.first_irregular_vertex().is_none()
    }

    fn first_irregular_vertex(&self) -> Option<usize> {
        let degrees = self.degrees();
        self.edges.iter().find_map(|e| {
            let r = degrees[e.first()?];
            e.iter().find(|&i| degrees[i] != r)
        })
    }

    /// Splits a quasiregular hypergraph into regular pieces, one per distinct
    /// positive degree, listed in order of their smallest vertex.
    pub fn quasiregular_decomposition(&self) -> Result<Vec<RegularPart>> {
        if let Some(i) = self.first_irregular_vertex() {
            return Err(Error::NotQuasiregular { index: i + 1 });
        }
        let degrees = self.degrees();
        let mut parts: Vec<RegularPart> = Vec::new();
        for (i, &d) in degrees.iter().enumerate() {
            if d == 0 {
                continue;
            }
            match parts.iter_mut().find(|p| p.degree == d) {
                Some(p) => p.vertices = p.vertices.with(i),
                None => parts.push(RegularPart { degree: d, vertices: Subset::singleton(i), edge_positions: Vec::new() }),
            }
        }
        for (pos, e) in self.edges.iter().enumerate() {
            let d = degrees[e.first().expect("edges are nonempty")];
            let part = parts.iter_mut().find(|p| p.degree == d).expect("every edge vertex has a class");
            part.edge_positions.push(pos);
        }
        Ok(parts)
    }

    /// Sub-hypergraph made of the listed edge positions, on the same ground set.
    pub fn select(&self, positions: &[usize]) -> Hypergraph {
        Hypergraph { n: self.n, edges: positions.iter().map(|&p| self.edges[p]).collect() }
    }

    /// `{s^c : s in S}`, preserving order and multiplicity.
    pub fn complement(&self) -> Result<Hypergraph> {
        let full = Subset::full(self.n);
        if let Some(pos) = self.edges.iter().position(|&e| e == full) {
            return Err(Error::EdgeIsWholeSet { edge: pos + 1 });
        }
        Ok(Hypergraph { n: self.n, edges: self.edges.iter().map(|e| e.complement(self.n)).collect() })
    }

    /// The dual weighting `alpha(s) / (w(alpha) - 1)` on the complementary
    /// hypergraph. Coverings map to packings and vice versa.
    pub fn dual_weighting(&self, w: &Weighting) -> Result<Weighting> {
        self.check_len(w)?;
        let total = w.total_weight();
        if total <= Rational::one() {
            return Err(Error::TotalWeightTooSmall { total: total.to_string() });
        }
        let denom = total - Rational::one();
        Weighting::new(w.values().iter().map(|v| v / &denom).collect())
    }

    /// The incidence-transposed hypergraph: ground set is the edge list, and
    /// vertex `i` becomes the edge `{s : i in s}`.
    pub fn transpose(&self) -> Result<Hypergraph> {
        self.require_full_coverage()?;
        if self.edges.len() > MAX_GROUND {
            return Err(Error::GroundSetTooLarge { n: self.edges.len(), max: MAX_GROUND });
        }
        let edges = (0..self.n)
            .map(|i| Subset::from_indices(self.edges.iter().enumerate().filter(|(_, e)| e.contains(i)).map(|(p, _)| p)))
            .collect();
        Hypergraph::new(self.edges.len(), edges)
    }

    /// `sum_s w(s) * a_s` against `a_[n]` for a vector `a` indexed by vertex.
    ///
    /// Negative entries are only accepted for partitions, where equality holds
    /// regardless of sign.
    pub fn weighted_subset_sums(&self, a: &[Rational], w: &Weighting) -> Result<FractionalSums> {
        if a.len() != self.n {
            return Err(Error::LengthMismatch { expected: self.n, found: a.len() });
        }
        let class = self.classify(w)?;
        if !class.is_partition() {
            if let Some(i) = a.iter().position(Signed::is_negative) {
                return Err(Error::NegativeEntry { index: i + 1 });
            }
        }
        let weighted = self.edges.iter().zip(w.values()).fold(Rational::zero(), |acc, (e, v)| {
            let a_s = e.iter().fold(Rational::zero(), |s, i| s + &a[i]);
            acc + v * a_s
        });
        let total = a.iter().fold(Rational::zero(), |acc, x| acc + x);
        Ok(FractionalSums { weighted, total, class })
    }
}
