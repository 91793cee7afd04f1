//! Homomorphism and independent-set counts, exact and bounded.
//!
//! Bounds follow from applying the strong degree form to the entropy of a
//! uniformly random homomorphism, with vertices taken in decreasing-degree
//! order. `p(v)` is the number of neighbours of `v` that precede it.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest vertex count a [`Graph`] can hold.
pub const MAX_VERTICES: usize = 64;
/// Search-node budget for the exact counters.
pub const NODE_BUDGET: u64 = 100_000_000;
/// Largest source graph accepted by [`independent_sets_exact`].
pub const INDEPENDENT_SET_LIMIT: usize = 40;

/// A finite graph on vertices `0..n` (1-based at the API boundary), with
/// optional self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    loops: u64,
}

impl Graph {
    /// `edges` and `loops` use 1-based labels. Duplicate edges are rejected.
    pub fn new(n: usize, edges: &[(usize, usize)], loops: &[usize]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::GroundSetTooLarge { n, max: MAX_VERTICES });
        }
        let mut g = Graph { n, adj: alloc::vec![0; n], loops: 0 };
        let check = |v: usize| if v == 0 || v > n { Err(Error::IndexOutOfRange { index: v, n }) } else { Ok(v - 1) };
        for &(u, v) in edges {
            let (u, v) = (check(u)?, check(v)?);
            if u == v {
                return Err(Error::InvalidGraph(format!("edge {{{}, {}}} is a loop; list it under loops", u + 1, v + 1)));
            }
            if g.adj[u] >> v & 1 == 1 {
                return Err(Error::InvalidGraph(format!("duplicate edge {{{}, {}}}", u + 1, v + 1)));
            }
            g.adj[u] |= 1 << v;
            g.adj[v] |= 1 << u;
        }
        for &v in loops {
            let v = check(v)?;
            if g.loops >> v & 1 == 1 {
                return Err(Error::InvalidGraph(format!("duplicate loop at {}", v + 1)));
            }
            g.loops |= 1 << v;
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, &[], &[])
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidGraph(format!("a cycle needs at least 3 vertices, got {n}")));
        }
        let edges: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Self::new(n, &edges, &[])
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
        Self::new(n, &edges, &[])
    }

    /// `K_{a,b}` with parts `1..=a` and `a+1..=a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self> {
        let edges: Vec<_> = (1..=a).flat_map(|i| (a + 1..=a + b).map(move |j| (i, j))).collect();
        Self::new(a + b, &edges, &[])
    }

    /// Vertex 1 with a loop, joined to vertex 2. Homomorphisms into it are
    /// independent sets (the preimage of vertex 2).
    pub fn independent_set_gadget() -> Self {
        Self::new(2, &[(1, 2)], &[1]).expect("fixed graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbours of `v` (0-based) as a bitmask, not counting a loop.
    pub fn neighbours(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Neighbours of `v` with `v` itself included when it carries a loop.
    pub fn closed_adjacency(&self, v: usize) -> u64 {
        self.adj[v] | (self.loops & (1 << v))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.loops >> v & 1 == 1
    }

    pub fn loop_count(&self) -> usize {
        self.loops.count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as 1-based pairs `(u, v)` with `u < v`.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| (u + 1..self.n).filter(move |&v| self.adj[u] >> v & 1 == 1).map(move |v| (u + 1, v + 1))).collect()
    }

    pub fn loops(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_loop(v)).map(|v| v + 1).collect()
    }

    /// `Some(d)` when every vertex has degree `d`.
    pub fn regularity(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == d).then_some(d)
    }

    fn all_vertices(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }
}

/// Vertices sorted by decreasing degree, ties by ascending label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeOrdering {
    /// 0-based vertices, first to last.
    pub order: Vec<usize>,
    /// `p[v]`: neighbours of `v` placed before it.
    pub p: Vec<usize>,
}

pub fn degree_ordering(g: &Graph) -> DegreeOrdering {
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| (core::cmp::Reverse(g.degree(v)), v));
    let mut p = alloc::vec![0; g.n];
    let mut placed = 0u64;
    for &v in &order {
        p[v] = (g.adj[v] & placed).count_ones() as usize;
        placed |= 1 << v;
    }
    DegreeOrdering { order, p }
}

struct Budget {
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > NODE_BUDGET {
            return Err(Error::GuardExceeded { what: "search nodes", limit: NODE_BUDGET });
        }
        Ok(())
    }
}

/// `|Hom(G, F)|` by backtracking over `G` in degree order, restricting each
/// vertex to the common `F`-neighbourhood of its placed neighbours.
pub fn hom_count_exact(g: &Graph, f: &Graph) -> Result<u128> {
    if g.loops != 0 {
        return Err(Error::InvalidGraph("source graph must be loopless".into()));
    }
    let ord = degree_ordering(g);
    let mut image = alloc::vec![usize::MAX; g.n];
    let mut budget = Budget { used: 0 };
    fn rec(g: &Graph, f: &Graph, order: &[usize], k: usize, image: &mut [usize], budget: &mut Budget) -> Result<u128> {
        if k == order.len() {
            return Ok(1);
        }
        budget.tick()?;
        let v = order[k];
        let mut cand = f.all_vertices();
        let mut nb = g.adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if image[u] != usize::MAX {
                cand &= f.closed_adjacency(image[u]);
            }
        }
        if k + 1 == order.len() {
            return Ok(u128::from(cand.count_ones()));
        }
        let mut total = 0u128;
        while cand != 0 {
            let x = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            image[v] = x;
            total += rec(g, f, order, k + 1, image, budget)?;
        }
        image[v] = usize::MAX;
        Ok(total)
    }
    rec(g, f, &ord.order, 0, &mut image, &mut budget)
}

/// Number of independent sets of `G`, the empty set included.
pub fn independent_sets_exact(g: &Graph) -> Result<u128> {
    if g.n > INDEPENDENT_SET_LIMIT {
        return Err(Error::GuardExceeded { what: "independent-set enumeration vertices", limit: INDEPENDENT_SET_LIMIT as u64 });
    }
    let mut budget = Budget { used: 0 };
    fn rec(g: &Graph, alive: u64, budget: &mut Budget) -> Result<u128> {
        budget.tick()?;
        let mut best = (0u32, usize::MAX);
        let mut rest = alive;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let d = (g.adj[v] & alive).count_ones();
            if d > best.0 {
                best = (d, v);
            }
        }
        match best {
            (0, _) => Ok(1u128 << alive.count_ones()),
            (1, _) => {
                // a matching plus isolated vertices
                let edges = (0..g.n).filter(|&v| alive >> v & 1 == 1).map(|v| (g.adj[v] & alive).count_ones()).sum::<u32>() / 2;
                let isolated = alive.count_ones() - 2 * edges;
                Ok(3u128.pow(edges) << isolated)
            }
            (_, v) => {
                let without = rec(g, alive & !(1 << v), budget)?;
                let with = rec(g, alive & !(1 << v) & !g.adj[v], budget)?;
                Ok(without + with)
            }
        }
    }
    rec(g, g.all_vertices(), &mut budget)
}

/// `|Hom(K_{a,b}, F)| = Σ_{u ∈ V(F)^a} |N(u_1) ∩ ... ∩ N(u_a)|^b`, loops
/// counting as self-adjacency. Tuples are grouped by their common
/// neighbourhood so the work is bounded by distinct intersections.
pub fn hom_complete_bipartite(a: usize, b: usize, f: &Graph) -> Result<BigUint> {
    let mut layer: BTreeMap<u64, BigUint> = BTreeMap::new();
    layer.insert(f.all_vertices(), BigUint::one());
    let mut work = 0u64;
    for _ in 0..a {
        let mut next: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (mask, count) in &layer {
            for v in 0..f.n {
                *next.entry(mask & f.closed_adjacency(v)).or_insert_with(BigUint::zero) += count;
            }
            work += f.n as u64;
            if work > NODE_BUDGET {
                return Err(Error::GuardExceeded { what: "bipartite homomorphism states", limit: NODE_BUDGET });
            }
        }
        layer = next;
    }
    Ok(layer.into_iter().map(|(mask, count)| count * BigUint::from(mask.count_ones()).pow(b as u32)).sum())
}

/// `log2` of a nonnegative integer, `-∞` for zero.
pub fn log2_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return libm::log2(x.to_f64().expect("fits in f64"));
    }
    let shift = bits - 64;
    libm::log2((x >> shift).to_f64().expect("64 bits")) + shift as f64
}

/// One vertex's contribution `(1/d(v)) log2 |Hom(K_{p,p}, F)|`.
#[derive(Clone, Debug, PartialEq)]
pub struct VertexFactor {
    /// 1-based vertex label.
    pub vertex: usize,
    pub p: usize,
    pub degree: usize,
    pub homs: BigUint,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountingBound {
    pub log2: f64,
    pub factors: Vec<VertexFactor>,
    /// Isolated vertices stripped before bounding, each worth `|V(F)|`.
    pub isolated: usize,
}

impl CountingBound {
    pub fn value(&self) -> f64 {
        libm::exp2(self.log2)
    }

    /// `bound >= count`, compared as `log2 bound >= log2 count - tol`.
    pub fn dominates(&self, count: u128, tol: f64) -> bool {
        if count == 0 {
            return true;
        }
        self.log2 >= libm::log2(count as f64) - tol
    }
}

fn loopless(g: &Graph) -> Result<()> {
    if g.loops != 0 {
        return Err(Error::InvalidGraph("source graph must be loopless".into()));
    }
    Ok(())
}

/// `|Hom(G, F)| <= |V(F)|^{isolated} ∏_v |Hom(K_{p(v),p(v)}, F)|^{1/d(v)}`.
pub fn hom_bound(g: &Graph, f: &Graph) -> Result<CountingBound> {
    loopless(g)?;
    let ord = degree_ordering(g);
    let isolated = (0..g.n).filter(|&v| g.degree(v) == 0).count();
    let mut log2 = isolated as f64 * libm::log2(f.n as f64);
    let mut factors = Vec::new();
    let mut cache: BTreeMap<usize, BigUint> = BTreeMap::new();
    for &v in &ord.order {
        let d = g.degree(v);
        if d == 0 {
            continue;
        }
        let p = ord.p[v];
        let homs = match cache.get(&p) {
            Some(h) => h.clone(),
            None => {
                let h = hom_complete_bipartite(p, p, f)?;
                cache.insert(p, h.clone());
                h
            }
        };
        log2 += log2_biguint(&homs) / d as f64;
        factors.push(VertexFactor { vertex: v + 1, p, degree: d, homs });
    }
    Ok(CountingBound { log2, factors, isolated })
}

/// `|I(G)| <= 2^{isolated} ∏_v 2^{(p(v)+1)/d(v)}`.
pub fn independent_set_bound(g: &Graph) -> Result<CountingBound> {
    loopless(g)?;
    let ord = degree_ordering(g);
    let isolated = (0..g.n).filter(|&v| g.degree(v) == 0).count();
    let mut log2 = isolated as f64;
    let mut factors = Vec::new();
    for &v in &ord.order {
        let d = g.degree(v);
        if d == 0 {
            continue;
        }
        let p = ord.p[v];
        log2 += (p + 1) as f64 / d as f64;
        factors.push(VertexFactor { vertex: v + 1, p, degree: d, homs: BigUint::one() << (p + 1) });
    }
    Ok(CountingBound { log2, factors, isolated })
}

/// Bound on proper `r`-colourings: [`hom_bound`] into `K_r`.
pub fn coloring_bound(g: &Graph, r: usize) -> Result<CountingBound> {
    if r < 2 {
        return Err(Error::NonPositiveParameter("r - 1"));
    }
    hom_bound(g, &Graph::complete(r)?)
}

/// `n/2 + n/d` for a `d`-regular graph with `d >= 1`, the closed form the
/// independent-set bound never exceeds on such graphs.
pub fn regular_independent_ceiling(g: &Graph) -> Option<f64> {
    let d = g.regularity().filter(|&d| d > 0)?;
    let n = g.n as f64;
    Some(n / 2.0 + n / d as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orderings() {
        let c4 = Graph::cycle(4).unwrap();
        let o = degree_ordering(&c4);
        assert_eq!(o.order, [0, 1, 2, 3]);
        assert_eq!(o.p, [0, 1, 1, 2]);
        let star = Graph::new(4, &[(1, 2), (1, 3), (1, 4)], &[]).unwrap();
        assert_eq!(degree_ordering(&star).p, [0, 1, 1, 1]);
        assert_eq!(degree_ordering(&Graph::complete(2).unwrap()).p, [0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert!(Graph::new(3, &[(1, 2), (2, 1)], &[]).is_err());
        assert!(Graph::new(3, &[(1, 1)], &[]).is_err());
        assert!(Graph::new(3, &[(1, 4)], &[]).is_err());
        assert!(Graph::cycle(2).is_err());
    }

    #[test]
    fn exact_counts() {
        let c4 = Graph::cycle(4).unwrap();
        let gadget = Graph::independent_set_gadget();
        assert_eq!(hom_count_exact(&c4, &Graph::complete(3).unwrap()), Ok(18));
        assert_eq!(hom_count_exact(&Graph::complete(2).unwrap(), &gadget), Ok(3));
        assert_eq!(hom_count_exact(&c4, &Graph::new(1, &[], &[1]).unwrap()), Ok(1));
        assert_eq!(independent_sets_exact(&c4), Ok(7));
        assert_eq!(hom_count_exact(&c4, &gadget), Ok(7));
        assert_eq!(independent_sets_exact(&Graph::complete(2).unwrap()), Ok(3));
        assert_eq!(independent_sets_exact(&Graph::empty(5).unwrap()), Ok(32));
        assert!(independent_sets_exact(&Graph::empty(41).unwrap()).is_err());
    }

    #[test]
    fn bipartite_homs() {
        let gadget = Graph::independent_set_gadget();
        for a in 0..=6 {
            assert_eq!(hom_complete_bipartite(a, a, &gadget).unwrap(), BigUint::from((1u32 << (a + 1)) - 1));
        }
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(hom_complete_bipartite(1, 1, &k3).unwrap(), BigUint::from(6u32));
        assert_eq!(hom_complete_bipartite(0, 4, &k3).unwrap(), BigUint::from(81u32));
    }

    #[test]
    fn bounds_on_small_graphs() {
        let c4 = Graph::cycle(4).unwrap();
        let b = independent_set_bound(&c4).unwrap();
        assert!((b.value() - 16.0).abs() < 1e-9);
        let exact_form = hom_bound(&c4, &Graph::independent_set_gadget()).unwrap();
        assert!((exact_form.value() - libm::sqrt(63.0)).abs() < 1e-9);
        assert!((independent_set_bound(&Graph::complete(2).unwrap()).unwrap().value() - 8.0).abs() < 1e-9);
        let k2 = coloring_bound(&Graph::complete(2).unwrap(), 3).unwrap();
        assert!((k2.value() - 6.0).abs() < 1e-9);
        assert!(coloring_bound(&c4, 3).unwrap().dominates(18, 1e-9));
        let stripped = coloring_bound(&Graph::empty(3).unwrap(), 4).unwrap();
        assert!((stripped.value() - 64.0).abs() < 1e-9);
        assert!(coloring_bound(&c4, 1).is_err());
        assert_eq!(regular_independent_ceiling(&c4), Some(4.0));
    }

    #[test]
    fn large_log() {
        let x = BigUint::one() << 2000u32;
        assert!((log2_biguint(&x) - 2000.0).abs() < 1e-9);
        assert_eq!(log2_biguint(&BigUint::zero()), f64::NEG_INFINITY);
    }
}
