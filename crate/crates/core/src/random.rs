//! Random instances for property tests and randomized checks.

use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::counting::Graph;
use crate::detineq::PosDefMatrix;
use crate::entropy::JointDistribution;
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Weighting};
use crate::rational::{self, Rational};
use crate::relent::ProductMeasure;
use crate::setfn::GroundOrder;
use crate::subset::{Subset, MAX_GROUND};

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    if n >= MAX_GROUND {
        return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND - 1 });
    }
    Ok(())
}

/// A uniformly labelled set partition of `[n]` with at least `min_blocks` blocks.
pub fn set_partition<R: Rng + ?Sized>(n: usize, min_blocks: usize, rng: &mut R) -> Result<Vec<Subset>> {
    check_n(n)?;
    if min_blocks > n {
        return Err(Error::KOutOfRange { k: min_blocks, n });
    }
    loop {
        let k = rng.gen_range(min_blocks.max(1)..=n);
        let mut blocks = vec![Subset::EMPTY; k];
        for i in 0..n {
            let b = rng.gen_range(0..k);
            blocks[b] = blocks[b].with(i);
        }
        blocks.retain(|b| !b.is_empty());
        if blocks.len() >= min_blocks {
            return Ok(blocks);
        }
    }
}

/// A convex combination of one to three set partitions, which is a
/// fractional partition of the resulting hypergraph.
pub fn fractional_partition<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<(Hypergraph, Weighting)> {
    check_n(n)?;
    let parts = rng.gen_range(1..=3usize);
    let coeffs: Vec<i64> = (0..parts).map(|_| rng.gen_range(1..=10)).collect();
    let total: i64 = coeffs.iter().sum();
    let mut edges = Vec::new();
    let mut weights = Vec::new();
    for &c in &coeffs {
        for block in set_partition(n, 1, rng)? {
            edges.push(block);
            weights.push(rational::ratio(c, total));
        }
    }
    Ok((Hypergraph::new(n, edges)?, Weighting::new(weights)?))
}

/// An `r`-regular collection: the union of `r` set partitions, each with at
/// least two blocks so no edge is all of `[n]`.
pub fn regular_collection<R: Rng + ?Sized>(n: usize, r: usize, rng: &mut R) -> Result<Hypergraph> {
    check_n(n)?;
    if n < 2 || r == 0 {
        return Err(Error::NotRegular);
    }
    let mut edges = Vec::new();
    for _ in 0..r {
        edges.extend(set_partition(n, 2, rng)?);
    }
    Hypergraph::new(n, edges)
}

/// A uniformly random total order on `[n]`.
pub fn order<R: Rng + ?Sized>(n: usize, rng: &mut R) -> GroundOrder {
    let mut seq: Vec<usize> = (0..n).collect();
    seq.shuffle(rng);
    GroundOrder::from_sequence(seq).expect("shuffled permutation")
}

/// Nonnegative integer weights `0..=max_weight`, at least one positive,
/// normalised to a rational probability vector.
pub fn probability_vector<R: Rng + ?Sized>(len: usize, max_weight: u32, rng: &mut R) -> Vec<Rational> {
    assert!(len > 0 && max_weight > 0);
    let mut raw: Vec<i64> = (0..len).map(|_| i64::from(rng.gen_range(0..=max_weight))).collect();
    if raw.iter().all(|&x| x == 0) {
        let i = rng.gen_range(0..len);
        raw[i] = 1;
    }
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|x| rational::ratio(x, total)).collect()
}

/// Strictly positive probability vector (weights `1..=max_weight`).
pub fn positive_probability_vector<R: Rng + ?Sized>(len: usize, max_weight: u32, rng: &mut R) -> Vec<Rational> {
    assert!(len > 0 && max_weight > 0);
    let raw: Vec<i64> = (0..len).map(|_| i64::from(rng.gen_range(1..=max_weight))).collect();
    let total: i64 = raw.iter().sum();
    raw.into_iter().map(|x| rational::ratio(x, total)).collect()
}

/// A dense random pmf on `∏ [alphabet_sizes[i]]` with integer weights in
/// `0..=max_weight`.
pub fn distribution<R: Rng + ?Sized>(alphabet_sizes: &[u32], max_weight: u32, rng: &mut R) -> Result<JointDistribution> {
    let outcomes: Vec<_> = crate::relent::lexicographic_outcomes(alphabet_sizes).collect();
    let probs = probability_vector(outcomes.len(), max_weight, rng);
    JointDistribution::new(alphabet_sizes.to_vec(), outcomes.into_iter().zip(probs))
}

/// Random alphabet sizes in `1..=max_size` for `n` coordinates.
pub fn alphabet_sizes<R: Rng + ?Sized>(n: usize, max_size: u32, rng: &mut R) -> Vec<u32> {
    (0..n).map(|_| rng.gen_range(1..=max_size)).collect()
}

/// A product measure with strictly positive marginals.
pub fn product_measure<R: Rng + ?Sized>(alphabet_sizes: &[u32], max_weight: u32, rng: &mut R) -> Result<ProductMeasure> {
    ProductMeasure::new(alphabet_sizes.iter().map(|&a| positive_probability_vector(a as usize, max_weight, rng)).collect())
}

/// `A Aᵀ + 10⁻³ I` with entries of `A` uniform in `[-1, 1]`.
pub fn pd_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<PosDefMatrix> {
    let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..=1.0)).collect()).collect();
    let rows = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let dot: f64 = (0..n).map(|k| a[i][k] * a[j][k]).sum();
                    if i == j { dot + 1e-3 } else { dot }
                })
                .collect()
        })
        .collect();
    PosDefMatrix::new(rows)
}

/// `G(n, p)`.
pub fn erdos_renyi<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges, &[])
}

/// A positive rational function on the product alphabet, values in
/// `1/den..=max/den`.
pub fn positive_function<R: Rng + ?Sized>(len: usize, max: i64, rng: &mut R) -> Vec<Rational> {
    let den = rng.gen_range(1..=max);
    (0..len).map(|_| rational::ratio(rng.gen_range(1..=max), den)).collect()
}
