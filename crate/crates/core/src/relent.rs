//! Relative entropy against a product measure.
//!
//! `d(s) = D(P_s ‖ Q_s)` is supermodular when `Q` is a product, so the
//! submodular bounds apply to `-d` with their directions reversed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::entropy::{JointDistribution, Outcome, PRODUCT_LIMIT};
use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Weighting};
use crate::rational::{self, Rational};
use crate::setfn::{self, GroundOrder, Negated, SetFunction};
use crate::subset::Subset;

/// A product of per-coordinate pmfs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductMeasure {
    marginals: Vec<Vec<Rational>>,
}

impl ProductMeasure {
    pub fn new(marginals: Vec<Vec<Rational>>) -> Result<Self> {
        if marginals.is_empty() {
            return Err(Error::EmptyGroundSet);
        }
        for (i, m) in marginals.iter().enumerate() {
            if m.is_empty() {
                return Err(Error::InvalidDistribution(format!("coordinate {} has an empty alphabet", i + 1)));
            }
            if m.iter().any(Signed::is_negative) {
                return Err(Error::InvalidDistribution(format!("negative probability at coordinate {}", i + 1)));
            }
            let total: Rational = m.iter().sum();
            if !total.is_one() {
                return Err(Error::InvalidDistribution(format!("coordinate {} sums to {total}, not 1", i + 1)));
            }
        }
        Ok(ProductMeasure { marginals })
    }

    pub fn n(&self) -> usize {
        self.marginals.len()
    }

    pub fn marginals(&self) -> &[Vec<Rational>] {
        &self.marginals
    }

    pub fn alphabet_sizes(&self) -> Vec<u32> {
        self.marginals.iter().map(|m| m.len() as u32).collect()
    }

    /// `Q_s(x_s)` where `x_s` lists the symbols of `s` in ascending coordinate order.
    pub fn probability(&self, s: Subset, x_s: &[u32]) -> Rational {
        s.iter().zip(x_s).map(|(i, &v)| self.marginals[i][v as usize].clone()).product()
    }

    /// Number of points in the full product alphabet, if within [`PRODUCT_LIMIT`].
    pub fn size(&self) -> Result<usize> {
        self.marginals
            .iter()
            .try_fold(1u64, |acc, m| acc.checked_mul(m.len() as u64).filter(|&v| v <= PRODUCT_LIMIT))
            .map(|v| v as usize)
            .ok_or(Error::GuardExceeded { what: "product alphabet size", limit: PRODUCT_LIMIT })
    }

    pub fn to_distribution(&self) -> Result<JointDistribution> {
        self.size()?;
        JointDistribution::product(self.marginals.clone())
    }
}

fn project(x: &[u32], s: Subset) -> Outcome {
    s.iter().map(|i| x[i]).collect()
}

fn plog_ratio(p: &Rational, q: &Rational) -> f64 {
    let p = rational::to_f64(p);
    p * (libm::log(p) - libm::log(rational::to_f64(q)))
}

/// `D(P ‖ Q)` for distributions on the same alphabet.
pub fn kl_divergence(p: &JointDistribution, q: &JointDistribution) -> Result<f64> {
    if p.alphabet_sizes() != q.alphabet_sizes() {
        return Err(Error::LengthMismatch { expected: q.n(), found: p.n() });
    }
    let mut d = 0.0;
    for (x, px) in p.pmf() {
        let qx = q.probability(x);
        if qx.is_zero() {
            return Err(Error::NotAbsolutelyContinuous { outcome: format!("{x:?}") });
        }
        d += plog_ratio(px, &qx);
    }
    Ok(d)
}

/// A distribution `P` and a product measure `Q` with `P ≪ Q`.
#[derive(Clone, Debug)]
pub struct MeasurePair {
    p: JointDistribution,
    q: ProductMeasure,
}

impl MeasurePair {
    /// Checks alphabets and absolute continuity. Because `Q` is a product,
    /// `q(x) > 0` on the support of `P` gives `P_s ≪ Q_s` for every `s`.
    pub fn new(p: JointDistribution, q: ProductMeasure) -> Result<Self> {
        if p.alphabet_sizes() != q.alphabet_sizes().as_slice() {
            return Err(Error::InvalidDistribution("P and Q have different alphabets".into()));
        }
        let full = Subset::full(p.n());
        if let Some(x) = p.pmf().keys().find(|x| q.probability(full, x).is_zero()) {
            return Err(Error::NotAbsolutelyContinuous { outcome: format!("{x:?}") });
        }
        Ok(MeasurePair { p, q })
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    pub fn p(&self) -> &JointDistribution {
        &self.p
    }

    pub fn q(&self) -> &ProductMeasure {
        &self.q
    }

    /// `d(s) = Σ p_s log(p_s / q_s)`, in nats.
    pub fn relative_entropy(&self, s: Subset) -> f64 {
        if s.is_empty() {
            return 0.0;
        }
        self.p.marginal_pmf(s).iter().map(|(x, px)| plog_ratio(px, &self.q.probability(s, x))).sum()
    }

    /// `d(s | t) = d(s ∪ t) - d(t)`.
    pub fn conditional_relative_entropy(&self, s: Subset, t: Subset) -> Result<f64> {
        if !s.is_disjoint(t) {
            return Err(Error::OverlappingSets);
        }
        Ok(self.relative_entropy(s.union(t)) - self.relative_entropy(t))
    }

    /// `Σ_{x_t} P_t(x_t) D(P_{s|t=x_t} ‖ Q_s)`, computed from conditional pmfs
    /// rather than by differencing.
    pub fn averaged_conditional_divergence(&self, s: Subset, t: Subset) -> Result<f64> {
        if !s.is_disjoint(t) {
            return Err(Error::OverlappingSets);
        }
        let u = s.union(t);
        let joint = self.p.marginal_pmf(u);
        let given = self.p.marginal_pmf(t);
        let coords: Vec<usize> = u.iter().collect();
        let mut total = 0.0;
        for (x_u, pu) in &joint {
            let mut full = alloc::vec![0u32; self.n()];
            for (&i, &v) in coords.iter().zip(x_u) {
                full[i] = v;
            }
            let pt = &given[&project(&full, t)];
            let cond = pu / pt;
            let qs = self.q.probability(s, &project(&full, s));
            total += rational::to_f64(pt) * plog_ratio(&cond, &qs);
        }
        Ok(total)
    }
}

/// `s ↦ d(s)`, tabulated. Supermodular.
#[derive(Clone, Debug)]
pub struct DivergenceSetFunction {
    table: setfn::Tabulated<f64>,
}

impl DivergenceSetFunction {
    pub fn new(pair: &MeasurePair) -> Result<Self> {
        setfn::guard(pair.n(), false)?;
        let f = setfn::FnSetFunction::new(pair.n(), |s| pair.relative_entropy(s));
        Ok(DivergenceSetFunction { table: setfn::Tabulated::from_fn(&f)? })
    }
}

impl SetFunction for DivergenceSetFunction {
    type Value = f64;

    fn ground_size(&self) -> usize {
        self.table.ground_size()
    }

    fn value(&self, s: Subset) -> f64 {
        self.table.value(s)
    }

    fn partitions_only(&self) -> bool {
        true
    }
}

/// `-d`, submodular.
pub fn negated_divergence_set_function(pair: &MeasurePair) -> Result<Negated<DivergenceSetFunction>> {
    Ok(Negated(DivergenceSetFunction::new(pair)?))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DivergenceBounds {
    /// `Σ γ(s) d(s | s^c ∖ >s)`
    pub upper: f64,
    pub divergence: f64,
    /// `Σ γ(s) d(s | <s)`
    pub lower: f64,
}

impl DivergenceBounds {
    pub fn holds(&self, tol: f64) -> bool {
        self.lower <= self.divergence + tol && self.divergence <= self.upper + tol
    }
}

/// The sandwich on `D(P ‖ Q)` for a fractional partition `γ`.
pub fn corollary7_bounds(pair: &MeasurePair, h: &Hypergraph, gamma: &Weighting, order: &GroundOrder) -> Result<DivergenceBounds> {
    h.require_partition(gamma)?;
    let neg = negated_divergence_set_function(pair)?;
    Ok(DivergenceBounds {
        upper: -setfn::strong_lower_bound(&neg, h, gamma, order)?,
        divergence: neg.0.value(Subset::full(pair.n())),
        lower: -setfn::strong_upper_bound(&neg, h, gamma, order)?,
    })
}

/// All outcomes of the product alphabet in lexicographic order, the last
/// coordinate varying fastest.
pub fn lexicographic_outcomes(sizes: &[u32]) -> impl Iterator<Item = Outcome> + '_ {
    let total: usize = sizes.iter().map(|&a| a as usize).product();
    (0..total).map(move |mut idx| {
        let mut x = alloc::vec![0u32; sizes.len()];
        for (slot, &a) in x.iter_mut().zip(sizes).rev() {
            *slot = (idx % a as usize) as u32;
            idx /= a as usize;
        }
        x
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tensorization {
    pub r: usize,
    /// `Ent_Q(g)`
    pub lhs: f64,
    /// `(1/r) E_Q Σ_s Ent_{Q_s}(g)`
    pub rhs: f64,
}

impl Tensorization {
    pub fn holds(&self, tol: f64) -> bool {
        self.lhs <= self.rhs + tol
    }
}

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * libm::log(x)
    }
}

fn check_function(q: &ProductMeasure, g: &[Rational]) -> Result<Vec<(Outcome, f64, f64)>> {
    let size = q.size()?;
    if g.len() != size {
        return Err(Error::LengthMismatch { expected: size, found: g.len() });
    }
    let sizes = q.alphabet_sizes();
    let full = Subset::full(q.n());
    let mut points = Vec::with_capacity(size);
    for (k, (x, gx)) in lexicographic_outcomes(&sizes).zip(g).enumerate() {
        let qx = q.probability(full, &x);
        if qx.is_zero() {
            continue;
        }
        if !gx.is_positive() {
            return Err(Error::NonPositiveFunction { index: k + 1 });
        }
        points.push((x, rational::to_f64(&qx), rational::to_f64(gx)));
    }
    Ok(points)
}

/// `Ent_Q(g) = E_Q[g log g] - E_Q g log E_Q g`.
pub fn ent(q: &ProductMeasure, g: &[Rational]) -> Result<f64> {
    let points = check_function(q, g)?;
    let mean: f64 = points.iter().map(|(_, qx, gx)| qx * gx).sum();
    Ok(points.iter().map(|(_, qx, gx)| qx * xlogx(*gx)).sum::<f64>() - xlogx(mean))
}

/// Both sides of the tensorization inequality for an `r`-regular `H`;
/// `g` is listed over the product alphabet in lexicographic order.
pub fn tensorization_check(q: &ProductMeasure, g: &[Rational], h: &Hypergraph) -> Result<Tensorization> {
    if h.n() != q.n() {
        return Err(Error::LengthMismatch { expected: q.n(), found: h.n() });
    }
    let r = h.regularity().filter(|&r| r > 0).ok_or(Error::NotRegular)?;
    let points = check_function(q, g)?;
    let mean: f64 = points.iter().map(|(_, qx, gx)| qx * gx).sum();
    let mean_glogg: f64 = points.iter().map(|(_, qx, gx)| qx * xlogx(*gx)).sum();
    let lhs = mean_glogg - xlogx(mean);
    let n = q.n();
    let mut sum = 0.0;
    for &s in h.edges() {
        // E_Q Ent_{Q_s}(g) = E_Q[g log g] - Σ_{x_{s^c}} Q_{s^c}(x_{s^c}) m(x_{s^c}) log m(x_{s^c})
        // with m(x_{s^c}) = Σ_{x_s} Q_s(x_s) g(x)
        let sc = s.complement(n);
        let mut frozen: BTreeMap<Outcome, (f64, f64)> = BTreeMap::new();
        for (x, _, gx) in &points {
            let qs = rational::to_f64(&q.probability(s, &project(x, s)));
            let key = project(x, sc);
            let entry = frozen.entry(key).or_insert((0.0, 0.0));
            entry.1 += qs * gx;
        }
        for (key, entry) in frozen.iter_mut() {
            entry.0 = rational::to_f64(&q.probability(sc, key));
        }
        let inner: f64 = frozen.values().map(|(w, m)| w * xlogx(*m)).sum();
        sum += mean_glogg - inner;
    }
    Ok(Tensorization { r, lhs, rhs: sum / r as f64 })
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntIdentity {
    /// `Ent_Q(g)`
    pub ent: f64,
    /// `E_Q g`, exact
    pub mean: Rational,
    /// `D(P ‖ Q)` with `dP/dQ = g / E_Q g`
    pub divergence: f64,
}

impl EntIdentity {
    pub fn holds(&self, tol: f64) -> bool {
        (self.ent - rational::to_f64(&self.mean) * self.divergence).abs() <= tol
    }
}

/// `Ent_Q(g)` next to `E_Q g · D(P ‖ Q)`, the tilted `P` built exactly.
pub fn ent_divergence_identity(q: &ProductMeasure, g: &[Rational]) -> Result<EntIdentity> {
    let value = ent(q, g)?;
    let sizes = q.alphabet_sizes();
    let full = Subset::full(q.n());
    let weighted: Vec<(Outcome, Rational)> =
        lexicographic_outcomes(&sizes).zip(g).map(|(x, gx)| { let qx = q.probability(full, &x); (x, qx * gx) }).collect();
    let mean: Rational = weighted.iter().map(|(_, w)| w).sum();
    let p = JointDistribution::new(sizes, weighted.into_iter().map(|(x, w)| (x, w / &mean)))?;
    let divergence = kl_divergence(&p, &q.to_distribution()?)?;
    Ok(EntIdentity { ent: value, mean, divergence })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypergraph::StandardCollection;
    use crate::rational::{integer, ratio};
    use core::f64::consts::LN_2;

    fn fair(n: usize) -> ProductMeasure {
        ProductMeasure::new(alloc::vec![alloc::vec![ratio(1, 2); 2]; n]).unwrap()
    }

    fn correlated() -> MeasurePair {
        let p = JointDistribution::uniform_on(alloc::vec![2, 2], alloc::vec![alloc::vec![0, 0], alloc::vec![1, 1]]).unwrap();
        MeasurePair::new(p, fair(2)).unwrap()
    }

    fn set(v: &[usize]) -> Subset {
        Subset::from_one_based(v, 2).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn divergence_examples() {
        let pair = correlated();
        assert!(close(pair.relative_entropy(Subset::full(2)), LN_2));
        assert!(close(pair.relative_entropy(set(&[1])), 0.0));
        assert!(close(pair.conditional_relative_entropy(set(&[2]), set(&[1])).unwrap(), LN_2));
        assert!(close(pair.averaged_conditional_divergence(set(&[2]), set(&[1])).unwrap(), LN_2));
        let same = MeasurePair::new(JointDistribution::uniform(alloc::vec![2, 2]).unwrap(), fair(2)).unwrap();
        assert!(Subset::all(2).all(|s| close(same.relative_entropy(s), 0.0)));
    }

    #[test]
    fn absolute_continuity_is_enforced() {
        let q = ProductMeasure::new(alloc::vec![alloc::vec![integer(1), integer(0)], alloc::vec![ratio(1, 2); 2]]).unwrap();
        let p = JointDistribution::uniform(alloc::vec![2, 2]).unwrap();
        assert!(matches!(MeasurePair::new(p.clone(), q.clone()), Err(Error::NotAbsolutelyContinuous { .. })));
        assert!(kl_divergence(&p, &q.to_distribution().unwrap()).is_err());
        assert!(ProductMeasure::new(alloc::vec![alloc::vec![ratio(1, 3); 2]]).is_err());
    }

    #[test]
    fn sandwich_on_correlated_bits() {
        let pair = correlated();
        let h = Hypergraph::standard(StandardCollection::Singletons, 2).unwrap();
        let unit = h.degree_covering().unwrap();
        let b = corollary7_bounds(&pair, &h, &unit, &GroundOrder::natural(2)).unwrap();
        assert!(close(b.lower, LN_2) && close(b.divergence, LN_2) && close(b.upper, LN_2));
        let neg = negated_divergence_set_function(&pair).unwrap();
        assert_eq!(setfn::is_submodular(&neg, 1e-12, false).unwrap(), None);
    }

    #[test]
    fn tensorization_examples() {
        let q = fair(2);
        let h = Hypergraph::standard(StandardCollection::Singletons, 2).unwrap();
        let t = tensorization_check(&q, &alloc::vec![integer(3); 4], &h).unwrap();
        assert!(close(t.lhs, 0.0) && close(t.rhs, 0.0));
        let g = [integer(1), integer(2), integer(3), integer(7)];
        let t = tensorization_check(&q, &g, &h).unwrap();
        assert!(t.lhs > 0.0 && t.holds(1e-12));
        let id = ent_divergence_identity(&q, &g).unwrap();
        assert_eq!(id.mean, ratio(13, 4));
        assert!(id.holds(1e-12));
        assert!(matches!(tensorization_check(&q, &alloc::vec![integer(0); 4], &h), Err(Error::NonPositiveFunction { index: 1 })));
        let irregular = Hypergraph::from_one_based(2, &[alloc::vec![1], alloc::vec![1, 2]]).unwrap();
        assert_eq!(tensorization_check(&q, &g, &irregular), Err(Error::NotRegular));
    }

    #[test]
    fn lexicographic_order() {
        let v: Vec<Outcome> = lexicographic_outcomes(&[2, 3]).collect();
        assert_eq!(v[0], alloc::vec![0, 0]);
        assert_eq!(v[1], alloc::vec![0, 1]);
        assert_eq!(v[3], alloc::vec![1, 0]);
        assert_eq!(v.len(), 6);
    }
}
