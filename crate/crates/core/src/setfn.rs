//! Set functions on `2^[n]` and the fractional bounds for submodular ones.
//!
//! For a submodular `f` with `f(∅) = 0`, any fractional partition `γ` of a
//! hypergraph and any total order on the ground set,
//!
//! ```text
//! Σ γ(s) f(s | s^c \ >s)  <=  f([n])  <=  Σ γ(s) f(s | <s)
//! ```
//!
//! where `<s` (`>s`) are the indices ranked below (above) every index of `s`.
//! Coverings and packings may replace the partition when the prefix values
//! `f([1]) <= f([2]) <= ...` are nondecreasing along the order; that condition
//! is checked, never assumed.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Debug;
use core::ops::{Add, Neg, Sub};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, StandardCollection, Weighting};
use crate::rational::{self, Rational};
use crate::subset::{Subset, ENUMERATION_LIMIT, MAX_GROUND};

/// Absolute slack used for floating-point inequality checks, in nats.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// Scalar values a set function may take: `f64` for transcendental backends,
/// exact rationals where the backend allows it.
pub trait Value: Clone + Debug + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self> {
    fn zero() -> Self;
    fn scale(&self, weight: &Rational) -> Self;
    fn to_f64(&self) -> f64;
    /// `self <= other + tol`; exact types ignore `tol`.
    fn le_within(&self, other: &Self, tol: f64) -> bool;

    fn eq_within(&self, other: &Self, tol: f64) -> bool {
        self.le_within(other, tol) && other.le_within(self, tol)
    }
}

impl Value for f64 {
    fn zero() -> Self {
        0.0
    }

    fn scale(&self, weight: &Rational) -> Self {
        self * rational::to_f64(weight)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn le_within(&self, other: &Self, tol: f64) -> bool {
        *self <= *other + tol
    }
}

impl Value for Rational {
    fn zero() -> Self {
        Zero::zero()
    }

    fn scale(&self, weight: &Rational) -> Self {
        self * weight
    }

    fn to_f64(&self) -> f64 {
        rational::to_f64(self)
    }

    fn le_within(&self, other: &Self, _tol: f64) -> bool {
        self <= other
    }
}

/// A real-valued function on subsets of `[n]` with `f(∅) = 0`.
pub trait SetFunction {
    type Value: Value;

    fn ground_size(&self) -> usize;

    fn value(&self, s: Subset) -> Self::Value;

    /// Backends for which only fractional partitions give valid bounds
    /// (differential entropy, for instance) return true.
    fn partitions_only(&self) -> bool {
        false
    }
}

impl<F: SetFunction + ?Sized> SetFunction for &F {
    type Value = F::Value;

    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn value(&self, s: Subset) -> Self::Value {
        (**self).value(s)
    }

    fn partitions_only(&self) -> bool {
        (**self).partitions_only()
    }
}

/// `f(s) = Σ_{i∈s} a_i`.
#[derive(Clone, Debug)]
pub struct Modular<V> {
    coefficients: Vec<V>,
}

impl<V: Value> Modular<V> {
    pub fn new(coefficients: Vec<V>) -> Self {
        Modular { coefficients }
    }
}

impl<V: Value> SetFunction for Modular<V> {
    type Value = V;

    fn ground_size(&self) -> usize {
        self.coefficients.len()
    }

    fn value(&self, s: Subset) -> V {
        s.iter().fold(V::zero(), |acc, i| acc + self.coefficients[i].clone())
    }
}

/// A set function backed by a closure. The closure must return zero on `∅`.
pub struct FnSetFunction<V, F> {
    n: usize,
    f: F,
    _marker: core::marker::PhantomData<fn() -> V>,
}

impl<V: Value, F: Fn(Subset) -> V> FnSetFunction<V, F> {
    pub fn new(n: usize, f: F) -> Self {
        FnSetFunction { n, f, _marker: core::marker::PhantomData }
    }
}

impl<V: Value, F: Fn(Subset) -> V> SetFunction for FnSetFunction<V, F> {
    type Value = V;

    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, s: Subset) -> V {
        (self.f)(s)
    }
}

/// All `2^n` values stored in a table indexed by bitmask.
#[derive(Clone, Debug)]
pub struct Tabulated<V> {
    n: usize,
    values: Vec<V>,
    partitions_only: bool,
}

impl<V: Value> Tabulated<V> {
    pub fn from_fn(f: &impl SetFunction<Value = V>) -> Result<Self> {
        let n = f.ground_size();
        guard(n, false)?;
        Ok(Tabulated { n, values: Subset::all(n).map(|s| f.value(s)).collect(), partitions_only: f.partitions_only() })
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }
}

impl<V: Value> SetFunction for Tabulated<V> {
    type Value = V;

    fn ground_size(&self) -> usize {
        self.n
    }

    fn value(&self, s: Subset) -> V {
        self.values[s.bits() as usize].clone()
    }

    fn partitions_only(&self) -> bool {
        self.partitions_only
    }
}

/// `-f`, turning supermodular functions into submodular ones.
pub struct Negated<F>(pub F);

impl<F: SetFunction> SetFunction for Negated<F> {
    type Value = F::Value;

    fn ground_size(&self) -> usize {
        self.0.ground_size()
    }

    fn value(&self, s: Subset) -> F::Value {
        -self.0.value(s)
    }

    fn partitions_only(&self) -> bool {
        self.0.partitions_only()
    }
}

/// Rejects exhaustive enumeration above [`ENUMERATION_LIMIT`] unless overridden.
pub fn guard(n: usize, allow_large: bool) -> Result<()> {
    let limit = if allow_large { MAX_GROUND - 1 } else { ENUMERATION_LIMIT };
    if n > limit {
        return Err(Error::GuardExceeded { what: "exhaustive subset enumeration", limit: limit as u64 });
    }
    Ok(())
}

/// A total order on `[n]`. `sequence[k]` is the 0-based element ranked `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundOrder {
    sequence: Vec<usize>,
    rank: Vec<usize>,
}

impl GroundOrder {
    pub fn natural(n: usize) -> Self {
        GroundOrder { sequence: (0..n).collect(), rank: (0..n).collect() }
    }

    /// From a permutation of 0-based indices listed from first to last.
    pub fn from_sequence(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (k, &i) in sequence.iter().enumerate() {
            if i >= n {
                return Err(Error::InvalidOrder(alloc::format!("index {} out of range", i + 1)));
            }
            if rank[i] != usize::MAX {
                return Err(Error::InvalidOrder(alloc::format!("index {} repeated", i + 1)));
            }
            rank[i] = k;
        }
        Ok(GroundOrder { sequence, rank })
    }

    /// From a permutation written with 1-based indices.
    pub fn from_one_based(sequence: &[usize]) -> Result<Self> {
        if sequence.contains(&0) {
            return Err(Error::InvalidOrder("indices are 1-based".into()));
        }
        Self::from_sequence(sequence.iter().map(|i| i - 1).collect())
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn rank(&self, i: usize) -> usize {
        self.rank[i]
    }

    /// The first `k` elements under this order.
    pub fn prefix(&self, k: usize) -> Subset {
        Subset::from_indices(self.sequence[..k].iter().copied())
    }

    /// `<s`: indices ranked below every index of `s`.
    pub fn before(&self, s: Subset) -> Subset {
        match s.iter().map(|i| self.rank[i]).min() {
            Some(lo) => self.prefix(lo),
            None => Subset::EMPTY,
        }
    }

    /// `>s`: indices ranked above every index of `s`.
    pub fn after(&self, s: Subset) -> Subset {
        match s.iter().map(|i| self.rank[i]).max() {
            Some(hi) => Subset::from_indices(self.sequence[hi + 1..].iter().copied()),
            None => Subset::EMPTY,
        }
    }

    /// Every permutation of `[n]` in lexicographic order.
    pub fn all(n: usize) -> Vec<GroundOrder> {
        let mut out = Vec::new();
        let mut seq: Vec<usize> = (0..n).collect();
        loop {
            out.push(GroundOrder::from_sequence(seq.clone()).expect("permutation"));
            // next lexicographic permutation
            let Some(i) = (1..n).rev().find(|&i| seq[i - 1] < seq[i]) else {
                return out;
            };
            let j = (i..n).rev().find(|&j| seq[j] > seq[i - 1]).expect("successor exists");
            seq.swap(i - 1, j);
            seq[i..].reverse();
        }
    }
}

/// `f(s | t) = f(s ∪ t) - f(t)` for disjoint `s`, `t`.
pub fn conditional<F: SetFunction>(f: &F, s: Subset, t: Subset) -> Result<F::Value> {
    if !s.is_disjoint(t) {
        return Err(Error::OverlappingSets);
    }
    Ok(cond(f, s, t))
}

fn cond<F: SetFunction>(f: &F, s: Subset, t: Subset) -> F::Value {
    f.value(s.union(t)) - f.value(t)
}

/// A pair `(s, t)` with `f(s) + f(t) < f(s ∪ t) + f(s ∩ t)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation<V> {
    pub s: Subset,
    pub t: Subset,
    /// `f(s) + f(t)`
    pub lhs: V,
    /// `f(s ∪ t) + f(s ∩ t)`
    pub rhs: V,
}

/// Submodularity defect `f(s) + f(t) - f(s ∪ t) - f(s ∩ t)` of a single pair.
pub fn submodularity_slack<F: SetFunction>(f: &F, s: Subset, t: Subset) -> F::Value {
    f.value(s) + f.value(t) - f.value(s.union(t)) - f.value(s.intersection(t))
}

/// Incomparable pairs `(s, t)` with `s < t` as bitmasks, in lexicographic order.
fn incomparable_pairs(n: usize) -> impl Iterator<Item = (Subset, Subset)> {
    let size = 1u64 << n;
    (0..size).flat_map(move |s| {
        (s + 1..size)
            .filter(move |&t| s & t != s && s & t != t)
            .map(move |t| (Subset::from_bits(s), Subset::from_bits(t)))
    })
}

fn check_pair<V: Value>(table: &Tabulated<V>, s: Subset, t: Subset, tol: f64) -> Option<Violation<V>> {
    let lhs = table.value(s) + table.value(t);
    let rhs = table.value(s.union(t)) + table.value(s.intersection(t));
    (!rhs.le_within(&lhs, tol)).then_some(Violation { s, t, lhs, rhs })
}

/// Exhaustive check over all pairs of incomparable subsets, `s` before `t` in
/// bitmask order. Returns the first violation found, or `None`.
pub fn is_submodular<F: SetFunction>(f: &F, tol: f64, allow_large: bool) -> Result<Option<Violation<F::Value>>> {
    guard(f.ground_size(), allow_large)?;
    let table = Tabulated::from_fn(f)?;
    Ok(incomparable_pairs(f.ground_size()).find_map(|(s, t)| check_pair(&table, s, t, tol)))
}

/// Every violating pair, in the order [`is_submodular`] visits them.
pub fn submodularity_violations<F: SetFunction>(f: &F, tol: f64, allow_large: bool) -> Result<Vec<Violation<F::Value>>> {
    guard(f.ground_size(), allow_large)?;
    let table = Tabulated::from_fn(f)?;
    Ok(incomparable_pairs(f.ground_size()).filter_map(|(s, t)| check_pair(&table, s, t, tol)).collect())
}

/// `f(t) <= f(s)` whenever `t ⊆ s`; returns the first offending `(t, s)` pair
/// with `s = t ∪ {i}`.
pub fn is_nondecreasing<F: SetFunction>(f: &F, tol: f64) -> Result<Option<(Subset, Subset)>> {
    let n = f.ground_size();
    guard(n, false)?;
    let table = Tabulated::from_fn(f)?;
    for t in Subset::all(n) {
        for i in t.complement(n).iter() {
            let s = t.with(i);
            if !table.value(t).le_within(&table.value(s), tol) {
                return Ok(Some((t, s)));
            }
        }
    }
    Ok(None)
}

/// `Σ_i f(i | <i)` under `order`; telescopes to `f([n])`.
pub fn chain_rule_sum<F: SetFunction>(f: &F, order: &GroundOrder) -> F::Value {
    (0..order.len()).fold(F::Value::zero(), |acc, k| {
        let i = order.sequence()[k];
        acc + cond(f, Subset::singleton(i), order.prefix(k))
    })
}

/// Checks `f(prefix_1) <= f(prefix_2) <= ... <= f([n])` along `order`.
pub fn prefix_nondecreasing<F: SetFunction>(f: &F, order: &GroundOrder, tol: f64) -> Result<()> {
    let mut prev = f.value(Subset::EMPTY);
    for k in 1..=order.len() {
        let cur = f.value(order.prefix(k));
        if !prev.le_within(&cur, tol) {
            return Err(Error::PrefixNotMonotone { position: k });
        }
        prev = cur;
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Upper,
    Lower,
}

fn check_weighting<F: SetFunction>(f: &F, h: &Hypergraph, w: &Weighting, order: &GroundOrder, side: Side) -> Result<()> {
    if h.n() != f.ground_size() || order.len() != f.ground_size() {
        return Err(Error::LengthMismatch { expected: f.ground_size(), found: h.n() });
    }
    let class = h.classify(w)?;
    if class.is_partition() {
        return Ok(());
    }
    // relaxed weightings need the right direction plus prefix monotonicity
    match side {
        Side::Upper => h.require_covering(w)?,
        Side::Lower => h.require_packing(w)?,
    }
    if f.partitions_only() {
        return Err(Error::PartitionRequired);
    }
    prefix_nondecreasing(f, order, FLOAT_TOLERANCE)
}

fn weighted_sum<V: Value>(terms: impl Iterator<Item = (V, Rational)>) -> V {
    terms.fold(V::zero(), |acc, (v, w)| acc + v.scale(&w))
}

/// `Σ α(s) f(s | <s)`, an upper bound on `f([n])`.
pub fn strong_upper_bound<F: SetFunction>(f: &F, h: &Hypergraph, alpha: &Weighting, order: &GroundOrder) -> Result<F::Value> {
    check_weighting(f, h, alpha, order, Side::Upper)?;
    Ok(weighted_sum(
        h.edges().iter().zip(alpha.values()).map(|(&s, w)| (cond(f, s, order.before(s)), w.clone())),
    ))
}

/// `Σ β(s) f(s | s^c \ >s)`, a lower bound on `f([n])`.
pub fn strong_lower_bound<F: SetFunction>(f: &F, h: &Hypergraph, beta: &Weighting, order: &GroundOrder) -> Result<F::Value> {
    check_weighting(f, h, beta, order, Side::Lower)?;
    let n = h.n();
    Ok(weighted_sum(h.edges().iter().zip(beta.values()).map(|(&s, w)| {
        let given = s.complement(n).difference(order.after(s));
        (cond(f, s, given), w.clone())
    })))
}

/// `Σ α(s) f(s)`.
///
/// Relaxed weightings are checked for prefix monotonicity along the natural order.
pub fn weak_upper_bound<F: SetFunction>(f: &F, h: &Hypergraph, alpha: &Weighting) -> Result<F::Value> {
    check_weighting(f, h, alpha, &GroundOrder::natural(h.n()), Side::Upper)?;
    Ok(weighted_sum(h.edges().iter().zip(alpha.values()).map(|(&s, w)| (f.value(s), w.clone()))))
}

/// `Σ β(s) f(s | s^c)`.
pub fn weak_lower_bound<F: SetFunction>(f: &F, h: &Hypergraph, beta: &Weighting) -> Result<F::Value> {
    check_weighting(f, h, beta, &GroundOrder::natural(h.n()), Side::Lower)?;
    let n = h.n();
    Ok(weighted_sum(h.edges().iter().zip(beta.values()).map(|(&s, w)| (cond(f, s, s.complement(n)), w.clone()))))
}

/// A lower and upper bound on `f([n])` together with the exact value.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport<V> {
    pub lower: V,
    pub upper: V,
    pub exact: V,
    pub gap_lower: V,
    pub gap_upper: V,
    pub lower_weighting: Weighting,
    pub upper_weighting: Weighting,
    pub order: GroundOrder,
}

impl<V: Value> BoundReport<V> {
    pub fn new(lower: V, upper: V, exact: V, lower_weighting: Weighting, upper_weighting: Weighting, order: GroundOrder) -> Self {
        BoundReport {
            gap_lower: exact.clone() - lower.clone(),
            gap_upper: upper.clone() - exact.clone(),
            lower,
            upper,
            exact,
            lower_weighting,
            upper_weighting,
            order,
        }
    }

    pub fn sandwich_holds(&self, tol: f64) -> bool {
        self.lower.le_within(&self.exact, tol) && self.exact.le_within(&self.upper, tol)
    }
}

/// Strong bounds with the degree packing (lower) and degree covering (upper).
pub fn degree_form_bounds<F: SetFunction>(f: &F, h: &Hypergraph, order: &GroundOrder) -> Result<BoundReport<F::Value>> {
    let packing = h.degree_packing()?;
    let covering = h.degree_covering()?;
    let lower = strong_lower_bound(f, h, &packing, order)?;
    let upper = strong_upper_bound(f, h, &covering, order)?;
    let exact = f.value(Subset::full(h.n()));
    Ok(BoundReport::new(lower, upper, exact, packing, covering, order.clone()))
}

/// Upper gap of the weak form: `Σ γ(s) f(s) - f([n])`.
pub fn weak_gap_upper<F: SetFunction>(f: &F, h: &Hypergraph, gamma: &Weighting) -> F::Value {
    let sum = weighted_sum(h.edges().iter().zip(gamma.values()).map(|(&s, w)| (f.value(s), w.clone())));
    sum - f.value(Subset::full(h.n()))
}

/// Lower gap of the weak form: `f([n]) - Σ γ(s) f(s | s^c)`.
pub fn weak_gap_lower<F: SetFunction>(f: &F, h: &Hypergraph, gamma: &Weighting) -> F::Value {
    let n = h.n();
    let sum = weighted_sum(h.edges().iter().zip(gamma.values()).map(|(&s, w)| (cond(f, s, s.complement(n)), w.clone())));
    f.value(Subset::full(n)) - sum
}

/// Both normalised gap identities for a partition and its dual.
#[derive(Clone, Debug, PartialEq)]
pub struct GapDuality<V> {
    pub weight: Rational,
    pub dual_weight: Rational,
    pub dual_weighting: Weighting,
    /// `Gap_U(f, S, γ) / w(γ)`
    pub upper_over_weight: V,
    /// `Gap_L(f, S̄, γ̄) / w(γ̄)`
    pub dual_lower_over_weight: V,
    /// `Gap_L(f, S, γ) / w(γ)`
    pub lower_over_weight: V,
    /// `Gap_U(f, S̄, γ̄) / w(γ̄)`
    pub dual_upper_over_weight: V,
}

impl<V: Value> GapDuality<V> {
    pub fn holds(&self, tol: f64) -> bool {
        self.upper_over_weight.eq_within(&self.dual_lower_over_weight, tol)
            && self.lower_over_weight.eq_within(&self.dual_upper_over_weight, tol)
    }
}

/// Computes both sides of `Gap_U(f,S,γ)/w(γ) = Gap_L(f,S̄,γ̄)/w(γ̄)` and its mirror.
pub fn gap_duality_check<F: SetFunction>(f: &F, h: &Hypergraph, gamma: &Weighting) -> Result<GapDuality<F::Value>> {
    h.require_partition(gamma)?;
    let complement = h.complement()?;
    let dual = h.dual_weighting(gamma)?;
    let weight = gamma.total_weight();
    let dual_weight = dual.total_weight();
    let inv = Rational::from_integer(1.into()) / &weight;
    let dual_inv = Rational::from_integer(1.into()) / &dual_weight;
    Ok(GapDuality {
        upper_over_weight: weak_gap_upper(f, h, gamma).scale(&inv),
        dual_lower_over_weight: weak_gap_lower(f, &complement, &dual).scale(&dual_inv),
        lower_over_weight: weak_gap_lower(f, h, gamma).scale(&inv),
        dual_upper_over_weight: weak_gap_upper(f, &complement, &dual).scale(&dual_inv),
        weight,
        dual_weight,
        dual_weighting: dual,
    })
}

/// The weak degree-form gaps of an `r`-regular collection and of its complement.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularGaps<V> {
    pub r: usize,
    pub edges: usize,
    /// `g_U(f, S)`
    pub upper: V,
    /// `g_L(f, S̄)`
    pub complement_lower: V,
}

impl<V: Value> RegularGaps<V> {
    /// `r / (|S| - r)`, the ratio `g_L(f,S̄) / g_U(f,S)` must equal.
    pub fn expected_ratio(&self) -> Rational {
        rational::ratio(self.r as i64, (self.edges - self.r) as i64)
    }

    /// `g_L(f,S̄) = g_U(f,S) * r/(|S|-r)`, cross-multiplied so zero gaps are fine.
    pub fn holds(&self, tol: f64) -> bool {
        self.upper.scale(&self.expected_ratio()).eq_within(&self.complement_lower, tol)
    }
}

/// `g_U(f,S)` and `g_L(f,S̄)` for an `r`-regular `S`, each using weights `1/r`
/// and `1/(|S|-r)` respectively.
pub fn regular_collection_gaps<F: SetFunction>(f: &F, h: &Hypergraph) -> Result<RegularGaps<F::Value>> {
    let r = h.regularity().ok_or(Error::NotRegular)?;
    if r == 0 || h.len() <= r {
        return Err(Error::NotRegular);
    }
    let complement = h.complement()?;
    let gamma = Weighting::uniform(h.len(), rational::ratio(1, r as i64))?;
    let dual = Weighting::uniform(h.len(), rational::ratio(1, (h.len() - r) as i64))?;
    Ok(RegularGaps {
        r,
        edges: h.len(),
        upper: weak_gap_upper(f, h, &gamma),
        complement_lower: weak_gap_lower(f, &complement, &dual),
    })
}

/// `g_U(f, S_k)` and `g_L(f, S_k)` for `k = 1..=n`.
#[derive(Clone, Debug, PartialEq)]
pub struct GapSequences<V> {
    pub upper: Vec<V>,
    pub lower: Vec<V>,
}

impl<V: Value> GapSequences<V> {
    fn nonincreasing(seq: &[V], tol: f64) -> bool {
        seq.windows(2).all(|w| w[1].le_within(&w[0], tol))
    }

    /// Both sequences nonincreasing, both ending at zero.
    pub fn holds(&self, tol: f64) -> bool {
        let ends_at_zero = |seq: &[V]| seq.last().is_none_or(|v| v.eq_within(&V::zero(), tol));
        Self::nonincreasing(&self.upper, tol)
            && Self::nonincreasing(&self.lower, tol)
            && ends_at_zero(&self.upper)
            && ends_at_zero(&self.lower)
    }
}

pub fn gap_monotonicity_sequence<F: SetFunction>(f: &F) -> Result<GapSequences<F::Value>> {
    let n = f.ground_size();
    guard(n, false)?;
    let table = Tabulated::from_fn(f)?;
    let mut upper = Vec::with_capacity(n);
    let mut lower = Vec::with_capacity(n);
    for k in 1..=n {
        let h = Hypergraph::standard(StandardCollection::KSets(k), n)?;
        // S_k is C(n-1, k-1)-regular
        let r = h.regularity().expect("k-sets are regular");
        let gamma = Weighting::uniform(h.len(), rational::ratio(1, r as i64))?;
        upper.push(weak_gap_upper(&table, &h, &gamma));
        lower.push(weak_gap_lower(&table, &h, &gamma));
    }
    Ok(GapSequences { upper, lower })
}

/// Outcome of random fractional-subadditivity trials.
#[derive(Clone, Debug, PartialEq)]
pub enum SubadditivityOutcome<V> {
    Holds { trials: usize, min_slack: f64 },
    Violated { hypergraph: Hypergraph, weighting: Weighting, whole: V, bound: V },
}

/// Samples random hypergraphs with random fractional partitions and checks
/// `f([n]) <= Σ γ(s) f(s)` on each.
pub fn fractional_subadditivity_check<F: SetFunction, R: rand::Rng + ?Sized>(
    f: &F,
    trials: usize,
    rng: &mut R,
) -> Result<SubadditivityOutcome<F::Value>> {
    let n = f.ground_size();
    if n == 0 {
        return Err(Error::EmptyGroundSet);
    }
    let whole = f.value(Subset::full(n));
    let mut min_slack = f64::INFINITY;
    for _ in 0..trials {
        let (h, gamma) = crate::random::fractional_partition(n, rng)?;
        let bound = weighted_sum(h.edges().iter().zip(gamma.values()).map(|(&s, w)| (f.value(s), w.clone())));
        if !whole.le_within(&bound, FLOAT_TOLERANCE) {
            return Ok(SubadditivityOutcome::Violated { hypergraph: h, weighting: gamma, whole, bound });
        }
        min_slack = min_slack.min((bound - whole.clone()).to_f64());
    }
    Ok(SubadditivityOutcome::Holds { trials, min_slack })
}

/// Sum of `γ(s)` over edges, as a float; handy when normalising reports.
pub fn weight_f64(w: &Weighting) -> f64 {
    rational::to_f64(&w.total_weight())
}

/// True when no entry of `w` is negative and lengths agree with `h`.
pub fn well_formed(h: &Hypergraph, w: &Weighting) -> bool {
    h.len() == w.len() && w.values().iter().all(|v| !v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{integer, ratio};

    fn modular(a: &[i64]) -> Modular<Rational> {
        Modular::new(a.iter().map(|&x| integer(x)).collect())
    }

    fn square_card(n: usize) -> FnSetFunction<Rational, impl Fn(Subset) -> Rational> {
        FnSetFunction::new(n, |s: Subset| integer((s.len() * s.len()) as i64))
    }

    fn min_card_one(n: usize) -> FnSetFunction<Rational, impl Fn(Subset) -> Rational> {
        FnSetFunction::new(n, |s: Subset| integer(s.len().min(1) as i64))
    }

    fn set(v: &[usize], n: usize) -> Subset {
        Subset::from_one_based(v, n).unwrap()
    }

    #[test]
    fn conditional_examples() {
        let f = modular(&[1, 2, 3]);
        assert_eq!(conditional(&f, set(&[1], 3), Subset::EMPTY), Ok(integer(1)));
        assert_eq!(conditional(&f, set(&[1, 2], 3), set(&[3], 3)), Ok(integer(3)));
        assert_eq!(conditional(&f, set(&[1, 2], 3), set(&[2], 3)), Err(Error::OverlappingSets));
    }

    #[test]
    fn submodularity_examples() {
        assert_eq!(is_submodular(&FnSetFunction::new(3, |s: Subset| integer(s.len() as i64)), 0.0, false), Ok(None));
        let v = is_submodular(&square_card(2), 0.0, false).unwrap().expect("|s|^2 is supermodular");
        assert_eq!((v.s, v.t), (set(&[1], 2), set(&[2], 2)));
        assert_eq!((v.lhs, v.rhs), (integer(2), integer(4)));
        assert!(matches!(is_submodular(&modular(&[0; 21]), 0.0, false), Err(Error::GuardExceeded { .. })));
    }

    #[test]
    fn chain_rule_is_exact_for_every_order() {
        let f = modular(&[1, 2, 3]);
        for order in GroundOrder::all(3) {
            assert_eq!(chain_rule_sum(&f, &order), integer(6));
        }
        let g = square_card(4);
        for order in GroundOrder::all(4) {
            assert_eq!(chain_rule_sum(&g, &order), integer(16));
        }
        assert_eq!(GroundOrder::all(4).len(), 24);
    }

    #[test]
    fn order_before_after() {
        let order = GroundOrder::from_one_based(&[3, 1, 4, 2]).unwrap();
        assert_eq!(order.before(set(&[1, 4], 4)), set(&[3], 4));
        assert_eq!(order.after(set(&[1, 4], 4)), set(&[2], 4));
        assert_eq!(order.before(set(&[3], 4)), Subset::EMPTY);
        assert!(GroundOrder::from_one_based(&[1, 1]).is_err());
        assert!(GroundOrder::from_one_based(&[0, 1]).is_err());
        assert!(GroundOrder::from_one_based(&[1, 3]).is_err());
    }

    #[test]
    fn singletons_recover_the_chain_rule() {
        let f = min_card_one(3);
        let h = Hypergraph::standard(StandardCollection::Singletons, 3).unwrap();
        let unit = Weighting::uniform(3, integer(1)).unwrap();
        for order in GroundOrder::all(3) {
            assert_eq!(strong_upper_bound(&f, &h, &unit, &order), Ok(integer(1)));
            assert_eq!(strong_lower_bound(&f, &h, &unit, &order), Ok(integer(1)));
        }
    }

    #[test]
    fn modular_weak_bounds_are_tight_for_partitions() {
        let f = modular(&[1, 2, 3]);
        let h = Hypergraph::standard(StandardCollection::KSets(2), 3).unwrap();
        let gamma = h.degree_covering().unwrap();
        assert_eq!(weak_upper_bound(&f, &h, &gamma), Ok(integer(6)));
        assert_eq!(weak_lower_bound(&f, &h, &gamma), Ok(integer(6)));
    }

    #[test]
    fn relaxed_weightings_need_monotone_prefixes() {
        // f(s) = 1 - [s = {1}] style: decreasing prefix {1} -> {1,2}
        let f = FnSetFunction::new(2, |s: Subset| match s.bits() {
            0 => integer(0),
            1 => integer(2),
            2 => integer(2),
            _ => integer(1),
        });
        let h = Hypergraph::from_one_based(2, &[vec![1], vec![2], vec![1, 2]]).unwrap();
        let covering = Weighting::uniform(3, integer(1)).unwrap();
        let natural = GroundOrder::natural(2);
        assert_eq!(strong_upper_bound(&f, &h, &covering, &natural), Err(Error::PrefixNotMonotone { position: 2 }));
        // a covering that fails the covering test is reported as such
        let thin = Weighting::new(vec![ratio(1, 2), ratio(1, 2), integer(0)]).unwrap();
        assert!(matches!(strong_upper_bound(&f, &h, &thin, &natural), Err(Error::Classification { index: 1, .. })));
    }

    #[test]
    fn min_card_is_fractionally_subadditive_on_triangle() {
        let f = min_card_one(3);
        let tri = Hypergraph::from_one_based(3, &[vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap();
        let half = Weighting::uniform(3, ratio(1, 2)).unwrap();
        assert_eq!(weak_upper_bound(&f, &tri, &half), Ok(ratio(3, 2)));
        assert!(f.value(Subset::full(3)) <= ratio(3, 2));
    }

    #[test]
    fn gap_sequences_for_modular_are_zero() {
        let seq = gap_monotonicity_sequence(&modular(&[4, 1, 7, 2])).unwrap();
        assert!(seq.upper.iter().chain(&seq.lower).all(Zero::is_zero));
        assert!(seq.holds(0.0));
    }

    #[test]
    fn regular_gap_ratio_exact_on_rational_backend() {
        let f = min_card_one(4);
        let h = Hypergraph::standard(StandardCollection::KSets(2), 4).unwrap();
        let gaps = regular_collection_gaps(&f, &h).unwrap();
        assert_eq!(gaps.r, 3);
        assert_eq!(gaps.expected_ratio(), ratio(1, 1));
        assert_eq!(gaps.upper, integer(1));
        assert!(gaps.holds(0.0));
    }

    #[test]
    fn duality_requires_weight_above_one() {
        let h = Hypergraph::from_one_based(2, &[vec![1], vec![2]]).unwrap();
        let half = Weighting::uniform(2, ratio(1, 2)).unwrap();
        assert!(matches!(gap_duality_check(&modular(&[1, 1]), &h, &half), Err(Error::Classification { .. })));
        let one_edge = Hypergraph::from_one_based(2, &[vec![1, 2]]).unwrap();
        let unit = Weighting::uniform(1, integer(1)).unwrap();
        assert!(matches!(gap_duality_check(&modular(&[1, 1]), &one_edge, &unit), Err(Error::EdgeIsWholeSet { .. })));
    }
}
