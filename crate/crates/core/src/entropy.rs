//! Discrete joint distributions with exact rational probabilities and their
//! Shannon entropies.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, StandardCollection, Weighting};
use crate::rational::{self, Rational};
use crate::setfn::{self, GroundOrder, SetFunction};
use crate::subset::{Subset, MAX_GROUND};

pub type Outcome = Vec<u32>;

/// Logarithm base for reported entropies. Computation is always in nats.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Units {
    #[default]
    Nats,
    Bits,
}

impl Units {
    pub fn from_nats(self, nats: f64) -> f64 {
        match self {
            Units::Nats => nats,
            Units::Bits => nats / core::f64::consts::LN_2,
        }
    }
}

/// An entropy value tagged with its units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyValue {
    pub value: f64,
    pub units: Units,
}

impl EntropyValue {
    pub fn nats(value: f64) -> Self {
        EntropyValue { value, units: Units::Nats }
    }

    pub fn to(self, units: Units) -> Self {
        let nats = match self.units {
            Units::Nats => self.value,
            Units::Bits => self.value * core::f64::consts::LN_2,
        };
        EntropyValue { value: units.from_nats(nats), units }
    }
}

/// `-p ln p`, with `0 ln 0 = 0`.
fn plogp(p: &Rational) -> f64 {
    if p.is_zero() {
        return 0.0;
    }
    let x = rational::to_f64(p);
    -x * libm::log(x)
}

/// A pmf on `∏ [alphabet_sizes[i]]`, stored sparsely over its support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointDistribution {
    alphabet_sizes: Vec<u32>,
    pmf: BTreeMap<Outcome, Rational>,
}

impl JointDistribution {
    /// Validates sizes, symbols, nonnegativity and an exact total of one.
    /// Zero-probability entries are dropped; repeated outcomes are an error.
    pub fn new(alphabet_sizes: Vec<u32>, entries: impl IntoIterator<Item = (Outcome, Rational)>) -> Result<Self> {
        let n = alphabet_sizes.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n >= MAX_GROUND {
            return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND - 1 });
        }
        if let Some(i) = alphabet_sizes.iter().position(|&a| a == 0) {
            return Err(Error::InvalidDistribution(format!("alphabet size of coordinate {} is zero", i + 1)));
        }
        let mut pmf = BTreeMap::new();
        let mut total = Rational::zero();
        for (x, p) in entries {
            if x.len() != n {
                return Err(Error::LengthMismatch { expected: n, found: x.len() });
            }
            if let Some(i) = x.iter().zip(&alphabet_sizes).position(|(v, a)| v >= a) {
                return Err(Error::InvalidDistribution(format!("symbol {} out of range at coordinate {}", x[i], i + 1)));
            }
            if p.is_negative() {
                return Err(Error::InvalidDistribution(format!("negative probability {p}")));
            }
            total += &p;
            if p.is_zero() {
                continue;
            }
            if pmf.insert(x.clone(), p).is_some() {
                return Err(Error::InvalidDistribution(format!("outcome {x:?} listed twice")));
            }
        }
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}, not 1")));
        }
        Ok(JointDistribution { alphabet_sizes, pmf })
    }

    /// Uniform over the listed outcomes.
    pub fn uniform_on(alphabet_sizes: Vec<u32>, support: Vec<Outcome>) -> Result<Self> {
        let p = rational::ratio(1, support.len().max(1) as i64);
        Self::new(alphabet_sizes, support.into_iter().map(|x| (x, p.clone())))
    }

    /// Uniform over the whole product alphabet.
    pub fn uniform(alphabet_sizes: Vec<u32>) -> Result<Self> {
        let marginals = alphabet_sizes
            .iter()
            .map(|&a| vec![rational::ratio(1, i64::from(a.max(1))); a as usize])
            .collect();
        Self::product(marginals)
    }

    /// The product of the given per-coordinate pmfs, over the full product
    /// of their supports.
    pub fn product(marginals: Vec<Vec<Rational>>) -> Result<Self> {
        let sizes: Vec<u32> = marginals.iter().map(|m| m.len() as u32).collect();
        let mut entries: Vec<(Outcome, Rational)> = vec![(Vec::new(), Rational::one())];
        for m in &marginals {
            let mut next = Vec::with_capacity(entries.len() * m.len());
            for (x, p) in &entries {
                for (v, q) in m.iter().enumerate() {
                    if q.is_zero() {
                        continue;
                    }
                    let mut y = x.clone();
                    y.push(v as u32);
                    next.push((y, p * q));
                }
            }
            entries = next;
        }
        if marginals.iter().flatten().any(Signed::is_negative) {
            return Err(Error::InvalidDistribution("negative marginal probability".into()));
        }
        Self::new(sizes, entries)
    }

    pub fn n(&self) -> usize {
        self.alphabet_sizes.len()
    }

    pub fn alphabet_sizes(&self) -> &[u32] {
        &self.alphabet_sizes
    }

    pub fn pmf(&self) -> &BTreeMap<Outcome, Rational> {
        &self.pmf
    }

    pub fn probability(&self, x: &[u32]) -> Rational {
        self.pmf.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    /// Marginal probabilities of the coordinates in `s`, keyed by the
    /// projected outcome (coordinates in ascending order).
    pub fn marginal_pmf(&self, s: Subset) -> BTreeMap<Outcome, Rational> {
        let coords: Vec<usize> = s.iter().collect();
        let mut out: BTreeMap<Outcome, Rational> = BTreeMap::new();
        for (x, p) in &self.pmf {
            let y: Outcome = coords.iter().map(|&i| x[i]).collect();
            *out.entry(y).or_insert_with(Rational::zero) += p;
        }
        out
    }

    /// The marginal on `s` as a distribution in its own right. The marginal
    /// on `∅` is the point mass on the empty outcome.
    pub fn marginal(&self, s: Subset) -> JointDistribution {
        JointDistribution {
            alphabet_sizes: s.iter().map(|i| self.alphabet_sizes[i]).collect(),
            pmf: self.marginal_pmf(s),
        }
    }

    /// Per-coordinate marginal pmf as a dense vector over the alphabet.
    pub fn coordinate_pmf(&self, i: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.alphabet_sizes[i] as usize];
        for (x, p) in &self.pmf {
            out[x[i] as usize] += p;
        }
        out
    }

    /// `H(X_s)` in nats.
    pub fn entropy(&self, s: Subset) -> f64 {
        if s.is_empty() {
            return 0.0;
        }
        self.marginal_pmf(s).values().map(plogp).sum()
    }

    /// `H(X_s | X_t) = H(X_{s∪t}) - H(X_t)` in nats.
    pub fn conditional_entropy(&self, s: Subset, t: Subset) -> Result<f64> {
        if !s.is_disjoint(t) {
            return Err(Error::OverlappingSets);
        }
        Ok(self.entropy(s.union(t)) - self.entropy(t))
    }

    /// `∏_i P_{X_i}` over the product of the marginal supports.
    pub fn product_of_marginals(&self) -> Result<JointDistribution> {
        (0..self.n())
            .map(|i| self.coordinate_pmf(i).iter().filter(|p| !p.is_zero()).count() as u64)
            .try_fold(1u64, |acc, k| acc.checked_mul(k).filter(|&v| v <= PRODUCT_LIMIT))
            .ok_or(Error::GuardExceeded { what: "product support size", limit: PRODUCT_LIMIT })?;
        Self::product((0..self.n()).map(|i| self.coordinate_pmf(i)).collect())
    }

    pub fn is_product(&self) -> Result<bool> {
        Ok(*self == self.product_of_marginals()?)
    }
}

/// Largest product support materialised densely.
pub const PRODUCT_LIMIT: u64 = 1_000_000;

/// `s ↦ H(X_s)`, tabulated over all subsets.
#[derive(Clone, Debug)]
pub struct EntropySetFunction {
    table: setfn::Tabulated<f64>,
}

impl EntropySetFunction {
    pub fn new(p: &JointDistribution) -> Result<Self> {
        setfn::guard(p.n(), false)?;
        let f = setfn::FnSetFunction::new(p.n(), |s| p.entropy(s));
        Ok(EntropySetFunction { table: setfn::Tabulated::from_fn(&f)? })
    }
}

impl SetFunction for EntropySetFunction {
    type Value = f64;

    fn ground_size(&self) -> usize {
        self.table.ground_size()
    }

    fn value(&self, s: Subset) -> f64 {
        self.table.value(s)
    }
}

/// `ē(s) = H(X_s | X_{<s})` for a fixed order. Not submodular in general.
#[derive(Clone, Debug)]
pub struct ConditionalEntropySetFunction {
    entropy: EntropySetFunction,
    order: GroundOrder,
}

impl ConditionalEntropySetFunction {
    pub fn new(p: &JointDistribution, order: GroundOrder) -> Result<Self> {
        if order.len() != p.n() {
            return Err(Error::LengthMismatch { expected: p.n(), found: order.len() });
        }
        Ok(ConditionalEntropySetFunction { entropy: EntropySetFunction::new(p)?, order })
    }
}

impl SetFunction for ConditionalEntropySetFunction {
    type Value = f64;

    fn ground_size(&self) -> usize {
        self.entropy.ground_size()
    }

    fn value(&self, s: Subset) -> f64 {
        let before = self.order.before(s);
        self.entropy.value(s.union(before)) - self.entropy.value(before)
    }
}

/// The four-bit construction on which `ē` fails submodularity.
#[derive(Clone, Debug)]
pub struct Proposition3 {
    pub distribution: JointDistribution,
    pub s: Subset,
    pub t: Subset,
    /// `H(X4 | X1, X2, X3)`
    pub h4_given_123: f64,
    /// `H(X4 | X1, X3)`
    pub h4_given_13: f64,
    /// `ē(s) + ē(t)`
    pub lhs: f64,
    /// `ē(s ∪ t) + ē(s ∩ t)`
    pub rhs: f64,
}

impl Proposition3 {
    pub fn violation(&self) -> f64 {
        self.rhs - self.lhs
    }
}

/// `X1, X2, X3` independent fair bits and `X4 = X2`; witness `s = {1,3}`,
/// `t = {3,4}` under the natural order.
pub fn proposition3_counterexample() -> Proposition3 {
    let quarter = rational::ratio(1, 8);
    let entries = (0..8u32).map(|b| {
        let (x1, x2, x3) = (b >> 2 & 1, b >> 1 & 1, b & 1);
        (vec![x1, x2, x3, x2], quarter.clone())
    });
    let p = JointDistribution::new(vec![2; 4], entries).expect("fixed construction");
    let set = |v: &[usize]| Subset::from_one_based(v, 4).expect("in range");
    let ebar = ConditionalEntropySetFunction::new(&p, GroundOrder::natural(4)).expect("n = 4");
    let (s, t) = (set(&[1, 3]), set(&[3, 4]));
    Proposition3 {
        h4_given_123: p.conditional_entropy(set(&[4]), set(&[1, 2, 3])).expect("disjoint"),
        h4_given_13: p.conditional_entropy(set(&[4]), set(&[1, 3])).expect("disjoint"),
        lhs: ebar.value(s) + ebar.value(t),
        rhs: ebar.value(s.union(t)) + ebar.value(s.intersection(t)),
        distribution: p,
        s,
        t,
    }
}

/// `H⁻(X) = Σ_i H(X_i | X_{[n]∖i})`.
pub fn erasure_entropy(p: &JointDistribution) -> f64 {
    let n = p.n();
    let full = Subset::full(n);
    let whole = p.entropy(full);
    (0..n).map(|i| whole - p.entropy(full.without(i))).sum()
}

/// Upper and lower weak-form gaps for the `k`-sets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correlations {
    pub total: f64,
    pub dual_total: f64,
}

/// `g_U(e, S_k)` and `g_L(e, S_k)`; at `k = 1` these are the total and dual
/// total correlations.
pub fn correlations(p: &JointDistribution, k: usize) -> Result<Correlations> {
    let n = p.n();
    if k == 0 || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    let h = Hypergraph::standard(StandardCollection::KSets(k), n)?;
    let gamma = h.degree_covering()?;
    let e = FnEntropy(p);
    Ok(Correlations { total: setfn::weak_gap_upper(&e, &h, &gamma), dual_total: setfn::weak_gap_lower(&e, &h, &gamma) })
}

/// Untabulated entropy backend for one-off evaluations.
struct FnEntropy<'a>(&'a JointDistribution);

impl SetFunction for FnEntropy<'_> {
    type Value = f64;

    fn ground_size(&self) -> usize {
        self.0.n()
    }

    fn value(&self, s: Subset) -> f64 {
        self.0.entropy(s)
    }
}

/// Both sides of the entropy-power bound for one fractional partition.
#[derive(Clone, Debug, PartialEq)]
pub struct EntropyPowerBound {
    /// `N_c(X_{[n]})`
    pub lhs: f64,
    /// `Σ w_s N_c(X_s)`
    pub rhs: f64,
    /// `w_s = γ(s)|s|/n`, summing to one.
    pub weights: Vec<Rational>,
}

impl EntropyPowerBound {
    pub fn holds(&self, rel_tol: f64) -> bool {
        self.lhs <= self.rhs * (1.0 + rel_tol)
    }
}

/// `N_c(X_s) = exp(c H(X_s) / |s|)`.
pub fn entropy_power(p: &JointDistribution, s: Subset, c: f64) -> f64 {
    libm::exp(c * p.entropy(s) / s.len() as f64)
}

pub fn entropy_power_bound(p: &JointDistribution, h: &Hypergraph, gamma: &Weighting, c: f64) -> Result<EntropyPowerBound> {
    if !(c > 0.0) {
        return Err(Error::NonPositiveParameter("c"));
    }
    if h.n() != p.n() {
        return Err(Error::LengthMismatch { expected: p.n(), found: h.n() });
    }
    h.require_partition(gamma)?;
    let n = p.n() as i64;
    let weights: Vec<Rational> =
        h.edges().iter().zip(gamma.values()).map(|(s, g)| g * rational::ratio(s.len() as i64, n)).collect();
    let sum: Rational = weights.iter().sum();
    assert!(sum.is_one(), "partition weights |s|γ(s)/n must sum to one");
    let rhs = h.edges().iter().zip(&weights).map(|(&s, w)| rational::to_f64(w) * entropy_power(p, s, c)).sum();
    Ok(EntropyPowerBound { lhs: entropy_power(p, Subset::full(p.n()), c), rhs, weights })
}

/// `a_m = (1/C(n,m)) Σ_{|s| = n-m} N_c(X_s)` for `m = 0..n-1`.
///
/// Averages of per-element entropy powers shrink as the subsets grow, so the
/// returned sequence is nondecreasing in `m`.
pub fn entropy_power_monotonicity(p: &JointDistribution, c: f64) -> Result<Vec<f64>> {
    if !(c > 0.0) {
        return Err(Error::NonPositiveParameter("c"));
    }
    let n = p.n();
    setfn::guard(n, false)?;
    Ok((0..n)
        .map(|m| {
            let sets = Subset::k_subsets(n, n - m);
            sets.iter().map(|&s| entropy_power(p, s, c)).sum::<f64>() / sets.len() as f64
        })
        .collect())
}

/// Whether a sequence from [`entropy_power_monotonicity`] is nondecreasing
/// in `m` up to a relative tolerance.
pub fn is_nondecreasing(seq: &[f64], rel_tol: f64) -> bool {
    seq.windows(2).all(|w| w[0] <= w[1] * (1.0 + rel_tol))
}
