//! Positive-definite matrices and determinantal inequalities from the
//! submodularity of `s ↦ log |K(s)|`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, StandardCollection, Weighting};
use crate::rational;
use crate::setfn::{self, SetFunction};
use crate::subset::{Subset, MAX_GROUND};

const SYMMETRY_TOLERANCE: f64 = 1e-12;
const PIVOT_THRESHOLD: f64 = 1e-10;

/// `ln(2πe)`.
pub const LN_2PIE: f64 = 2.837_877_066_409_345_5;

/// A symmetric, strictly positive-definite matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PosDefMatrix {
    n: usize,
    a: Vec<f64>,
}

impl PosDefMatrix {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyGroundSet);
        }
        if n >= MAX_GROUND {
            return Err(Error::GroundSetTooLarge { n, max: MAX_GROUND - 1 });
        }
        if let Some(row) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch { expected: n, found: row.len() });
        }
        let scale = rows.iter().flatten().fold(0.0f64, |m, x| m.max(x.abs()));
        if !scale.is_finite() {
            return Err(Error::NotPositiveDefinite { position: 1, pivot: f64::NAN });
        }
        let mut a = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if (rows[i][j] - rows[j][i]).abs() > SYMMETRY_TOLERANCE * scale {
                    return Err(Error::NotSymmetric { row: i + 1, col: j + 1 });
                }
                a[i * n + j] = 0.5 * (rows[i][j] + rows[j][i]);
            }
        }
        let m = PosDefMatrix { n, a };
        m.cholesky_log_det(Subset::full(n))?;
        Ok(m)
    }

    pub fn diagonal(d: &[f64]) -> Result<Self> {
        let n = d.len();
        Self::new((0..n).map(|i| (0..n).map(|j| if i == j { d[i] } else { 0.0 }).collect()).collect())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::diagonal(&vec![1.0; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.a.chunks(self.n).map(<[f64]>::to_vec).collect()
    }

    /// Cholesky factorisation of `K(s)`, returning `log |K(s)|`.
    fn cholesky_log_det(&self, s: Subset) -> Result<f64> {
        let idx: Vec<usize> = s.iter().collect();
        let m = idx.len();
        let max_diag = idx.iter().map(|&i| self.get(i, i)).fold(0.0f64, f64::max);
        let mut l = vec![0.0; m * m];
        let mut log_det = 0.0;
        for j in 0..m {
            let mut d = self.get(idx[j], idx[j]);
            for k in 0..j {
                d -= l[j * m + k] * l[j * m + k];
            }
            if !(d > PIVOT_THRESHOLD * max_diag) {
                return Err(Error::NotPositiveDefinite { position: idx[j] + 1, pivot: d });
            }
            let root = libm::sqrt(d);
            l[j * m + j] = root;
            log_det += libm::log(d);
            for i in j + 1..m {
                let mut v = self.get(idx[i], idx[j]);
                for k in 0..j {
                    v -= l[i * m + k] * l[j * m + k];
                }
                l[i * m + j] = v / root;
            }
        }
        Ok(log_det)
    }

    /// `log |K(s)|`, with `log |K(∅)| = 0`.
    pub fn log_principal_minor(&self, s: Subset) -> f64 {
        self.cholesky_log_det(s).expect("principal submatrices of a validated matrix are positive definite")
    }

    /// `|K(s)|`, with `|K(∅)| = 1`.
    pub fn principal_minor(&self, s: Subset) -> f64 {
        libm::exp(self.log_principal_minor(s))
    }

    pub fn log_det(&self) -> f64 {
        self.log_principal_minor(Subset::full(self.n))
    }
}

/// `s ↦ log |K(s)|`.
#[derive(Clone, Debug)]
pub struct LogDet<'a>(pub &'a PosDefMatrix);

impl SetFunction for LogDet<'_> {
    type Value = f64;

    fn ground_size(&self) -> usize {
        self.0.n()
    }

    fn value(&self, s: Subset) -> f64 {
        self.0.log_principal_minor(s)
    }
}

/// Differential entropy of the Gaussian marginal `N(0, K(s))`, in nats.
pub fn gaussian_entropy(k: &PosDefMatrix, s: Subset) -> f64 {
    0.5 * (s.len() as f64 * LN_2PIE + k.log_principal_minor(s))
}

/// `s ↦ h(X_s)` for `X ~ N(0, K)`. Accepts fractional partitions only.
#[derive(Clone, Debug)]
pub struct GaussianEntropy<'a>(pub &'a PosDefMatrix);

impl SetFunction for GaussianEntropy<'_> {
    type Value = f64;

    fn ground_size(&self) -> usize {
        self.0.n()
    }

    fn value(&self, s: Subset) -> f64 {
        gaussian_entropy(self.0, s)
    }

    fn partitions_only(&self) -> bool {
        true
    }
}

/// A determinant inequality `lhs <= rhs` held in log form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogInequality {
    pub log_lhs: f64,
    pub log_rhs: f64,
}

impl LogInequality {
    /// `log rhs - log lhs`.
    pub fn slack(&self) -> f64 {
        self.log_rhs - self.log_lhs
    }

    /// `lhs <= rhs (1 + rel_tol)`.
    pub fn holds(&self, rel_tol: f64) -> bool {
        self.slack() >= -rel_tol
    }

    pub fn is_equality(&self, rel_tol: f64) -> bool {
        self.slack().abs() <= rel_tol
    }
}

/// `∏ (|K| / |K(s^c)|)^γ(s) <= |K| <= ∏ |K(s)|^γ(s)`, as logarithms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DeterminantBounds {
    pub log_lower: f64,
    pub log_det: f64,
    pub log_upper: f64,
}

impl DeterminantBounds {
    pub fn lower(&self) -> f64 {
        libm::exp(self.log_lower)
    }

    pub fn det(&self) -> f64 {
        libm::exp(self.log_det)
    }

    pub fn upper(&self) -> f64 {
        libm::exp(self.log_upper)
    }

    /// Both products within relative tolerance `rel_tol` of the sandwich.
    pub fn holds(&self, rel_tol: f64) -> bool {
        self.log_lower <= self.log_det + rel_tol && self.log_det <= self.log_upper + rel_tol
    }
}

pub fn corollary3_bounds(k: &PosDefMatrix, h: &Hypergraph, gamma: &Weighting) -> Result<DeterminantBounds> {
    if h.n() != k.n() {
        return Err(Error::LengthMismatch { expected: k.n(), found: h.n() });
    }
    h.require_partition(gamma)?;
    let n = k.n();
    let log_det = k.log_det();
    let mut log_lower = 0.0;
    let mut log_upper = 0.0;
    for (&s, g) in h.edges().iter().zip(gamma.values()) {
        let g = rational::to_f64(g);
        log_upper += g * k.log_principal_minor(s);
        log_lower += g * (log_det - k.log_principal_minor(s.complement(n)));
    }
    Ok(DeterminantBounds { log_lower, log_det, log_upper })
}

/// Weak-form bounds on `h(X_{[n]})` for the Gaussian backend, next to the
/// exact value. Twice these, less `n ln(2πe)`, are the log-determinant bounds.
pub fn gaussian_entropy_bounds(k: &PosDefMatrix, h: &Hypergraph, gamma: &Weighting) -> Result<(f64, f64, f64)> {
    let f = GaussianEntropy(k);
    let lower = setfn::weak_lower_bound(&f, h, gamma)?;
    let upper = setfn::weak_upper_bound(&f, h, gamma)?;
    Ok((lower, f.value(Subset::full(k.n())), upper))
}

/// `|K| <= ∏ K_ii`.
pub fn hadamard(k: &PosDefMatrix) -> LogInequality {
    LogInequality { log_lhs: k.log_det(), log_rhs: (0..k.n()).map(|i| libm::log(k.get(i, i))).sum() }
}

/// `|K| <= |K(s)| |K(s^c)|`.
pub fn fischer(k: &PosDefMatrix, s: Subset) -> Result<LogInequality> {
    let n = k.n();
    if let Some(i) = s.difference(Subset::full(n)).first() {
        return Err(Error::IndexOutOfRange { index: i + 1, n });
    }
    Ok(LogInequality { log_lhs: k.log_det(), log_rhs: k.log_principal_minor(s) + k.log_principal_minor(s.complement(n)) })
}

/// `|K|^{C(n-1,k-1)} <= ∏_{|s|=k} |K(s)|`.
pub fn szasz(k: &PosDefMatrix, level: usize) -> Result<LogInequality> {
    let n = k.n();
    let h = Hypergraph::standard(StandardCollection::KSets(level), n)?;
    let r = h.regularity().expect("k-sets are regular") as f64;
    Ok(LogInequality { log_lhs: r * k.log_det(), log_rhs: h.edges().iter().map(|&s| k.log_principal_minor(s)).sum() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::integer;

    fn two() -> PosDefMatrix {
        PosDefMatrix::new(vec![vec![2.0, 1.0], vec![1.0, 2.0]]).unwrap()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn minors() {
        let k = two();
        assert!(close(k.principal_minor(Subset::full(2)), 3.0));
        assert!(close(k.principal_minor(Subset::singleton(0)), 2.0));
        assert!(close(k.principal_minor(Subset::EMPTY), 1.0));
        let id = PosDefMatrix::identity(4).unwrap();
        assert!(Subset::all(4).all(|s| close(id.principal_minor(s), 1.0)));
    }

    #[test]
    fn validation() {
        assert!(matches!(PosDefMatrix::new(vec![vec![1.0, 2.0], vec![2.0, 1.0]]), Err(Error::NotPositiveDefinite { position: 2, .. })));
        assert_eq!(PosDefMatrix::new(vec![vec![2.0, 1.0], vec![0.0, 2.0]]), Err(Error::NotSymmetric { row: 1, col: 2 }));
        assert!(matches!(PosDefMatrix::new(vec![vec![1.0, 1.0], vec![1.0, 1.0]]), Err(Error::NotPositiveDefinite { .. })));
        assert!(PosDefMatrix::new(vec![vec![1.0], vec![1.0]]).is_err());
    }

    #[test]
    fn singletons_sandwich() {
        let k = two();
        let h = Hypergraph::standard(StandardCollection::Singletons, 2).unwrap();
        let b = corollary3_bounds(&k, &h, &Weighting::uniform(2, integer(1)).unwrap()).unwrap();
        assert!(close(b.lower(), 2.25) && close(b.det(), 3.0) && close(b.upper(), 4.0));
        assert!(b.holds(0.0));
    }

    #[test]
    fn classical() {
        assert!(close(hadamard(&two()).log_rhs, libm::log(4.0)));
        let k = PosDefMatrix::new(vec![vec![2.0, 1.0, 0.0], vec![1.0, 2.0, 1.0], vec![0.0, 1.0, 2.0]]).unwrap();
        let f = fischer(&k, Subset::singleton(0)).unwrap();
        assert!(close(libm::exp(f.log_lhs), 4.0) && close(libm::exp(f.log_rhs), 6.0));
        let d = PosDefMatrix::diagonal(&[1.5, 2.0, 7.0]).unwrap();
        assert!(hadamard(&d).is_equality(1e-12));
        assert!(szasz(&d, 2).unwrap().is_equality(1e-12));
        assert!(szasz(&k, 2).unwrap().holds(0.0));
        assert!(szasz(&k, 4).is_err());
    }

    #[test]
    fn gaussian() {
        let one = PosDefMatrix::identity(1).unwrap();
        assert!((gaussian_entropy(&one, Subset::full(1)) - 1.4189).abs() < 1e-4);
        assert!(close(LN_2PIE, libm::log(2.0 * core::f64::consts::PI * core::f64::consts::E)));
        let h = Hypergraph::standard(StandardCollection::Singletons, 2).unwrap();
        let unit = Weighting::uniform(2, integer(1)).unwrap();
        let covering = Weighting::uniform(2, integer(2)).unwrap();
        assert_eq!(setfn::weak_upper_bound(&GaussianEntropy(&two()), &h, &covering), Err(Error::PartitionRequired));
        let (lo, exact, hi) = gaussian_entropy_bounds(&two(), &h, &unit).unwrap();
        let b = corollary3_bounds(&two(), &h, &unit).unwrap();
        assert!(close(2.0 * lo - 2.0 * LN_2PIE, b.log_lower));
        assert!(close(2.0 * exact - 2.0 * LN_2PIE, b.log_det));
        assert!(close(2.0 * hi - 2.0 * LN_2PIE, b.log_upper));
    }
}
