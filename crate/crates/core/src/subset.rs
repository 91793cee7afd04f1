//! Subsets of a ground set of at most 64 elements, stored as bitmasks.
//!
//! Internally indices are 0-based; the `*_one_based` helpers translate at the
//! boundary.

use core::fmt;

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Largest ground set a [`Subset`] can describe.
pub const MAX_GROUND: usize = 64;

/// Default ceiling on `n` for anything that enumerates all `2^n` subsets.
pub const ENUMERATION_LIMIT: usize = 20;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub const fn from_bits(bits: u64) -> Self {
        Subset(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_GROUND);
        if n == MAX_GROUND {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_GROUND);
        Subset(1u64 << i)
    }

    /// The first `k` elements of the ground set.
    pub fn prefix(k: usize) -> Self {
        Self::full(k)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    /// Builds a subset of `{1..n}` from 1-based indices, rejecting out-of-range ones.
    pub fn from_one_based(indices: &[usize], n: usize) -> Result<Self> {
        let mut s = Subset::EMPTY;
        for &i in indices {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            s = s.with(i - 1);
        }
        Ok(s)
    }

    pub fn to_one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_GROUND && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1u64 << i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1u64 << i))
    }

    #[must_use]
    pub fn union(self, other: Subset) -> Self {
        Subset(self.0 | other.0)
    }

    #[must_use]
    pub fn intersection(self, other: Subset) -> Self {
        Subset(self.0 & other.0)
    }

    #[must_use]
    pub fn difference(self, other: Subset) -> Self {
        Subset(self.0 & !other.0)
    }

    /// Complement inside `{0, .., n-1}`.
    #[must_use]
    pub fn complement(self, n: usize) -> Self {
        Subset::full(n).difference(self)
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Smallest element, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> Elements {
        Elements(self.0)
    }

    /// All subsets of `{0, .., n-1}` in increasing bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n < MAX_GROUND, "cannot enumerate subsets of a 64-element ground set");
        (0..1u64 << n).map(Subset)
    }

    /// All `k`-element subsets of `{0, .., n-1}` in lexicographic order of
    /// their sorted element lists.
    pub fn k_subsets(n: usize, k: usize) -> Vec<Subset> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Subset>) {
            if current.len() == k {
                out.push(Subset::from_indices(current.iter().copied()));
                return;
            }
            let remaining = k - current.len();
            for i in start..=n - remaining {
                current.push(i);
                rec(i + 1, n, k, current, out);
                current.pop();
            }
        }
        if k <= n {
            rec(0, n, k, &mut current, &mut out);
        }
        out
    }
}

pub struct Elements(u64);

impl Iterator for Elements {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl IntoIterator for Subset {
    type Item = usize;
    type IntoIter = Elements;

    fn into_iter(self) -> Elements {
        self.iter()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints 1-based, e.g. `{1,3}`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}
