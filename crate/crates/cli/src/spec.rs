//! The small spec language for collections, weightings and orders.

use std::path::PathBuf;

use fracbound_core::hypergraph::{Hypergraph, StandardCollection, Weighting};
use fracbound_core::lp;
use fracbound_core::rational;
use fracbound_core::setfn::GroundOrder;

use crate::error::{CliError, CliResult};
use crate::formats::{self, HypergraphFile, WeightingFile};
use crate::report::InputLog;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CollectionSpec {
    KSets(usize),
    Singletons,
    LeaveOneOut,
    Consecutive(usize),
    File(PathBuf),
}

fn parse_count(text: &str, what: &str) -> CliResult<usize> {
    text.parse().map_err(|_| CliError::Parse(format!("{what}: expected a positive integer, got {text:?}")))
}

impl std::str::FromStr for CollectionSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s.split_once(':') {
            None if s == "singletons" => Ok(CollectionSpec::Singletons),
            None if s == "leave-one-out" => Ok(CollectionSpec::LeaveOneOut),
            Some(("k-sets", k)) => Ok(CollectionSpec::KSets(parse_count(k, "k-sets")?)),
            Some(("consecutive", k)) => Ok(CollectionSpec::Consecutive(parse_count(k, "consecutive")?)),
            Some(("file", path)) => Ok(CollectionSpec::File(path.into())),
            _ => Err(CliError::Parse(format!("unknown collection {s:?}"))),
        }
    }
}

impl CollectionSpec {
    pub fn resolve(&self, n: usize, log: &mut InputLog) -> CliResult<Hypergraph> {
        let kind = match self {
            CollectionSpec::KSets(k) => StandardCollection::KSets(*k),
            CollectionSpec::Singletons => StandardCollection::Singletons,
            CollectionSpec::LeaveOneOut => StandardCollection::AllMinusOne,
            CollectionSpec::Consecutive(k) => StandardCollection::Consecutive(*k),
            CollectionSpec::File(path) => {
                let (file, bytes): (HypergraphFile, _) = formats::load(path)?;
                log.record(path, &bytes);
                let h = file.build()?;
                if h.n() != n {
                    return Err(CliError::Parse(format!("collection is on n = {} but the input has n = {n}", h.n())));
                }
                return Ok(h);
            }
        };
        Ok(Hypergraph::standard(kind, n)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightingSpec {
    DegreeCovering,
    DegreePacking,
    Unit,
    File(PathBuf),
    LpOptimal,
}

impl std::str::FromStr for WeightingSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "degree-covering" => Ok(WeightingSpec::DegreeCovering),
            "degree-packing" => Ok(WeightingSpec::DegreePacking),
            "unit" => Ok(WeightingSpec::Unit),
            "lp-optimal" => Ok(WeightingSpec::LpOptimal),
            _ => match s.strip_prefix("file:") {
                Some(path) => Ok(WeightingSpec::File(path.into())),
                None => Err(CliError::Parse(format!("unknown weighting {s:?}"))),
            },
        }
    }
}

/// Which side of the sandwich a weighting feeds; `lp-optimal` means the
/// cheapest covering for the upper side and the heaviest packing for the lower.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Upper,
    Lower,
}

impl WeightingSpec {
    pub fn resolve(&self, h: &Hypergraph, side: Side, log: &mut InputLog) -> CliResult<Weighting> {
        let ones = vec![rational::one(); h.len()];
        Ok(match self {
            WeightingSpec::DegreeCovering => h.degree_covering()?,
            WeightingSpec::DegreePacking => h.degree_packing()?,
            WeightingSpec::Unit => Weighting::new(ones)?,
            WeightingSpec::LpOptimal => match side {
                Side::Upper => lp::optimal_fractional_covering(h, &ones)?.0,
                Side::Lower => lp::optimal_fractional_packing(h, &ones)?.0,
            },
            WeightingSpec::File(path) => {
                let (file, bytes): (WeightingFile, _) = formats::load(path)?;
                log.record(path, &bytes);
                file.build()?
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderSpec {
    Natural,
    Sequence(Vec<usize>),
}

impl std::str::FromStr for OrderSpec {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        if s == "natural" {
            return Ok(OrderSpec::Natural);
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("bad order entry {t:?}"))))
            .collect::<CliResult<Vec<_>>>()
            .map(OrderSpec::Sequence)
    }
}

impl OrderSpec {
    pub fn resolve(&self, n: usize) -> CliResult<GroundOrder> {
        match self {
            OrderSpec::Natural => Ok(GroundOrder::natural(n)),
            OrderSpec::Sequence(seq) => {
                if seq.len() != n {
                    return Err(CliError::Parse(format!("order lists {} indices but n = {n}", seq.len())));
                }
                Ok(GroundOrder::from_one_based(seq)?)
            }
        }
    }
}

/// Comma-separated 1-based indices, e.g. `1,3`.
pub fn parse_indices(s: &str) -> CliResult<Vec<usize>> {
    s.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| t.trim().parse::<usize>().map_err(|_| CliError::Parse(format!("bad index {t:?}"))))
        .collect()
}
