//! JSON input formats. Indices are 1-based; rationals may be written as
//! strings (`"3/4"`, `"0.25"`) or plain JSON numbers.

use std::path::Path;

use fracbound_core::counting::Graph;
use fracbound_core::detineq::PosDefMatrix;
use fracbound_core::entropy::JointDistribution;
use fracbound_core::hypergraph::{Hypergraph, Weighting};
use fracbound_core::rational::{self, Rational};
use fracbound_core::relent::{MeasurePair, ProductMeasure};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

/// A rational written either as a string or as a JSON number.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Text(String),
    Number(serde_json::Number),
}

impl Num {
    pub fn to_rational(&self) -> CliResult<Rational> {
        let text = match self {
            Num::Text(s) => s.trim().to_string(),
            Num::Number(n) => n.to_string(),
        };
        rational::parse(&text).ok_or_else(|| CliError::Parse(format!("not a rational number: {text:?}")))
    }

    pub fn from_rational(r: &Rational) -> Self {
        Num::Text(rational::format(r))
    }
}

fn rationals(values: &[Num]) -> CliResult<Vec<Rational>> {
    values.iter().map(Num::to_rational).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypergraphFile {
    pub n: usize,
    pub edges: Vec<Vec<usize>>,
}

impl HypergraphFile {
    pub fn build(&self) -> CliResult<Hypergraph> {
        Ok(Hypergraph::from_one_based(self.n, &self.edges)?)
    }

    pub fn from_hypergraph(h: &Hypergraph) -> Self {
        HypergraphFile { n: h.n(), edges: h.edges().iter().map(|s| s.to_one_based()).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightingFile {
    pub weights: Vec<Num>,
}

impl WeightingFile {
    pub fn build(&self) -> CliResult<Weighting> {
        Ok(Weighting::new(rationals(&self.weights)?)?)
    }

    pub fn from_weighting(w: &Weighting) -> Self {
        WeightingFile { weights: w.values().iter().map(Num::from_rational).collect() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmfEntry {
    pub x: Vec<u32>,
    pub p: Num,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionFile {
    pub alphabet_sizes: Vec<u32>,
    pub pmf: Vec<PmfEntry>,
}

impl DistributionFile {
    pub fn build(&self) -> CliResult<JointDistribution> {
        let entries = self.pmf.iter().map(|e| Ok((e.x.clone(), e.p.to_rational()?))).collect::<CliResult<Vec<_>>>()?;
        Ok(JointDistribution::new(self.alphabet_sizes.clone(), entries)?)
    }

    pub fn from_distribution(p: &JointDistribution) -> Self {
        DistributionFile {
            alphabet_sizes: p.alphabet_sizes().to_vec(),
            pmf: p.pmf().iter().map(|(x, q)| PmfEntry { x: x.clone(), p: Num::from_rational(q) }).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairFile {
    pub p: DistributionFile,
    pub q_marginals: Vec<Vec<Num>>,
}

impl PairFile {
    pub fn build(&self) -> CliResult<MeasurePair> {
        let q = product_measure(&self.q_marginals)?;
        Ok(MeasurePair::new(self.p.build()?, q)?)
    }
}

fn product_measure(marginals: &[Vec<Num>]) -> CliResult<ProductMeasure> {
    let m = marginals.iter().map(|m| rationals(m)).collect::<CliResult<Vec<_>>>()?;
    Ok(ProductMeasure::new(m)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixFile {
    pub fn build(&self) -> CliResult<PosDefMatrix> {
        if self.rows.len() != self.n {
            return Err(CliError::Parse(format!("n = {} but {} rows given", self.n, self.rows.len())));
        }
        Ok(PosDefMatrix::new(self.rows.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub n: usize,
    #[serde(default)]
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub loops: Vec<usize>,
}

impl GraphFile {
    pub fn build(&self) -> CliResult<Graph> {
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        Ok(Graph::new(self.n, &edges, &self.loops)?)
    }

    pub fn from_graph(g: &Graph) -> Self {
        GraphFile { n: g.n(), edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(), loops: g.loops() }
    }
}

/// A product measure and a positive function listed over its alphabet in
/// lexicographic order (last coordinate fastest).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorizationFile {
    pub q_marginals: Vec<Vec<Num>>,
    pub g: Vec<Num>,
}

impl TensorizationFile {
    pub fn build(&self) -> CliResult<(ProductMeasure, Vec<Rational>)> {
        Ok((product_measure(&self.q_marginals)?, rationals(&self.g)?))
    }
}

/// Reads a file, returning its bytes for digesting alongside the parsed value.
pub fn load<T: DeserializeOwned>(path: &Path) -> CliResult<(T, Vec<u8>)> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    let value = serde_json::from_slice(&bytes).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))?;
    Ok((value, bytes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use fracbound_core::rational::ratio;

    #[test]
    fn numbers_in_either_form() {
        let w: WeightingFile = serde_json::from_str(r#"{"weights": ["1/2", 0.25, 3, " 2/6 "]}"#).unwrap();
        assert_eq!(w.build().unwrap().values(), &[ratio(1, 2), ratio(1, 4), ratio(3, 1), ratio(1, 3)]);
        let bad: WeightingFile = serde_json::from_str(r#"{"weights": ["x"]}"#).unwrap();
        assert!(matches!(bad.build(), Err(CliError::Parse(_))));
    }

    #[test]
    fn round_trips() {
        let d: DistributionFile =
            serde_json::from_str(r#"{"alphabet_sizes":[2,2],"pmf":[{"x":[0,0],"p":"1/2"},{"x":[1,1],"p":"1/2"}]}"#).unwrap();
        let p = d.build().unwrap();
        assert_eq!(DistributionFile::from_distribution(&p).build().unwrap(), p);
        let g = GraphFile { n: 3, edges: vec![[1, 2], [2, 3]], loops: vec![3] }.build().unwrap();
        assert_eq!(GraphFile::from_graph(&g).build().unwrap(), g);
        let h = HypergraphFile { n: 3, edges: vec![vec![1, 2], vec![3]] }.build().unwrap();
        assert_eq!(HypergraphFile::from_hypergraph(&h).build().unwrap(), h);
    }

    #[test]
    fn unknown_fields_rejected() {
        assert!(serde_json::from_str::<HypergraphFile>(r#"{"n":2,"edges":[],"extra":1}"#).is_err());
    }
}
