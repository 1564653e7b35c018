//! The JSON input document and its resolution into library types.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::algebra::{AmbientSet, GaussianRational, Matrix, Partition, StarAlgebra};
use crate::error::{Error, Result};
use crate::independence::{AlgebraPair, Limits, PartitionPair};
use crate::net::{NetSpec, SpacetimePoset};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    #[serde(default)]
    pub ambient: Vec<String>,
    #[serde(default)]
    pub algebras: IndexMap<String, AlgebraSpec>,
    #[serde(default)]
    pub pair: Option<PairSpec>,
    #[serde(default)]
    pub net: Option<NetInput>,
    #[serde(default)]
    pub options: Options,
    #[serde(default)]
    pub valuations: Option<ValuationsInput>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// Blocks as lists of point labels.
    Partition(Vec<Vec<String>>),
    Matrix(MatrixSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub n: usize,
    pub generators: Vec<Vec<Vec<Entry>>>,
}

/// A matrix entry: an integer, `[num, den]`, or `{"re": [n, d], "im": [n, d]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Ratio([i64; 2]),
    Complex(GaussianRational),
}

impl Entry {
    fn value(&self) -> Result<GaussianRational> {
        match self {
            Entry::Int(x) => Ok(GaussianRational::from_int(*x)),
            Entry::Ratio([n, d]) => GaussianRational::from_ratio(*n, *d),
            Entry::Complex(z) => Ok(z.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    pub left: String,
    pub right: String,
    #[serde(default)]
    pub meet_algebra: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetInput {
    pub regions: Vec<String>,
    #[serde(default)]
    pub leq: Vec<(String, String)>,
    #[serde(default)]
    pub spacelike: Vec<(String, String)>,
    /// Region name to algebra name.
    pub assignment: IndexMap<String, String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Options {
    #[serde(default)]
    pub max_bell: Option<u64>,
    #[serde(default)]
    pub max_dim: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub samples_per_pair: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationsInput {
    /// Algebra names of the contexts; default to the pair itself.
    #[serde(default)]
    pub left_context: Option<String>,
    #[serde(default)]
    pub right_context: Option<String>,
    #[serde(default)]
    pub mu1: Option<IndexMap<String, (i64, i64)>>,
    #[serde(default)]
    pub mu2: Option<IndexMap<String, (i64, i64)>>,
}

#[derive(Debug, Clone)]
pub enum Resolved {
    Partition(Partition),
    Matrix(StarAlgebra),
}

/// A parsed document with every algebra built.
#[derive(Debug, Clone)]
pub struct Workspace {
    pub doc: InputDocument,
    pub ambient: AmbientSet,
    pub algebras: IndexMap<String, Resolved>,
}

impl InputDocument {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("malformed input: {e}")))
    }
}

impl Workspace {
    pub fn build(doc: InputDocument, limits: &Limits) -> Result<Self> {
        let ambient = AmbientSet::new(doc.ambient.iter().cloned())?;
        let mut algebras = IndexMap::new();
        for (name, spec) in &doc.algebras {
            let resolved = match spec {
                AlgebraSpec::Partition(blocks) => {
                    if ambient.is_empty() {
                        return Err(Error::input(format!("algebra {name:?} needs a nonempty ambient set")));
                    }
                    Resolved::Partition(
                        ambient.partition(blocks.iter().map(|b| b.iter().map(String::as_str))).map_err(|e| {
                            Error::input(format!("algebra {name:?}: {e}"))
                        })?,
                    )
                }
                AlgebraSpec::Matrix(m) => Resolved::Matrix(build_matrix_algebra(name, m, limits)?),
            };
            algebras.insert(name.clone(), resolved);
        }
        Ok(Workspace { doc, ambient, algebras })
    }

    pub fn algebra(&self, name: &str) -> Result<&Resolved> {
        self.algebras.get(name).ok_or_else(|| Error::input(format!("unknown algebra {name:?}")))
    }

    pub fn partition(&self, name: &str) -> Result<&Partition> {
        match self.algebra(name)? {
            Resolved::Partition(p) => Ok(p),
            Resolved::Matrix(_) => Err(Error::input(format!("algebra {name:?} is not a partition algebra"))),
        }
    }

    fn pair_spec(&self) -> Result<&PairSpec> {
        self.doc.pair.as_ref().ok_or_else(|| Error::input("input has no pair section"))
    }

    pub fn pair(&self) -> Result<AlgebraPair> {
        let spec = self.pair_spec()?;
        match (self.algebra(&spec.left)?, self.algebra(&spec.right)?) {
            (Resolved::Partition(_), Resolved::Partition(_)) => Ok(AlgebraPair::Partition(self.partition_pair("pair analysis")?)),
            (Resolved::Matrix(a), Resolved::Matrix(b)) => {
                if spec.meet_algebra.is_some() {
                    return Err(Error::input("meet_algebra is only supported for partition pairs"));
                }
                AlgebraPair::matrices(a.clone(), b.clone())
            }
            _ => Err(Error::input("pair mixes a partition algebra with a matrix algebra")),
        }
    }

    /// The pair as partitions; a matrix pair is an unsupported-engine error.
    pub fn partition_pair(&self, what: &str) -> Result<PartitionPair> {
        let spec = self.pair_spec()?;
        let side = |name: &str| match self.algebra(name)? {
            Resolved::Partition(p) => Ok(p.clone()),
            Resolved::Matrix(_) => Err(Error::UnsupportedEngine(what.into())),
        };
        let pair = PartitionPair::new(side(&spec.left)?, side(&spec.right)?)?;
        match &spec.meet_algebra {
            Some(m) => pair.with_meet(self.partition(m)?.clone()),
            None => Ok(pair),
        }
    }

    pub fn net(&self) -> Result<NetSpec> {
        let net = self.doc.net.as_ref().ok_or_else(|| Error::input("input has no net section"))?;
        let st = SpacetimePoset::new(net.regions.clone(), &net.leq, &net.spacelike)?;
        for region in net.assignment.keys() {
            if st.index_of(region).is_none() {
                return Err(Error::input(format!("assignment names unknown region {region:?}")));
            }
        }
        let mut assignment = Vec::with_capacity(net.regions.len());
        for region in &net.regions {
            let name =
                net.assignment.get(region).ok_or_else(|| Error::input(format!("region {region:?} has no algebra")))?;
            assignment.push(self.partition(name)?.clone());
        }
        NetSpec::new(st, self.ambient.clone(), assignment)
    }
}

fn build_matrix_algebra(name: &str, spec: &MatrixSpec, limits: &Limits) -> Result<StarAlgebra> {
    if spec.n > limits.max_dim {
        return Err(Error::Resource { what: format!("matrix dimension of {name:?}"), size: spec.n as u128, bound: limits.max_dim as u128 });
    }
    let mut gens = Vec::with_capacity(spec.generators.len());
    for g in &spec.generators {
        let rows = g
            .iter()
            .map(|row| row.iter().map(Entry::value).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let m = Matrix::from_rows(rows)?;
        if m.dim() != spec.n {
            return Err(Error::DimensionMismatch { expected: spec.n, found: m.dim() });
        }
        gens.push(m);
    }
    StarAlgebra::generated(spec.n, &gens)
}
