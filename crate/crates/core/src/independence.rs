//! Independence conditions for a pair of subalgebras, sorted by strength:
//! microcausality, extended locality, C*-independence (the Schlieder
//! property) and C*-independence in the product sense, plus strong locality
//! and the unit law.
//!
//! The partition engine decides everything exactly. The matrix engine decides
//! microcausality, extended locality and product sense; it reports the
//! Schlieder property only when the product-sense certificate holds and
//! leaves the context-level conditions undetermined.

use std::fmt;
use std::str::FromStr;

use indexmap::IndexMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::{multiplication_kernel_dim, Matrix, Partition, StarAlgebra};
use crate::contexts::{ContextPoset, DEFAULT_MAX_BELL};
use crate::error::{Error, Result};

/// Size guards shared by every context-enumerating analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest context poset to enumerate.
    pub max_bell: u128,
    /// Largest matrix dimension accepted by the matrix engine.
    pub max_dim: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_bell: DEFAULT_MAX_BELL, max_dim: 6 }
    }
}

/// Two commutative subalgebras `S_A`, `S_B` of `C(X)`, with an optional
/// meet algebra standing in for `A(O₁ ∧ O₂)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPair {
    left: Partition,
    right: Partition,
    meet: Option<Partition>,
}

impl PartitionPair {
    pub fn new(left: Partition, right: Partition) -> Result<Self> {
        if left.ambient_len() != right.ambient_len() {
            return Err(Error::AmbientMismatch { left: left.ambient_len(), right: right.ambient_len() });
        }
        Ok(PartitionPair { left, right, meet: None })
    }

    /// Overrides the meet algebra; it must be a subalgebra of both sides.
    pub fn with_meet(mut self, meet: Partition) -> Result<Self> {
        if !meet.is_coarser(&self.left)? || !meet.is_coarser(&self.right)? {
            return Err(Error::input("meet algebra must be contained in both algebras"));
        }
        self.meet = Some(meet);
        Ok(self)
    }

    pub fn left(&self) -> &Partition {
        &self.left
    }

    pub fn right(&self) -> &Partition {
        &self.right
    }

    pub fn explicit_meet(&self) -> Option<&Partition> {
        self.meet.as_ref()
    }

    /// `A ∩ B`.
    pub fn intersection(&self) -> Partition {
        self.left.overlap_join(&self.right).expect("same ambient")
    }

    /// The meet algebra: the explicit one if given, `A ∩ B` otherwise.
    pub fn meet_algebra(&self) -> Partition {
        self.meet.clone().unwrap_or_else(|| self.intersection())
    }

    /// `A ∨ B`.
    pub fn join(&self) -> Partition {
        self.left.common_refinement(&self.right).expect("same ambient")
    }

    pub fn ambient_len(&self) -> usize {
        self.left.ambient_len()
    }

    /// The same pair with points relabelled by `perm`.
    pub fn permute(&self, perm: &[usize]) -> PartitionPair {
        PartitionPair {
            left: self.left.permute(perm),
            right: self.right.permute(perm),
            meet: self.meet.as_ref().map(|m| m.permute(perm)),
        }
    }

    pub fn swapped(&self) -> PartitionPair {
        PartitionPair { left: self.right.clone(), right: self.left.clone(), meet: self.meet.clone() }
    }
}

/// Two unital *-subalgebras of the same `M_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPair {
    left: StarAlgebra,
    right: StarAlgebra,
}

impl MatrixPair {
    pub fn new(left: StarAlgebra, right: StarAlgebra) -> Result<Self> {
        if left.matrix_dim() != right.matrix_dim() {
            return Err(Error::DimensionMismatch { expected: left.matrix_dim(), found: right.matrix_dim() });
        }
        Ok(MatrixPair { left, right })
    }

    pub fn left(&self) -> &StarAlgebra {
        &self.left
    }

    pub fn right(&self) -> &StarAlgebra {
        &self.right
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraPair {
    Partition(PartitionPair),
    Matrix(MatrixPair),
}

impl AlgebraPair {
    pub fn partitions(left: Partition, right: Partition) -> Result<Self> {
        Ok(AlgebraPair::Partition(PartitionPair::new(left, right)?))
    }

    pub fn matrices(left: StarAlgebra, right: StarAlgebra) -> Result<Self> {
        Ok(AlgebraPair::Matrix(MatrixPair::new(left, right)?))
    }

    pub fn engine(&self) -> Engine {
        match self {
            AlgebraPair::Partition(_) => Engine::Partition,
            AlgebraPair::Matrix(_) => Engine::Matrix,
        }
    }

    pub fn as_partition(&self) -> Option<&PartitionPair> {
        match self {
            AlgebraPair::Partition(p) => Some(p),
            AlgebraPair::Matrix(_) => None,
        }
    }
}

impl From<PartitionPair> for AlgebraPair {
    fn from(p: PartitionPair) -> Self {
        AlgebraPair::Partition(p)
    }
}

impl From<MatrixPair> for AlgebraPair {
    fn from(p: MatrixPair) -> Self {
        AlgebraPair::Matrix(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Engine {
    Partition,
    Matrix,
}

/// Three-valued outcome; serialises as `true`, `false` or `"undetermined"`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    True,
    False,
    Undetermined,
}

impl Verdict {
    pub fn is_true(self) -> bool {
        self == Verdict::True
    }

    pub fn is_false(self) -> bool {
        self == Verdict::False
    }

    /// Kleene conjunction.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::False, _) | (_, Verdict::False) => Verdict::False,
            (Verdict::True, Verdict::True) => Verdict::True,
            _ => Verdict::Undetermined,
        }
    }
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Undetermined => "undetermined",
        })
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Verdict::True => s.serialize_bool(true),
            Verdict::False => s.serialize_bool(false),
            Verdict::Undetermined => s.serialize_str("undetermined"),
        }
    }
}

impl<'de> Deserialize<'de> for Verdict {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Bool(bool),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Bool(b) => Ok(b.into()),
            Raw::Text(t) if t == "undetermined" => Ok(Verdict::Undetermined),
            Raw::Text(t) => Err(serde::de::Error::custom(format!("unknown verdict {t:?}"))),
        }
    }
}

/// The conditions reported by [`hierarchy_report`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    Microcausality,
    ExtendedLocality,
    Schlieder,
    CstarIndependent,
    ProductSense,
    StrongLocality,
    UnitLaw,
}

impl Condition {
    pub const ALL: [Condition; 7] = [
        Condition::Microcausality,
        Condition::ExtendedLocality,
        Condition::Schlieder,
        Condition::CstarIndependent,
        Condition::ProductSense,
        Condition::StrongLocality,
        Condition::UnitLaw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::Microcausality => "microcausality",
            Condition::ExtendedLocality => "extended-locality",
            Condition::Schlieder => "schlieder",
            Condition::CstarIndependent => "cstar-independence",
            Condition::ProductSense => "product-sense",
            Condition::StrongLocality => "strong-locality",
            Condition::UnitLaw => "unit-law",
        }
    }
}

impl FromStr for Condition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.trim().to_ascii_lowercase().replace('_', "-");
        let c = match norm.as_str() {
            "microcausality" => Condition::Microcausality,
            "extended-locality" => Condition::ExtendedLocality,
            "schlieder" => Condition::Schlieder,
            "cstar-independence" | "cstar-independent" | "c*-independence" => Condition::CstarIndependent,
            "product-sense" => Condition::ProductSense,
            "strong-locality" => Condition::StrongLocality,
            "unit-law" => Condition::UnitLaw,
            _ => return Err(Error::input(format!("unknown condition {s:?}"))),
        };
        Ok(c)
    }
}

/// Counterexample data attached to a failed (or undecided) condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// Basis elements `a ∈ A`, `b ∈ B` with `[a, b] ≠ 0`.
    Commutator { left_index: usize, right_index: usize, left: Matrix, right: Matrix, commutator: Matrix },
    /// `A ∩ B` in the partition engine.
    Intersection { intersection: Partition },
    /// Dimension of `A ∩ B` in the matrix engine.
    IntersectionDim { dim: usize },
    /// Blocks `p ∈ A`, `q ∈ B` with `p ∩ q = ∅`: then `1_p · 1_q = 0`.
    DisjointBlocks { left_block: Vec<usize>, right_block: Vec<usize> },
    /// `dim(A ∨ B)` against `dim(A)·dim(B)`.
    DimensionDeficit { join_dim: usize, product_dim: usize },
    /// `dim ker(a ⊗ b ↦ ab) > 0`.
    MultiplicationKernel { kernel_dim: usize },
    /// Contexts with `(C ∨ D) ∩ A ≠ C` or `(C ∨ D) ∩ B ≠ D`.
    ContextPair { left: Partition, right: Partition, join_restricted_left: Partition, join_restricted_right: Partition },
    /// Contexts `C` of `A ∨ B` with `C ≠ (C ∩ A) ∨ (C ∩ B)`.
    Contexts { contexts: Vec<Partition> },
    Undecided { reason: String },
}

/// Outcome of one condition check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

impl Check {
    fn holds() -> Self {
        Check { verdict: Verdict::True, witness: None }
    }

    fn fails(w: Witness) -> Self {
        Check { verdict: Verdict::False, witness: Some(w) }
    }

    fn undecided(reason: &str) -> Self {
        Check { verdict: Verdict::Undetermined, witness: Some(Witness::Undecided { reason: reason.to_string() }) }
    }

    fn from_option(w: Option<Witness>) -> Self {
        match w {
            None => Check::holds(),
            Some(w) => Check::fails(w),
        }
    }
}

/// Every condition with its witness. Field names are part of the JSON format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HierarchyReport {
    pub engine: Engine,
    pub microcausality: Verdict,
    pub extended_locality: Verdict,
    pub schlieder: Verdict,
    pub cstar_independent: Verdict,
    pub product_sense: Verdict,
    pub strong_locality: Verdict,
    pub unit_law: Verdict,
    pub witnesses: IndexMap<Condition, Witness>,
}

impl HierarchyReport {
    pub fn get(&self, c: Condition) -> Verdict {
        match c {
            Condition::Microcausality => self.microcausality,
            Condition::ExtendedLocality => self.extended_locality,
            Condition::Schlieder => self.schlieder,
            Condition::CstarIndependent => self.cstar_independent,
            Condition::ProductSense => self.product_sense,
            Condition::StrongLocality => self.strong_locality,
            Condition::UnitLaw => self.unit_law,
        }
    }

    /// Pairs `(stronger, weaker)` where the stronger holds and the weaker fails.
    pub fn chain_violations(&self) -> Vec<(Condition, Condition)> {
        use Condition::*;
        let chain = [ProductSense, CstarIndependent, StrongLocality, ExtendedLocality, Microcausality];
        let mut out = Vec::new();
        for (i, &strong) in chain.iter().enumerate() {
            for &weak in &chain[i + 1..] {
                if self.get(strong).is_true() && self.get(weak).is_false() {
                    out.push((strong, weak));
                }
            }
        }
        if self.schlieder.is_true() && self.microcausality.is_true() && self.cstar_independent.is_false() {
            out.push((Schlieder, CstarIndependent));
        }
        out
    }
}

/// `[A, B] = 0`.
pub fn microcausality(pair: &AlgebraPair) -> Result<Check> {
    match pair {
        AlgebraPair::Partition(_) => Ok(Check::holds()),
        AlgebraPair::Matrix(m) => {
            let w = m.left.commutation_witness(&m.right)?;
            Ok(Check::from_option(w.map(|w| Witness::Commutator {
                left_index: w.left_index,
                right_index: w.right_index,
                left: w.left,
                right: w.right,
                commutator: w.commutator,
            })))
        }
    }
}

/// Microcausality and `A ∩ B = C·1`.
pub fn extended_locality(pair: &AlgebraPair) -> Result<Check> {
    let micro = microcausality(pair)?;
    if !micro.verdict.is_true() {
        return Ok(micro);
    }
    match pair {
        AlgebraPair::Partition(p) => {
            let meet = p.intersection();
            Ok(if meet.is_trivial() { Check::holds() } else { Check::fails(Witness::Intersection { intersection: meet }) })
        }
        AlgebraPair::Matrix(m) => {
            let dim = m.left.intersection(&m.right)?.dim();
            Ok(if dim == 1 { Check::holds() } else { Check::fails(Witness::IntersectionDim { dim }) })
        }
    }
}

fn disjoint_block_pair(a: &Partition, b: &Partition) -> Option<(Vec<usize>, Vec<usize>)> {
    for pa in a.blocks() {
        for pb in b.blocks() {
            if !pa.iter().any(|x| b.block_of(*x) == b.block_of(pb[0])) {
                return Some((pa.clone(), pb.clone()));
            }
        }
    }
    None
}

/// `ab = 0 ⇒ a = 0 ∨ b = 0`.
///
/// For function algebras this holds iff every block of `A` meets every
/// block of `B`: indicator functions of two disjoint blocks multiply to zero,
/// and conversely a zero product forces disjoint supports.
pub fn schlieder(pair: &AlgebraPair) -> Result<Check> {
    match pair {
        AlgebraPair::Partition(p) => Ok(Check::from_option(
            disjoint_block_pair(&p.left, &p.right)
                .map(|(l, r)| Witness::DisjointBlocks { left_block: l, right_block: r }),
        )),
        AlgebraPair::Matrix(m) => {
            if m.left.commutation_witness(&m.right)?.is_some() {
                return Ok(Check::undecided("algebras do not commute; no finite-dimensional decision procedure"));
            }
            if multiplication_kernel_dim(&m.left, &m.right)? == 0 {
                Ok(Check::holds())
            } else {
                Ok(Check::undecided("multiplication map has a kernel; zero divisors not searched"))
            }
        }
    }
}

/// Microcausality and the Schlieder property.
pub fn cstar_independent(pair: &AlgebraPair) -> Result<Check> {
    let micro = microcausality(pair)?;
    if micro.verdict.is_false() {
        return Ok(micro);
    }
    schlieder(pair)
}

/// Microcausality and injectivity of `a ⊗ b ↦ ab`, i.e. `A ∨ B ≅ A ⊗ B`.
pub fn product_sense(pair: &AlgebraPair) -> Result<Check> {
    let micro = microcausality(pair)?;
    if micro.verdict.is_false() {
        return Ok(micro);
    }
    match pair {
        AlgebraPair::Partition(p) => {
            let join_dim = p.join().dim();
            let product_dim = p.left.dim() * p.right.dim();
            Ok(if join_dim == product_dim {
                Check::holds()
            } else {
                Check::fails(Witness::DimensionDeficit { join_dim, product_dim })
            })
        }
        AlgebraPair::Matrix(m) => {
            let kernel_dim = multiplication_kernel_dim(&m.left, &m.right)?;
            Ok(if kernel_dim == 0 {
                Check::holds()
            } else {
                Check::fails(Witness::MultiplicationKernel { kernel_dim })
            })
        }
    }
}

fn partition_only<'a>(pair: &'a AlgebraPair, what: &str) -> Result<&'a PartitionPair> {
    pair.as_partition().ok_or_else(|| Error::UnsupportedEngine(what.to_string()))
}

/// Microcausality and `(C ∨ D) ∩ A = C`, `(C ∨ D) ∩ B = D` for all contexts
/// `C` of `A` and `D` of `B`.
pub fn strong_locality(pair: &AlgebraPair, limits: &Limits) -> Result<Check> {
    let p = partition_only(pair, "strong locality")?;
    let ca = ContextPoset::enumerate_with_limit(&p.left, limits.max_bell)?;
    let cb = ContextPoset::enumerate_with_limit(&p.right, limits.max_bell)?;
    for c in ca.iter() {
        for d in cb.iter() {
            let join = c.common_refinement(d)?;
            let rl = join.overlap_join(&p.left)?;
            let rr = join.overlap_join(&p.right)?;
            if &rl != c || &rr != d {
                return Ok(Check::fails(Witness::ContextPair {
                    left: c.clone(),
                    right: d.clone(),
                    join_restricted_left: rl,
                    join_restricted_right: rr,
                }));
            }
        }
    }
    Ok(Check::holds())
}

/// Contexts `C` of `A ∨ B` not generated by their restrictions to `A` and `B`.
pub fn unit_law_failures(p: &PartitionPair, limits: &Limits) -> Result<Vec<Partition>> {
    let top = ContextPoset::enumerate_with_limit(&p.join(), limits.max_bell)?;
    let mut failures = Vec::new();
    for c in top.iter() {
        let generated = c.overlap_join(&p.left)?.common_refinement(&c.overlap_join(&p.right)?)?;
        if &generated != c {
            failures.push(c.clone());
        }
    }
    Ok(failures)
}

/// `C = (C ∩ A) ∨ (C ∩ B)` for every context `C` of `A ∨ B`.
pub fn unit_law(pair: &AlgebraPair, limits: &Limits) -> Result<Check> {
    let p = partition_only(pair, "unit law")?;
    let failures = unit_law_failures(p, limits)?;
    Ok(if failures.is_empty() {
        Check::holds()
    } else {
        Check::fails(Witness::Contexts { contexts: failures })
    })
}

/// Runs every check and verifies the implication chain
/// product sense ⇒ C*-independence ⇒ strong locality ⇒ extended locality ⇒
/// microcausality. A violation is a bug and is returned as an error carrying
/// the full report.
pub fn hierarchy_report(pair: &AlgebraPair, limits: &Limits) -> Result<HierarchyReport> {
    if let AlgebraPair::Matrix(m) = pair {
        if m.left.matrix_dim() > limits.max_dim {
            return Err(Error::Resource {
                what: "matrix dimension".into(),
                size: m.left.matrix_dim() as u128,
                bound: limits.max_dim as u128,
            });
        }
    }
    let mut witnesses = IndexMap::new();
    let mut record = |c: Condition, check: Check| {
        if let Some(w) = check.witness {
            witnesses.insert(c, w);
        }
        check.verdict
    };
    let microcausality = record(Condition::Microcausality, self::microcausality(pair)?);
    let extended_locality = record(Condition::ExtendedLocality, self::extended_locality(pair)?);
    let schlieder = record(Condition::Schlieder, self::schlieder(pair)?);
    let cstar_independent = microcausality.and(schlieder);
    let product_sense = record(Condition::ProductSense, self::product_sense(pair)?);
    let (strong_locality, unit_law) = match pair {
        AlgebraPair::Partition(_) => (
            record(Condition::StrongLocality, self::strong_locality(pair, limits)?),
            record(Condition::UnitLaw, self::unit_law(pair, limits)?),
        ),
        AlgebraPair::Matrix(_) => (
            record(Condition::StrongLocality, Check::undecided("context posets of matrix algebras are not enumerable")),
            record(Condition::UnitLaw, Check::undecided("context posets of matrix algebras are not enumerable")),
        ),
    };
    let report = HierarchyReport {
        engine: pair.engine(),
        microcausality,
        extended_locality,
        schlieder,
        cstar_independent,
        product_sense,
        strong_locality,
        unit_law,
        witnesses,
    };
    let violations = report.chain_violations();
    if !violations.is_empty() {
        return Err(Error::internal(format!(
            "implication chain violated {violations:?}; report: {report:?}"
        )));
    }
    Ok(report)
}

/// Pairs on `n` points that satisfy extended locality but not strong locality.
pub fn separating_examples(n: usize, limits: &Limits) -> Result<Vec<PartitionPair>> {
    let all: Vec<Partition> = crate::algebra::all_partitions(n).collect();
    let mut out = Vec::new();
    for a in &all {
        for b in &all {
            let pair = AlgebraPair::partitions(a.clone(), b.clone())?;
            if extended_locality(&pair)?.verdict.is_true()
                && strong_locality(&pair, limits)?.verdict.is_false()
            {
                out.push(PartitionPair::new(a.clone(), b.clone())?);
            }
        }
    }
    Ok(out)
}
