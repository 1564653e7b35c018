//! Finite spacetime lattices, nets of partition algebras over them, isotony
//! validation and per-pair analysis of spacelike regions.

use serde::{Deserialize, Serialize};

use crate::algebra::{AmbientSet, Partition};
use crate::contexts::Poset;
use crate::descent::{sheaf_report, DescentReport};
use crate::error::{Error, Result};
use crate::independence::{hierarchy_report, AlgebraPair, HierarchyReport, Limits, PartitionPair};

/// Regions with an order and a declared spacelike relation.
///
/// The order is the reflexive transitive closure of the declared pairs; it
/// is not assumed antisymmetric until [`validate_net`] says so.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpacetimePoset {
    regions: Vec<String>,
    leq: Vec<bool>,
    spacelike: Vec<(usize, usize)>,
}

impl SpacetimePoset {
    pub fn new<S: AsRef<str>>(regions: Vec<String>, leq: &[(S, S)], spacelike: &[(S, S)]) -> Result<Self> {
        let n = regions.len();
        for (i, r) in regions.iter().enumerate() {
            if regions[..i].contains(r) {
                return Err(Error::input(format!("duplicate region {r:?}")));
            }
        }
        let find = |s: &str| {
            regions.iter().position(|r| r == s).ok_or_else(|| Error::input(format!("unknown region {s:?}")))
        };
        let mut rel = vec![false; n * n];
        for i in 0..n {
            rel[i * n + i] = true;
        }
        for (a, b) in leq {
            rel[find(a.as_ref())? * n + find(b.as_ref())?] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i * n + k] {
                    for j in 0..n {
                        if rel[k * n + j] {
                            rel[i * n + j] = true;
                        }
                    }
                }
            }
        }
        let mut sl = Vec::new();
        for (a, b) in spacelike {
            let (i, j) = (find(a.as_ref())?, find(b.as_ref())?);
            sl.push((i.min(j), i.max(j)));
        }
        sl.sort_unstable();
        sl.dedup();
        Ok(SpacetimePoset { regions, leq: rel, spacelike: sl })
    }

    pub fn regions(&self) -> &[String] {
        &self.regions
    }

    pub fn index_of(&self, region: &str) -> Option<usize> {
        self.regions.iter().position(|r| r == region)
    }

    /// Unordered spacelike pairs `(i, j)` with `i ≤ j`.
    pub fn spacelike(&self) -> &[(usize, usize)] {
        &self.spacelike
    }

    pub fn is_spacelike(&self, i: usize, j: usize) -> bool {
        self.spacelike.contains(&(i.min(j), i.max(j)))
    }

    /// Greatest lower bound, if it exists.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len()).filter(|&k| self.leq(k, i) && self.leq(k, j)).collect();
        lower.iter().copied().find(|&m| lower.iter().all(|&k| self.leq(k, m)))
    }

    /// Least upper bound, if it exists.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        let upper: Vec<usize> = (0..self.len()).filter(|&k| self.leq(i, k) && self.leq(j, k)).collect();
        self.least_of(&upper)
    }
}

impl Poset for SpacetimePoset {
    fn len(&self) -> usize {
        self.regions.len()
    }

    fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.regions.len() + j]
    }

    fn label(&self, i: usize) -> String {
        self.regions[i].clone()
    }
}

/// A net `O ↦ S_{P(O)}` of partition algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetSpec {
    spacetime: SpacetimePoset,
    ambient: AmbientSet,
    assignment: Vec<Partition>,
}

impl NetSpec {
    pub fn new(spacetime: SpacetimePoset, ambient: AmbientSet, assignment: Vec<Partition>) -> Result<Self> {
        if assignment.len() != spacetime.len() {
            return Err(Error::input(format!(
                "{} algebras assigned to {} regions",
                assignment.len(),
                spacetime.len()
            )));
        }
        if let Some(p) = assignment.iter().find(|p| p.ambient_len() != ambient.len()) {
            return Err(Error::AmbientMismatch { left: ambient.len(), right: p.ambient_len() });
        }
        Ok(NetSpec { spacetime, ambient, assignment })
    }

    pub fn spacetime(&self) -> &SpacetimePoset {
        &self.spacetime
    }

    pub fn ambient(&self) -> &AmbientSet {
        &self.ambient
    }

    pub fn assignment(&self) -> &[Partition] {
        &self.assignment
    }

    pub fn algebra(&self, region: usize) -> &Partition {
        &self.assignment[region]
    }
}

/// A failed structural requirement of a net.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Distinct regions below each other.
    OrderCycle { left: String, right: String },
    MissingMeet { left: String, right: String },
    MissingJoin { left: String, right: String },
    SpacelikeReflexive { region: String },
    SpacelikeComparable { lower: String, upper: String },
    /// `lower ≤ upper` but `A(lower) ⊄ A(upper)`.
    Isotony { lower: String, upper: String, lower_algebra: String, upper_algebra: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetValidation {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

/// Checks the lattice axioms, the shape of the spacelike relation and isotony.
pub fn validate_net(spec: &NetSpec) -> NetValidation {
    let st = &spec.spacetime;
    let n = st.len();
    let name = |i: usize| st.regions[i].clone();
    let mut violations = Vec::new();
    let mut antisymmetric = true;
    for i in 0..n {
        for j in i + 1..n {
            if st.leq(i, j) && st.leq(j, i) {
                antisymmetric = false;
                violations.push(Violation::OrderCycle { left: name(i), right: name(j) });
            }
        }
    }
    if antisymmetric {
        for i in 0..n {
            for j in i + 1..n {
                if st.meet(i, j).is_none() {
                    violations.push(Violation::MissingMeet { left: name(i), right: name(j) });
                }
                if st.join(i, j).is_none() {
                    violations.push(Violation::MissingJoin { left: name(i), right: name(j) });
                }
            }
        }
    }
    for &(i, j) in &st.spacelike {
        if i == j {
            violations.push(Violation::SpacelikeReflexive { region: name(i) });
        } else if st.leq(i, j) || st.leq(j, i) {
            let (lo, hi) = if st.leq(i, j) { (i, j) } else { (j, i) };
            violations.push(Violation::SpacelikeComparable { lower: name(lo), upper: name(hi) });
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && st.leq(i, j) && !spec.assignment[i].is_coarser_unchecked(&spec.assignment[j]) {
                violations.push(Violation::Isotony {
                    lower: name(i),
                    upper: name(j),
                    lower_algebra: spec.ambient.format(&spec.assignment[i]),
                    upper_algebra: spec.ambient.format(&spec.assignment[j]),
                });
            }
        }
    }
    NetValidation { valid: violations.is_empty(), violations }
}

/// Analysis of one spacelike pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub left: String,
    pub right: String,
    pub meet_region: String,
    /// `A(O₁ ∧ O₂)`, used as the meet algebra.
    pub meet_algebra: Partition,
    /// `A(O₁) ∩ A(O₂)`.
    pub intersection: Partition,
    pub meet_differs: bool,
    pub hierarchy: HierarchyReport,
    pub descent: DescentReport,
}

/// Conjunctions over all spacelike pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetSummary {
    pub spacelike_pairs: usize,
    pub microcausal: bool,
    pub extended_locality: bool,
    pub strongly_local: bool,
    pub cstar_independent: bool,
    pub sheaf: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetReport {
    pub pairs: Vec<PairReport>,
    pub summary: NetSummary,
}

/// The pair `(A(O₁), A(O₂))` with meet algebra `A(O₁ ∧ O₂)`.
pub fn spacelike_pair(spec: &NetSpec, i: usize, j: usize) -> Result<PartitionPair> {
    let m = spec
        .spacetime
        .meet(i, j)
        .ok_or_else(|| Error::Precondition(format!("no meet of {} and {}", spec.spacetime.label(i), spec.spacetime.label(j))))?;
    PartitionPair::new(spec.assignment[i].clone(), spec.assignment[j].clone())?.with_meet(spec.assignment[m].clone())
}

/// Runs the hierarchy and the descent analysis on every spacelike pair.
/// No additivity of the net is assumed.
pub fn analyze_net(spec: &NetSpec, limits: &Limits) -> Result<NetReport> {
    let validation = validate_net(spec);
    if !validation.valid {
        return Err(Error::Precondition(format!("net is invalid: {:?}", validation.violations)));
    }
    let st = &spec.spacetime;
    let mut order: Vec<(usize, usize)> = st.spacelike.clone();
    order.sort_by(|a, b| (&st.regions[a.0], &st.regions[a.1]).cmp(&(&st.regions[b.0], &st.regions[b.1])));
    let mut pairs = Vec::with_capacity(order.len());
    for (i, j) in order {
        let (i, j) = if st.regions[i] <= st.regions[j] { (i, j) } else { (j, i) };
        let pair = spacelike_pair(spec, i, j)?;
        let m = st.meet(i, j).expect("checked by validation");
        let hierarchy = hierarchy_report(&AlgebraPair::Partition(pair.clone()), limits)?;
        let descent = sheaf_report(&pair, limits)?;
        pairs.push(PairReport {
            left: st.label(i),
            right: st.label(j),
            meet_region: st.label(m),
            meet_algebra: pair.meet_algebra(),
            intersection: pair.intersection(),
            meet_differs: pair.meet_algebra() != pair.intersection(),
            hierarchy,
            descent,
        });
    }
    let all = |f: fn(&PairReport) -> bool| pairs.iter().all(f);
    let summary = NetSummary {
        spacelike_pairs: pairs.len(),
        microcausal: all(|p| p.hierarchy.microcausality.is_true()),
        extended_locality: all(|p| p.hierarchy.extended_locality.is_true()),
        strongly_local: all(|p| p.hierarchy.strong_locality.is_true()),
        cstar_independent: all(|p| p.hierarchy.cstar_independent.is_true()),
        sheaf: all(|p| p.descent.sheaf),
    };
    Ok(NetReport { pairs, summary })
}
