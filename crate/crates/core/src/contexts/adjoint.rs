//! Monotone maps between finite posets and their left adjoints.
//!
//! Monotone maps between finite posets are exactly the continuous maps for
//! the Alexandroff (upper set) topologies, so every statement here about
//! fibers and sections is a statement about those spaces as well.

use serde::{Deserialize, Serialize};

use super::poset::Poset;
use crate::error::{Error, Result};

/// An order-preserving map `f: source → target` given by its table.
#[derive(Debug, Clone)]
pub struct MonotoneMap<'a, S: Poset + ?Sized, T: Poset + ?Sized> {
    source: &'a S,
    target: &'a T,
    table: Vec<usize>,
}

impl<'a, S: Poset + ?Sized, T: Poset + ?Sized> MonotoneMap<'a, S, T> {
    /// Rejects tables of the wrong length and non-monotone assignments.
    pub fn new(source: &'a S, target: &'a T, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::input(format!(
                "map table has {} entries for a source of size {}",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&t| t >= target.len()) {
            return Err(Error::input(format!("map value {bad} outside target of size {}", target.len())));
        }
        for x in 0..source.len() {
            for y in 0..source.len() {
                if source.leq(x, y) && !target.leq(table[x], table[y]) {
                    return Err(Error::NotMonotone { lower: source.label(x), upper: source.label(y) });
                }
            }
        }
        Ok(MonotoneMap { source, target, table })
    }

    pub fn source(&self) -> &'a S {
        self.source
    }

    pub fn target(&self) -> &'a T {
        self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.table.iter().all(|&t| !std::mem::replace(&mut seen[t], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        for &t in &self.table {
            seen[t] = true;
        }
        seen.into_iter().all(|s| s)
    }

    pub fn fiber(&self, q: usize) -> Vec<usize> {
        (0..self.source.len()).filter(|&p| self.table[p] == q).collect()
    }
}

impl<'a, P: Poset + ?Sized> MonotoneMap<'a, P, P> {
    pub fn identity(p: &'a P) -> Self {
        MonotoneMap { source: p, target: p, table: (0..p.len()).collect() }
    }
}

/// Outcome of the left-adjoint computation for a monotone map `f`.
///
/// `unit_strict[p]` records `g(f(p)) < p` on the source, the pattern of
/// `C = (C∩A₁) ∨ (C∩A₂)` failing; `counit_strict[q]` records `q < f(g(q))`
/// on the target, the pattern of `(C₁∨C₂)∩A₁ = C₁` failing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjunctionReport {
    pub adjoint_exists: bool,
    /// `g(q)` for each target element, when `g` exists.
    pub adjoint: Option<Vec<usize>>,
    /// Target elements whose upper preimage `{p : q ≤ f(p)}` has no least element.
    pub obstructions: Vec<usize>,
    pub unit_strict: Vec<bool>,
    pub counit_strict: Vec<bool>,
    pub is_coreflector: bool,
    pub is_iso: bool,
    pub fiber_minima: Vec<Option<usize>>,
}

fn fiber_minima<S: Poset + ?Sized, T: Poset + ?Sized>(f: &MonotoneMap<'_, S, T>) -> Vec<Option<usize>> {
    let mut fibers = vec![Vec::new(); f.target.len()];
    for (p, &q) in f.table.iter().enumerate() {
        fibers[q].push(p);
    }
    fibers.iter().map(|fib| f.source.least_of(fib)).collect()
}

/// Generic left adjoint: `g(q)` is the least element of `{p : q ≤ f(p)}`.
///
/// When it exists, the adjunction law `g(q) ≤ p ⟺ q ≤ f(p)` is re-verified on
/// every pair; a failure there is reported as an internal-consistency error.
pub fn left_adjoint<S: Poset + ?Sized, T: Poset + ?Sized>(
    f: &MonotoneMap<'_, S, T>,
) -> Result<AdjunctionReport> {
    let (src, tgt) = (f.source, f.target);
    let mut adjoint = Vec::with_capacity(tgt.len());
    let mut obstructions = Vec::new();
    for q in 0..tgt.len() {
        let upper: Vec<usize> = (0..src.len()).filter(|&p| tgt.leq(q, f.table[p])).collect();
        match src.least_of(&upper) {
            Some(g) => adjoint.push(g),
            None => obstructions.push(q),
        }
    }
    let minima = fiber_minima(f);
    if !obstructions.is_empty() {
        return Ok(AdjunctionReport {
            adjoint_exists: false,
            adjoint: None,
            obstructions,
            unit_strict: Vec::new(),
            counit_strict: Vec::new(),
            is_coreflector: false,
            is_iso: false,
            fiber_minima: minima,
        });
    }
    for q in 0..tgt.len() {
        for p in 0..src.len() {
            if src.leq(adjoint[q], p) != tgt.leq(q, f.table[p]) {
                return Err(Error::internal(format!(
                    "adjunction law fails at q = {}, p = {}",
                    tgt.label(q),
                    src.label(p)
                )));
            }
        }
    }
    let unit_strict: Vec<bool> = (0..src.len()).map(|p| adjoint[f.table[p]] != p).collect();
    let counit_strict: Vec<bool> = (0..tgt.len()).map(|q| f.table[adjoint[q]] != q).collect();
    let is_coreflector = counit_strict.iter().all(|s| !s);
    let is_iso = is_coreflector && unit_strict.iter().all(|s| !s);
    Ok(AdjunctionReport {
        adjoint_exists: true,
        adjoint: Some(adjoint),
        obstructions,
        unit_strict,
        counit_strict,
        is_coreflector,
        is_iso,
        fiber_minima: minima,
    })
}

/// Per-fiber diagnostics for the infinitesimal-thickening property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThickeningReport {
    pub fiber_sizes: Vec<usize>,
    pub fiber_minima: Vec<Option<usize>>,
    pub surjective: bool,
    pub all_fibers_have_minimum: bool,
    pub section_monotone: bool,
    /// Surjective, every fiber has a minimum, and `q ↦ min f⁻¹(q)` is monotone.
    pub thickening: bool,
}

/// Decides whether `f` is an infinitesimal thickening.
///
/// When it is, the minimum section must coincide with the left adjoint; the
/// two are computed independently and compared.
pub fn thickening_report<S: Poset + ?Sized, T: Poset + ?Sized>(
    f: &MonotoneMap<'_, S, T>,
) -> Result<ThickeningReport> {
    let tgt = f.target;
    let mut fiber_sizes = vec![0; tgt.len()];
    for &q in &f.table {
        fiber_sizes[q] += 1;
    }
    let minima = fiber_minima(f);
    let surjective = fiber_sizes.iter().all(|&s| s > 0);
    let all_fibers_have_minimum = minima.iter().all(Option::is_some);
    let section_monotone = all_fibers_have_minimum && {
        let sec: Vec<usize> = minima.iter().map(|m| m.expect("checked")).collect();
        (0..tgt.len()).all(|q1| {
            (0..tgt.len()).all(|q2| !tgt.leq(q1, q2) || f.source.leq(sec[q1], sec[q2]))
        })
    };
    let thickening = surjective && all_fibers_have_minimum && section_monotone;
    if thickening {
        let adj = left_adjoint(f)?;
        let section: Vec<usize> = minima.iter().map(|m| m.expect("checked")).collect();
        if adj.adjoint.as_ref() != Some(&section) {
            return Err(Error::internal(
                "thickening section differs from the left adjoint".to_string(),
            ));
        }
    }
    Ok(ThickeningReport {
        fiber_sizes,
        fiber_minima: minima,
        surjective,
        all_fibers_have_minimum,
        section_monotone,
        thickening,
    })
}
