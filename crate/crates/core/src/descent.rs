//! The descent map `h: C_{A∨B} → C_A ×_{C_M} C_B`, its stagewise ring
//! components, the sheaf decision and the covering stability axiom.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{AmbientSet, Partition};
use crate::contexts::{
    left_adjoint, thickening_report, AdjunctionReport, ContextPoset, MonotoneMap, Poset, ThickeningReport,
};
use crate::error::{Error, Result};
use crate::independence::{cstar_independent, extended_locality, unit_law_failures, AlgebraPair, Limits, PartitionPair};

/// Pairs `(C₁, C₂)` of contexts of `A` and `B` that agree on the meet
/// algebra `M`, ordered componentwise.
#[derive(Debug, Clone)]
pub struct FiberedContextProduct {
    left: ContextPoset,
    right: ContextPoset,
    meet: Partition,
    elements: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl FiberedContextProduct {
    pub fn new(pair: &PartitionPair, limits: &Limits) -> Result<Self> {
        let left = ContextPoset::enumerate_with_limit(pair.left(), limits.max_bell)?;
        let right = ContextPoset::enumerate_with_limit(pair.right(), limits.max_bell)?;
        let size = left.len() as u128 * right.len() as u128;
        if size > limits.max_bell {
            return Err(Error::Resource { what: "context pairs".into(), size, bound: limits.max_bell });
        }
        let meet = pair.meet_algebra();
        let mut by_restriction: HashMap<Partition, Vec<usize>> = HashMap::new();
        for (j, d) in right.iter().enumerate() {
            by_restriction.entry(d.overlap_join(&meet)?).or_default().push(j);
        }
        let mut elements = Vec::new();
        for (i, c) in left.iter().enumerate() {
            if let Some(js) = by_restriction.get(&c.overlap_join(&meet)?) {
                elements.extend(js.iter().map(|&j| (i, j)));
            }
        }
        let index = elements.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        Ok(FiberedContextProduct { left, right, meet, elements, index })
    }

    pub fn with_ambient(mut self, ambient: &AmbientSet) -> Result<Self> {
        self.left = self.left.with_ambient(ambient)?;
        self.right = self.right.with_ambient(ambient)?;
        Ok(self)
    }

    pub fn left_poset(&self) -> &ContextPoset {
        &self.left
    }

    pub fn right_poset(&self) -> &ContextPoset {
        &self.right
    }

    pub fn meet(&self) -> &Partition {
        &self.meet
    }

    /// Element indices into the two context posets.
    pub fn elements(&self) -> &[(usize, usize)] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> (&Partition, &Partition) {
        let (i, j) = self.elements[k];
        (self.left.element(i), self.right.element(j))
    }

    pub fn index_of(&self, c1: &Partition, c2: &Partition) -> Option<usize> {
        let i = self.left.index_of(c1)?;
        let j = self.right.index_of(c2)?;
        self.index.get(&(i, j)).copied()
    }

    /// First projection, as a table into the left context poset.
    pub fn project_left(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.0).collect()
    }

    pub fn project_right(&self) -> Vec<usize> {
        self.elements.iter().map(|e| e.1).collect()
    }

    pub fn is_full_product(&self) -> bool {
        self.elements.len() == self.left.len() * self.right.len()
    }
}

impl Poset for FiberedContextProduct {
    fn len(&self) -> usize {
        self.elements.len()
    }

    fn leq(&self, x: usize, y: usize) -> bool {
        let (a, b) = (self.elements[x], self.elements[y]);
        self.left.leq(a.0, b.0) && self.right.leq(a.1, b.1)
    }

    fn label(&self, k: usize) -> String {
        let (i, j) = self.elements[k];
        format!("({}, {})", self.left.label(i), self.right.label(j))
    }
}

/// `h` together with its source and target posets.
#[derive(Debug, Clone)]
pub struct Descent {
    pair: PartitionPair,
    source: ContextPoset,
    target: FiberedContextProduct,
    table: Vec<usize>,
}

impl Descent {
    pub fn new(pair: &PartitionPair, limits: &Limits) -> Result<Self> {
        let target = FiberedContextProduct::new(pair, limits)?;
        let source = ContextPoset::enumerate_with_limit(&pair.join(), limits.max_bell)?;
        let mut table = Vec::with_capacity(source.len());
        for c in source.iter() {
            let ca = c.overlap_join(pair.left())?;
            let cb = c.overlap_join(pair.right())?;
            let k = target.index_of(&ca, &cb).ok_or_else(|| {
                Error::internal(format!("h({c:?}) = ({ca:?}, {cb:?}) is outside the fibered product"))
            })?;
            table.push(k);
        }
        Ok(Descent { pair: pair.clone(), source, target, table })
    }

    pub fn with_ambient(mut self, ambient: &AmbientSet) -> Result<Self> {
        self.source = self.source.with_ambient(ambient)?;
        self.target = self.target.with_ambient(ambient)?;
        Ok(self)
    }

    pub fn pair(&self) -> &PartitionPair {
        &self.pair
    }

    pub fn source(&self) -> &ContextPoset {
        &self.source
    }

    pub fn target(&self) -> &FiberedContextProduct {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn map(&self) -> Result<MonotoneMap<'_, ContextPoset, FiberedContextProduct>> {
        MonotoneMap::new(&self.source, &self.target, self.table.clone())
    }

    /// `(C₁, C₂) ↦ C₁ ∨ C₂`, as a table into the source.
    pub fn join_table(&self) -> Result<Vec<usize>> {
        (0..self.target.len())
            .map(|k| {
                let (c1, c2) = self.target.element(k);
                let j = c1.common_refinement(c2)?;
                self.source
                    .index_of(&j)
                    .ok_or_else(|| Error::internal(format!("{j:?} is not a context of A ∨ B")))
            })
            .collect()
    }
}

/// The poset part of the descent analysis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentMapReport {
    pub source_size: usize,
    pub target_size: usize,
    /// `h` as a table from source indices to target indices.
    pub h: Vec<usize>,
    pub injective: bool,
    pub surjective: bool,
    pub adjunction: AdjunctionReport,
    pub thickening: ThickeningReport,
}

/// Builds `h`, computes its left adjoint and fiber data, and checks that the
/// adjoint is `(C₁, C₂) ↦ C₁ ∨ C₂`.
pub fn descent_map(pair: &PartitionPair, limits: &Limits) -> Result<DescentMapReport> {
    let d = Descent::new(pair, limits)?;
    analyse_map(&d)
}

fn analyse_map(d: &Descent) -> Result<DescentMapReport> {
    let h = d.map()?;
    let adjunction = left_adjoint(&h)?;
    let thickening = thickening_report(&h)?;
    if let Some(adj) = &adjunction.adjoint {
        if adj != &d.join_table()? {
            return Err(Error::internal(format!(
                "left adjoint of h differs from the join for {:?}, {:?}",
                d.pair.left(),
                d.pair.right()
            )));
        }
    }
    Ok(DescentMapReport {
        source_size: d.source.len(),
        target_size: d.target.len(),
        h: d.table.clone(),
        injective: h.is_injective(),
        surjective: h.is_surjective(),
        adjunction,
        thickening,
    })
}

/// The component `C∩A ⊗_{C∩M} C∩B → C` at one context, read off the spectra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingComponent {
    pub context: Partition,
    /// Points of the spectrum of `C`.
    pub spectrum_points: usize,
    /// Points of the fibered product of the spectra of `C∩A` and `C∩B`.
    pub fibered_points: usize,
    pub injective: bool,
    pub surjective: bool,
    pub iso: bool,
}

/// Decides the ring map at `C` through the dual map of finite spectra
/// `blocks(C) → blocks(C∩A) ×_{blocks(C∩M)} blocks(C∩B)`: the algebra map is
/// injective iff the spectrum map is onto, and onto iff it is injective.
pub fn ring_component(c: &Partition, pair: &PartitionPair) -> Result<RingComponent> {
    if !c.is_coarser(&pair.join())? {
        return Err(Error::input(format!("{c:?} is not a context of A ∨ B")));
    }
    let ca = c.overlap_join(pair.left())?;
    let cb = c.overlap_join(pair.right())?;
    let cm = ca.overlap_join(&pair.meet_algebra())?;
    let mut fibered_points = 0;
    for x in ca.blocks() {
        for y in cb.blocks() {
            if cm.block_of(x[0]) == cm.block_of(y[0]) {
                fibered_points += 1;
            }
        }
    }
    let mut image: Vec<(usize, usize)> =
        c.blocks().iter().map(|b| (ca.block_of(b[0]), cb.block_of(b[0]))).collect();
    let spectrum_points = image.len();
    image.sort_unstable();
    image.dedup();
    let spectrum_injective = image.len() == spectrum_points;
    let spectrum_surjective = image.len() == fibered_points;
    Ok(RingComponent {
        context: c.clone(),
        spectrum_points,
        fibered_points,
        injective: spectrum_surjective,
        surjective: spectrum_injective,
        iso: spectrum_injective && spectrum_surjective,
    })
}

/// Full descent analysis of a pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentReport {
    pub meet_algebra: Partition,
    pub intersection: Partition,
    pub map: DescentMapReport,
    pub ring_components: Vec<RingComponent>,
    pub h_iso: bool,
    pub all_components_iso: bool,
    /// `h` is a coreflector: `h(g(q)) = q` on the whole target.
    pub strong_locality: bool,
    pub unit_law: bool,
    pub extended_locality: bool,
    pub cstar_independent: bool,
    /// `h` is an order isomorphism and every component is a ring isomorphism.
    pub sheaf: bool,
    /// C*-independence together with the unit law.
    pub sheaf_characterized: bool,
}

/// Decides the sheaf condition directly and through its characterisation,
/// and insists that the two agree whenever extended locality holds.
pub fn sheaf_report(pair: &PartitionPair, limits: &Limits) -> Result<DescentReport> {
    let d = Descent::new(pair, limits)?;
    let map = analyse_map(&d)?;
    let ring_components = d.source.iter().map(|c| ring_component(c, pair)).collect::<Result<Vec<_>>>()?;
    let all_components_iso = ring_components.iter().all(|r| r.iso);
    let h_iso = map.injective && map.surjective;
    let sheaf = h_iso && all_components_iso;

    let algebra_pair = AlgebraPair::Partition(pair.clone());
    let extended_locality = extended_locality(&algebra_pair)?.verdict.is_true();
    let cstar_independent = cstar_independent(&algebra_pair)?.verdict.is_true();
    let unit_law = unit_law_failures(pair, limits)?.is_empty();
    if unit_law != map.adjunction.unit_strict.iter().all(|s| !s) {
        return Err(Error::internal("unit law disagrees with the unit of h ⊣ join".to_string()));
    }
    let sheaf_characterized = cstar_independent && unit_law;

    let report = DescentReport {
        meet_algebra: pair.meet_algebra(),
        intersection: pair.intersection(),
        strong_locality: map.adjunction.is_coreflector,
        map,
        ring_components,
        h_iso,
        all_components_iso,
        unit_law,
        extended_locality,
        cstar_independent,
        sheaf,
        sheaf_characterized,
    };
    if extended_locality && sheaf != sheaf_characterized {
        return Err(Error::internal(format!("sheaf routes disagree: {report:?}")));
    }
    Ok(report)
}

/// A triple with `E ⊆ C ∨ D` but `E ≠ (E∧C) ∨ (E∧D)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityViolation {
    pub e: Partition,
    pub c: Partition,
    pub d: Partition,
    /// `(E∧C) ∨ (E∧D)`.
    pub generated: Partition,
}

/// Every violation of the covering stability axiom.
pub fn covering_stability(pair: &PartitionPair, limits: &Limits) -> Result<Vec<StabilityViolation>> {
    let top = ContextPoset::enumerate_with_limit(&pair.join(), limits.max_bell)?;
    let ca = ContextPoset::enumerate_with_limit(pair.left(), limits.max_bell)?;
    let cb = ContextPoset::enumerate_with_limit(pair.right(), limits.max_bell)?;
    let mut out = Vec::new();
    for c in ca.iter() {
        for d in cb.iter() {
            let cd = c.common_refinement(d)?;
            for e in top.iter() {
                if !e.is_coarser(&cd)? {
                    continue;
                }
                let generated = e.overlap_join(c)?.common_refinement(&e.overlap_join(d)?)?;
                if &generated != e {
                    out.push(StabilityViolation { e: e.clone(), c: c.clone(), d: d.clone(), generated });
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::all_partitions;

    fn idx(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn example() -> PartitionPair {
        PartitionPair::new(idx(4, &[&[0, 1], &[2, 3]]), idx(4, &[&[0, 2], &[1, 3]])).unwrap()
    }

    fn halves() -> PartitionPair {
        PartitionPair::new(idx(3, &[&[0, 1], &[2]]), idx(3, &[&[0], &[1, 2]])).unwrap()
    }

    fn full_and_scalars(n: usize) -> PartitionPair {
        PartitionPair::new(Partition::discrete(n), Partition::trivial(n)).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn fibered_product_examples() {
        let p = FiberedContextProduct::new(&example(), &lim()).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.is_full_product());
        p.verify_order().unwrap();

        let a = idx(4, &[&[0, 1], &[2, 3]]);
        let diag = PartitionPair::new(a.clone(), a.clone()).unwrap().with_meet(a).unwrap();
        let p = FiberedContextProduct::new(&diag, &lim()).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.elements().iter().all(|(i, j)| p.left_poset().element(*i) == p.right_poset().element(*j)));

        assert_eq!(FiberedContextProduct::new(&halves(), &lim()).unwrap().len(), 4);
    }

    #[test]
    fn descent_map_examples() {
        let r = descent_map(&example(), &lim()).unwrap();
        assert_eq!((r.source_size, r.target_size), (15, 4));
        assert!(r.surjective && !r.injective);
        assert!(r.adjunction.is_coreflector && !r.adjunction.is_iso);

        let r = descent_map(&full_and_scalars(3), &lim()).unwrap();
        assert!(r.injective && r.surjective && r.adjunction.is_iso);

        let r = descent_map(&halves(), &lim()).unwrap();
        assert_eq!((r.source_size, r.target_size), (5, 4));
        assert!(r.surjective && !r.injective);
    }

    #[test]
    fn fiber_sizes_of_the_four_point_example() {
        let r = descent_map(&example(), &lim()).unwrap();
        let mut sizes = r.thickening.fiber_sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3, 8]);
        assert_eq!(r.thickening.fiber_sizes[0], 8);
    }

    #[test]
    fn ring_component_examples() {
        let c = idx(4, &[&[0, 3], &[1], &[2]]);
        let r = ring_component(&c, &example()).unwrap();
        assert!(r.injective && !r.surjective);
        assert_eq!((r.spectrum_points, r.fibered_points), (3, 1));

        let r = ring_component(&example().join(), &example()).unwrap();
        assert!(r.iso);
        assert!(ring_component(&Partition::trivial(4), &example()).unwrap().iso);

        let not_a_context = PartitionPair::new(idx(4, &[&[0, 1], &[2, 3]]), Partition::trivial(4)).unwrap();
        assert!(matches!(ring_component(&Partition::discrete(4), &not_a_context), Err(Error::Input(_))));
    }

    #[test]
    fn sheaf_examples() {
        let r = sheaf_report(&example(), &lim()).unwrap();
        assert!(!r.sheaf && !r.sheaf_characterized && !r.unit_law && r.cstar_independent);
        let r = sheaf_report(&full_and_scalars(4), &lim()).unwrap();
        assert!(r.sheaf && r.sheaf_characterized);
        let r = sheaf_report(&halves(), &lim()).unwrap();
        assert!(!r.sheaf && !r.cstar_independent);
    }

    #[test]
    fn stability_examples() {
        let v = covering_stability(&example(), &lim()).unwrap();
        let (a, b) = (example().left().clone(), example().right().clone());
        assert!(v.iter().any(|t| t.e == idx(4, &[&[0, 3], &[1], &[2]]) && t.c == a && t.d == b));
        assert!(covering_stability(&full_and_scalars(4), &lim()).unwrap().is_empty());
    }

    #[test]
    fn unit_law_rules_out_top_level_stability_failures() {
        for n in 1..=4 {
            let all: Vec<Partition> = all_partitions(n).collect();
            for a in &all {
                for b in &all {
                    let pair = PartitionPair::new(a.clone(), b.clone()).unwrap();
                    if !unit_law_failures(&pair, &lim()).unwrap().is_empty() {
                        continue;
                    }
                    let v = covering_stability(&pair, &lim()).unwrap();
                    assert!(!v.iter().any(|t| &t.c == a && &t.d == b), "{a:?} {b:?}");
                }
            }
        }
    }

    #[test]
    fn halves_components_at_joins_are_not_all_isos() {
        // Strongly local, yet the component at the discrete context fails.
        let r = ring_component(&Partition::discrete(3), &halves()).unwrap();
        assert_eq!((r.spectrum_points, r.fibered_points), (3, 4));
        assert!(!r.injective && r.surjective);
    }

    #[test]
    fn ambient_labels_reach_the_map() {
        let amb = AmbientSet::new(["a", "b", "c", "d"]).unwrap();
        let d = Descent::new(&example(), &lim()).unwrap().with_ambient(&amb).unwrap();
        let dot = crate::contexts::map_to_dot(&d.map().unwrap(), "h");
        assert!(dot.contains("{{a,d},{b},{c}}"));
    }
}
