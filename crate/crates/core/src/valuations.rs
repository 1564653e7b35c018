//! Finite spectra of contexts, probability valuations on them, pushforward
//! along restriction maps, and product extension of valuations.
//!
//! A context `C` has the finite discrete spectrum `blocks(C)`, so a
//! valuation is a rational distribution on blocks.

use indexmap::IndexMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::algebra::scalar::{ratio, ratio_parts};
use crate::algebra::{AmbientSet, Partition};
use crate::contexts::{ContextPoset, Poset};
use crate::error::{Error, Result};
use crate::independence::{cstar_independent, AlgebraPair, Limits, PartitionPair};

/// Largest denominator used when sampling valuations.
pub const SAMPLE_DENOMINATOR: usize = 12;

/// The spectrum of a context: its blocks, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Spectrum {
    context: Partition,
}

impl Spectrum {
    pub fn new(context: Partition) -> Self {
        Spectrum { context }
    }

    pub fn context(&self) -> &Partition {
        &self.context
    }

    pub fn points(&self) -> &[Vec<usize>] {
        self.context.blocks()
    }

    pub fn len(&self) -> usize {
        self.context.block_count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Index of the point whose block contains `x`.
    pub fn point_containing(&self, x: usize) -> usize {
        self.context.block_of(x)
    }
}

/// `ρ: Σ_fine → Σ_coarse`, sending each block to the block containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionMap {
    from: Spectrum,
    to: Spectrum,
    table: Vec<usize>,
}

impl RestrictionMap {
    pub fn new(fine: &Partition, coarse: &Partition) -> Result<Self> {
        if !coarse.is_coarser(fine)? {
            return Err(Error::input(format!("{coarse:?} is not a coarsening of {fine:?}")));
        }
        let table = fine.blocks().iter().map(|b| coarse.block_of(b[0])).collect();
        Ok(RestrictionMap { from: Spectrum::new(fine.clone()), to: Spectrum::new(coarse.clone()), table })
    }

    pub fn from(&self) -> &Spectrum {
        &self.from
    }

    pub fn to(&self) -> &Spectrum {
        &self.to
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &RestrictionMap) -> Result<RestrictionMap> {
        if next.from != self.to {
            return Err(Error::input("restriction maps do not compose"));
        }
        Ok(RestrictionMap {
            from: self.from.clone(),
            to: next.to.clone(),
            table: self.table.iter().map(|&t| next.table[t]).collect(),
        })
    }
}

/// A probability valuation on `Σ_C`: nonnegative exact weights summing to 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Valuation {
    spectrum: Spectrum,
    weights: Vec<BigRational>,
}

impl Valuation {
    pub fn new(context: Partition, weights: Vec<BigRational>) -> Result<Self> {
        if weights.len() != context.block_count() {
            return Err(Error::input(format!(
                "{} weights for a context with {} blocks",
                weights.len(),
                context.block_count()
            )));
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(Error::input(format!("negative weight {w}")));
        }
        let total: BigRational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::input(format!("weights sum to {total}, not 1")));
        }
        Ok(Valuation { spectrum: Spectrum::new(context), weights })
    }

    /// Weights given as `(num, den)` pairs.
    pub fn from_ratios(context: Partition, weights: &[(i64, i64)]) -> Result<Self> {
        let w = weights.iter().map(|&(n, d)| ratio(n, d)).collect::<Result<Vec<_>>>()?;
        Valuation::new(context, w)
    }

    /// `δ_λ` for the `k`-th block.
    pub fn point(context: Partition, k: usize) -> Result<Self> {
        let mut w = vec![BigRational::zero(); context.block_count()];
        *w.get_mut(k).ok_or_else(|| Error::input(format!("no block {k}")))? = BigRational::one();
        Valuation::new(context, w)
    }

    pub fn uniform(context: Partition) -> Self {
        let k = context.block_count();
        let w = vec![BigRational::new(BigInt::one(), BigInt::from(k)); k];
        Valuation { spectrum: Spectrum::new(context), weights: w }
    }

    /// Reads a `{"block label": [num, den]}` map; missing blocks get weight 0.
    pub fn from_labeled(context: Partition, ambient: &AmbientSet, map: &IndexMap<String, (i64, i64)>) -> Result<Self> {
        let labels: Vec<String> = context.blocks().iter().map(|b| ambient.block_label(b)).collect();
        let mut w = vec![BigRational::zero(); labels.len()];
        for (key, &(n, d)) in map {
            let canon = canonical_block_label(key, ambient)?;
            let k = labels
                .iter()
                .position(|l| *l == canon)
                .ok_or_else(|| Error::input(format!("{key} is not a block of {}", ambient.format(&context))))?;
            w[k] = ratio(n, d)?;
        }
        Valuation::new(context, w)
    }

    pub fn to_labeled(&self, ambient: &AmbientSet) -> IndexMap<String, (i64, i64)> {
        self.spectrum
            .points()
            .iter()
            .zip(&self.weights)
            .map(|(b, w)| (ambient.block_label(b), ratio_parts(w).expect("weight fits in i64")))
            .collect()
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn context(&self) -> &Partition {
        self.spectrum.context()
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn weight(&self, k: usize) -> &BigRational {
        &self.weights[k]
    }

    pub fn total(&self) -> BigRational {
        self.weights.iter().sum()
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.weights.iter().all(Signed::is_positive)
    }
}

fn canonical_block_label(key: &str, ambient: &AmbientSet) -> Result<String> {
    let inner = key.trim().trim_start_matches('{').trim_end_matches('}');
    let mut points = Vec::new();
    for part in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        points.push(ambient.position(part).ok_or_else(|| Error::input(format!("unknown point {part:?} in {key}")))?);
    }
    points.sort_unstable();
    Ok(ambient.block_label(&points))
}

#[derive(Serialize, Deserialize)]
struct ValuationWire {
    context: Partition,
    weights: Vec<(i64, i64)>,
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let weights = self
            .weights
            .iter()
            .map(|w| ratio_parts(w).ok_or_else(|| serde::ser::Error::custom("weight does not fit in i64")))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        ValuationWire { context: self.context().clone(), weights }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Valuation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ValuationWire::deserialize(d)?;
        Valuation::from_ratios(w.context, &w.weights).map_err(serde::de::Error::custom)
    }
}

/// `μ ↦ μ ∘ ρ⁻¹`.
pub fn pushforward(mu: &Valuation, r: &RestrictionMap) -> Result<Valuation> {
    if mu.spectrum != r.from {
        return Err(Error::input("valuation is not defined on the source of the restriction map"));
    }
    let mut w = vec![BigRational::zero(); r.to.len()];
    for (k, weight) in mu.weights.iter().enumerate() {
        w[r.table[k]] += weight;
    }
    Ok(Valuation { spectrum: r.to.clone(), weights: w })
}

/// Result of [`product_extension`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProductExtension {
    /// The unique valuation on `Σ_{C∨D}` with product marginals.
    Extended(Valuation),
    /// Disjoint blocks carrying positive product mass.
    Obstructed { left_block: Vec<usize>, right_block: Vec<usize>, mass: BigRational },
}

impl ProductExtension {
    pub fn valuation(&self) -> Option<&Valuation> {
        match self {
            ProductExtension::Extended(v) => Some(v),
            ProductExtension::Obstructed { .. } => None,
        }
    }
}

/// Extends `μ₁ ⊗ μ₂` to `C ∨ D`.
///
/// Blocks of `C ∨ D` are the nonempty intersections `b ∩ b′`, and the only
/// candidate gives each the weight `μ₁(b)·μ₂(b′)`. It is a valuation iff no
/// disjoint pair carries positive mass.
pub fn product_extension(mu1: &Valuation, mu2: &Valuation, pair: &PartitionPair) -> Result<ProductExtension> {
    let (c, d) = (mu1.context(), mu2.context());
    if !c.is_coarser(pair.left())? {
        return Err(Error::input(format!("{c:?} is not a context of the left algebra")));
    }
    if !d.is_coarser(pair.right())? {
        return Err(Error::input(format!("{d:?} is not a context of the right algebra")));
    }
    let join = c.common_refinement(d)?;
    let mut hit = vec![vec![false; d.block_count()]; c.block_count()];
    for b in join.blocks() {
        hit[c.block_of(b[0])][d.block_of(b[0])] = true;
    }
    for (i, row) in hit.iter().enumerate() {
        for (j, &nonempty) in row.iter().enumerate() {
            let mass = &mu1.weights[i] * &mu2.weights[j];
            if !nonempty && mass.is_positive() {
                return Ok(ProductExtension::Obstructed {
                    left_block: c.blocks()[i].clone(),
                    right_block: d.blocks()[j].clone(),
                    mass,
                });
            }
        }
    }
    let weights: Vec<BigRational> = join
        .blocks()
        .iter()
        .map(|b| &mu1.weights[c.block_of(b[0])] * &mu2.weights[d.block_of(b[0])])
        .collect();
    Ok(ProductExtension::Extended(Valuation::new(join, weights)?))
}

/// A strictly positive valuation on `context` with a random denominator
/// between the block count and `max(SAMPLE_DENOMINATOR, block count)`.
pub fn sample_positive(context: &Partition, rng: &mut impl Rng) -> Valuation {
    let k = context.block_count();
    let q = rng.gen_range(k..=SAMPLE_DENOMINATOR.max(k));
    let mut cuts: Vec<usize> = sample(rng, q - 1, k - 1).into_iter().map(|c| c + 1).collect();
    cuts.sort_unstable();
    cuts.push(q);
    let mut prev = 0;
    let weights = cuts
        .into_iter()
        .map(|c| {
            let w = BigRational::new(BigInt::from(c - prev), BigInt::from(q));
            prev = c;
            w
        })
        .collect();
    Valuation { spectrum: Spectrum::new(context.clone()), weights }
}

/// Outcome of [`valuation_independence_test`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationTestReport {
    pub independent: bool,
    pub context_pairs: usize,
    pub samples: usize,
    /// First context pair admitting a non-extendable positive valuation pair.
    pub witness: Option<ValuationWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValuationWitness {
    pub left_context: Partition,
    pub right_context: Partition,
    pub left_block: Vec<usize>,
    pub right_block: Vec<usize>,
}

/// Sampling controls for [`valuation_independence_test`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub seed: u64,
    pub per_context_pair: usize,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { seed: 0, per_context_pair: 2 }
    }
}

/// Whether every pair of strictly positive valuations on contexts of `A` and
/// `B` has a product extension.
///
/// Each context pair is decided exactly (all blocks pairwise intersect), then
/// spot-checked on sampled valuations, whose extensions must also have the
/// right marginals. The answer must match C*-independence.
pub fn valuation_independence_test(pair: &PartitionPair, limits: &Limits, sampling: Sampling) -> Result<ValuationTestReport> {
    let ca = ContextPoset::enumerate_with_limit(pair.left(), limits.max_bell)?;
    let cb = ContextPoset::enumerate_with_limit(pair.right(), limits.max_bell)?;
    let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
    let mut witness = None;
    let mut samples = 0;
    for c in ca.iter() {
        for d in cb.iter() {
            let disjoint = c.blocks().iter().find_map(|b| {
                d.blocks()
                    .iter()
                    .find(|b2| !b.iter().any(|x| d.block_of(*x) == d.block_of(b2[0])))
                    .map(|b2| (b.clone(), b2.clone()))
            });
            let join = c.common_refinement(d)?;
            let to_c = RestrictionMap::new(&join, c)?;
            let to_d = RestrictionMap::new(&join, d)?;
            for _ in 0..sampling.per_context_pair {
                let mu1 = sample_positive(c, &mut rng);
                let mu2 = sample_positive(d, &mut rng);
                samples += 1;
                match (product_extension(&mu1, &mu2, pair)?, &disjoint) {
                    (ProductExtension::Extended(v), None) => {
                        if pushforward(&v, &to_c)? != mu1 || pushforward(&v, &to_d)? != mu2 {
                            return Err(Error::internal(format!("product extension has wrong marginals at {c:?}, {d:?}")));
                        }
                    }
                    (ProductExtension::Obstructed { .. }, Some(_)) => {}
                    _ => {
                        return Err(Error::internal(format!(
                            "sampled product extension contradicts the block criterion at {c:?}, {d:?}"
                        )))
                    }
                }
            }
            if let (None, Some((l, r))) = (&witness, disjoint) {
                witness = Some(ValuationWitness {
                    left_context: c.clone(),
                    right_context: d.clone(),
                    left_block: l,
                    right_block: r,
                });
            }
        }
    }
    let independent = witness.is_none();
    let cstar = cstar_independent(&AlgebraPair::Partition(pair.clone()))?.verdict.is_true();
    if independent != cstar {
        return Err(Error::internal(format!(
            "valuation test gives {independent}, C*-independence gives {cstar} for {:?}, {:?}",
            pair.left(),
            pair.right()
        )));
    }
    Ok(ValuationTestReport { independent, context_pairs: ca.len() * cb.len(), samples, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::all_partitions;

    fn idx(n: usize, blocks: &[&[usize]]) -> Partition {
        Partition::from_blocks(n, blocks.iter().map(|b| b.to_vec()).collect()).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        ratio(n, d).unwrap()
    }

    fn example() -> PartitionPair {
        PartitionPair::new(idx(4, &[&[0, 1], &[2, 3]]), idx(4, &[&[0, 2], &[1, 3]])).unwrap()
    }

    fn halves() -> PartitionPair {
        PartitionPair::new(idx(3, &[&[0, 1], &[2]]), idx(3, &[&[0], &[1, 2]])).unwrap()
    }

    #[test]
    fn valuation_validation() {
        let c = idx(3, &[&[0, 1], &[2]]);
        assert!(Valuation::from_ratios(c.clone(), &[(1, 2), (1, 3)]).is_err());
        assert!(Valuation::from_ratios(c.clone(), &[(3, 2), (-1, 2)]).is_err());
        assert!(Valuation::from_ratios(c.clone(), &[(1, 1)]).is_err());
        assert!(Valuation::from_ratios(c, &[(1, 2), (1, 2)]).is_ok());
    }

    #[test]
    fn pushforward_examples() {
        let fine = Partition::discrete(4);
        let coarse = idx(4, &[&[0, 1], &[2, 3]]);
        let rho = RestrictionMap::new(&fine, &coarse).unwrap();
        let p = pushforward(&Valuation::point(fine.clone(), 2).unwrap(), &rho).unwrap();
        assert_eq!(p, Valuation::point(coarse.clone(), 1).unwrap());
        let u = pushforward(&Valuation::uniform(fine.clone()), &rho).unwrap();
        assert_eq!(u.weights(), &[r(1, 2), r(1, 2)]);
        let t = RestrictionMap::new(&fine, &Partition::trivial(4)).unwrap();
        assert_eq!(pushforward(&Valuation::uniform(fine), &t).unwrap().weights(), &[r(1, 1)]);
        assert!(RestrictionMap::new(&coarse, &Partition::discrete(4)).is_err());
    }

    #[test]
    fn product_extension_examples() {
        let p = example();
        let mu1 = Valuation::from_ratios(p.left().clone(), &[(1, 2), (1, 2)]).unwrap();
        let mu2 = Valuation::from_ratios(p.right().clone(), &[(1, 3), (2, 3)]).unwrap();
        let v = product_extension(&mu1, &mu2, &p).unwrap();
        let v = v.valuation().unwrap();
        assert_eq!(v.weights(), &[r(1, 6), r(1, 3), r(1, 6), r(1, 3)]);

        let h = halves();
        let u1 = Valuation::uniform(h.left().clone());
        let u2 = Valuation::uniform(h.right().clone());
        assert_eq!(
            product_extension(&u1, &u2, &h).unwrap(),
            ProductExtension::Obstructed { left_block: vec![2], right_block: vec![0], mass: r(1, 4) }
        );

        let d1 = Valuation::point(p.left().clone(), 0).unwrap();
        let d2 = Valuation::point(p.right().clone(), 1).unwrap();
        let v = product_extension(&d1, &d2, &p).unwrap();
        assert_eq!(v.valuation().unwrap(), &Valuation::point(Partition::discrete(4), 1).unwrap());
    }

    #[test]
    fn product_extension_rejects_foreign_contexts() {
        let h = halves();
        let mu = Valuation::uniform(Partition::discrete(3));
        assert!(matches!(product_extension(&mu, &mu, &h), Err(Error::Input(_))));
    }

    #[test]
    fn independence_test_examples() {
        let s = Sampling::default();
        let lim = Limits::default();
        assert!(valuation_independence_test(&example(), &lim, s).unwrap().independent);
        let r = valuation_independence_test(&halves(), &lim, s).unwrap();
        assert!(!r.independent);
        let w = r.witness.unwrap();
        assert_eq!((&w.left_context, &w.right_context), (halves().left(), halves().right()));
        let scal = PartitionPair::new(Partition::trivial(3), idx(3, &[&[0], &[1, 2]])).unwrap();
        assert!(valuation_independence_test(&scal, &lim, s).unwrap().independent);
    }

    #[test]
    fn sampled_valuations_are_positive_and_normalised() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for c in all_partitions(5) {
            for _ in 0..5 {
                let v = sample_positive(&c, &mut rng);
                assert!(v.is_strictly_positive());
                assert!(v.total().is_one());
                assert!(v.weights().iter().all(|w| w.denom() <= &BigInt::from(12)));
            }
        }
    }

    #[test]
    fn labeled_round_trip() {
        let amb = AmbientSet::new(["a", "b", "c", "d"]).unwrap();
        let p = example();
        let mu = Valuation::from_ratios(p.right().clone(), &[(1, 3), (2, 3)]).unwrap();
        let m = mu.to_labeled(&amb);
        assert_eq!(m.get("{a,c}"), Some(&(1, 3)));
        let mut shuffled = IndexMap::new();
        shuffled.insert("{d, b}".to_string(), (2, 3));
        shuffled.insert("{c,a}".to_string(), (1, 3));
        assert_eq!(Valuation::from_labeled(p.right().clone(), &amb, &shuffled).unwrap(), mu);
        let json = serde_json::to_string(&mu).unwrap();
        assert_eq!(serde_json::from_str::<Valuation>(&json).unwrap(), mu);
    }
}
