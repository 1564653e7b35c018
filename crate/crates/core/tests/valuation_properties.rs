mod common;

use common::{grid, halves, pairs_up_to};
use locality::algebra::{all_partitions, Partition};
use locality::contexts::ContextPoset;
use locality::independence::{cstar_independent, Limits, PartitionPair};
use locality::valuations::{
    product_extension, pushforward, sample_positive, valuation_independence_test, ProductExtension, RestrictionMap,
    Sampling, Valuation,
};
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn pushforward_is_functorial_on_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in 1..=4 {
        let all: Vec<Partition> = all_partitions(n).collect();
        for fine in &all {
            for mid in all.iter().filter(|m| m.is_coarser(fine).unwrap()) {
                for coarse in all.iter().filter(|c| c.is_coarser(mid).unwrap()) {
                    let r1 = RestrictionMap::new(fine, mid).unwrap();
                    let r2 = RestrictionMap::new(mid, coarse).unwrap();
                    let direct = RestrictionMap::new(fine, coarse).unwrap();
                    assert_eq!(r1.then(&r2).unwrap(), direct);
                    for mu in [Valuation::uniform(fine.clone()), sample_positive(fine, &mut rng)] {
                        let stepwise = pushforward(&pushforward(&mu, &r1).unwrap(), &r2).unwrap();
                        assert_eq!(stepwise, pushforward(&mu, &direct).unwrap());
                        assert!(stepwise.total().is_one());
                    }
                }
            }
        }
    }
}

#[test]
fn independence_test_matches_cstar_independence() {
    for p in pairs_up_to(4) {
        let r = valuation_independence_test(&p, &Limits::default(), Sampling::default()).unwrap();
        assert_eq!(r.independent, cstar_independent(&p.clone().into()).unwrap().verdict.is_true());
    }
}

#[test]
fn test_is_seed_deterministic() {
    let s = Sampling { seed: 5, per_context_pair: 3 };
    let a = valuation_independence_test(&grid(), &Limits::default(), s).unwrap();
    assert_eq!(a, valuation_independence_test(&grid(), &Limits::default(), s).unwrap());
    let h = valuation_independence_test(&halves(), &Limits::default(), s).unwrap();
    let w = h.witness.unwrap();
    assert_eq!((w.left_block, w.right_block), (vec![2], vec![0]));
}

fn contexts_of(p: &Partition) -> Vec<Partition> {
    ContextPoset::enumerate(p).unwrap().elements().to_vec()
}

fn pair_with_contexts() -> impl Strategy<Value = (PartitionPair, Partition, Partition, u64)> {
    (1usize..=4).prop_flat_map(|n| {
        proptest::sample::select(common::all_pairs(n)).prop_flat_map(|p| {
            let (cs, ds) = (contexts_of(p.left()), contexts_of(p.right()));
            (Just(p), proptest::sample::select(cs), proptest::sample::select(ds), any::<u64>())
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn extensions_have_the_right_marginals((pair, c, d, seed) in pair_with_contexts()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu1 = sample_positive(&c, &mut rng);
        let mu2 = sample_positive(&d, &mut rng);
        let all_meet = c.blocks().iter().all(|b| d.blocks().iter().all(|b2| b.iter().any(|x| b2.contains(x))));
        match product_extension(&mu1, &mu2, &pair).unwrap() {
            ProductExtension::Extended(v) => {
                prop_assert!(all_meet);
                prop_assert!(v.total().is_one());
                prop_assert_eq!(pushforward(&v, &RestrictionMap::new(v.context(), &c).unwrap()).unwrap(), mu1);
                prop_assert_eq!(pushforward(&v, &RestrictionMap::new(v.context(), &d).unwrap()).unwrap(), mu2);
            }
            ProductExtension::Obstructed { left_block, right_block, .. } => {
                prop_assert!(!all_meet);
                prop_assert!(!left_block.iter().any(|x| right_block.contains(x)));
            }
        }
    }

    #[test]
    fn point_masses_extend_iff_blocks_meet((pair, c, d, seed) in pair_with_contexts()) {
        let i = (seed as usize) % c.block_count();
        let j = (seed as usize / 7) % d.block_count();
        let d1 = Valuation::point(c.clone(), i).unwrap();
        let d2 = Valuation::point(d.clone(), j).unwrap();
        let meet = c.blocks()[i].iter().any(|x| d.blocks()[j].contains(x));
        let ext = product_extension(&d1, &d2, &pair).unwrap();
        prop_assert_eq!(ext.valuation().is_some(), meet);
    }
}
