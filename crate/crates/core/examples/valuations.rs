//! Pushforward of valuations and product extension across a pair.

use locality::algebra::{AmbientSet, Partition};
use locality::independence::{Limits, PartitionPair};
use locality::valuations::{
    product_extension, pushforward, valuation_independence_test, ProductExtension, RestrictionMap, Sampling,
    Valuation,
};

fn main() -> locality::Result<()> {
    let amb = AmbientSet::new(["a", "b", "c", "d"])?;
    let a = amb.partition([vec!["a", "b"], vec!["c", "d"]])?;
    let b = amb.partition([vec!["a", "c"], vec!["b", "d"]])?;
    let pair = PartitionPair::new(a.clone(), b.clone())?;

    let mu1 = Valuation::from_ratios(a.clone(), &[(1, 2), (1, 2)])?;
    let mu2 = Valuation::from_ratios(b, &[(1, 3), (2, 3)])?;
    if let ProductExtension::Extended(v) = product_extension(&mu1, &mu2, &pair)? {
        println!("extension: {:?}", v.to_labeled(&amb));
        let back = pushforward(&v, &RestrictionMap::new(v.context(), &a)?)?;
        println!("left marginal recovered: {}", back == mu1);
    }

    let three = AmbientSet::numbered(3);
    let halves = PartitionPair::new(
        three.partition([vec!["0", "1"], vec!["2"]])?,
        three.partition([vec!["0"], vec!["1", "2"]])?,
    )?;
    let u1 = Valuation::uniform(halves.left().clone());
    let u2 = Valuation::uniform(halves.right().clone());
    match product_extension(&u1, &u2, &halves)? {
        ProductExtension::Obstructed { left_block, right_block, mass } => println!(
            "no extension: {} and {} carry {}",
            three.block_label(&left_block),
            three.block_label(&right_block),
            mass
        ),
        ProductExtension::Extended(_) => println!("unexpected extension"),
    }

    let r = valuation_independence_test(&halves, &Limits::default(), Sampling { seed: 1, per_context_pair: 4 })?;
    println!("independent: {} after {} samples", r.independent, r.samples);

    let point = Valuation::point(Partition::discrete(4), 3)?;
    let pushed = pushforward(&point, &RestrictionMap::new(&Partition::discrete(4), &a)?)?;
    println!("δ_d pushed to A: {:?}", pushed.to_labeled(&amb));
    Ok(())
}
