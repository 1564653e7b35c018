//! The descent map of a pair, its ring components and the sheaf decision.

use locality::algebra::AmbientSet;
use locality::descent::{covering_stability, ring_component, sheaf_report};
use locality::independence::{Limits, PartitionPair};

fn main() -> locality::Result<()> {
    let limits = Limits::default();
    let amb = AmbientSet::new(["a", "b", "c", "d"])?;
    let pair = PartitionPair::new(
        amb.partition([vec!["a", "b"], vec!["c", "d"]])?,
        amb.partition([vec!["a", "c"], vec!["b", "d"]])?,
    )?;

    let r = sheaf_report(&pair, &limits)?;
    println!("h: {} -> {}", r.map.source_size, r.map.target_size);
    println!("injective {}, surjective {}", r.map.injective, r.map.surjective);
    println!("coreflector {}, thickening {}", r.map.adjunction.is_coreflector, r.map.thickening.thickening);
    println!("sheaf {} (characterised {})", r.sheaf, r.sheaf_characterized);

    let c = amb.partition([vec!["a", "d"], vec!["b"], vec!["c"]])?;
    let comp = ring_component(&c, &pair)?;
    println!(
        "component at {}: injective {}, surjective {}",
        amb.format(&c),
        comp.injective,
        comp.surjective
    );
    println!("restrictions: {} and {}", amb.format(&c.overlap_join(pair.left())?), amb.format(&c.overlap_join(pair.right())?));

    let v = covering_stability(&pair, &limits)?;
    println!("stability violations: {}", v.len());
    Ok(())
}
