//! Graphviz output for a context poset and for the descent map.

use locality::algebra::AmbientSet;
use locality::contexts::{map_to_dot, poset_to_dot, ContextPoset};
use locality::descent::Descent;
use locality::independence::{Limits, PartitionPair};

fn main() -> locality::Result<()> {
    let amb = AmbientSet::new(["x", "y", "z"])?;
    let full = amb.partition([vec!["x"], vec!["y"], vec!["z"]])?;
    let ctx = ContextPoset::enumerate(&full)?.with_ambient(&amb)?;
    print!("{}", poset_to_dot(&ctx, "contexts"));

    let pair = PartitionPair::new(
        amb.partition([vec!["x", "y"], vec!["z"]])?,
        amb.partition([vec!["x"], vec!["y", "z"]])?,
    )?;
    let d = Descent::new(&pair, &Limits::default())?.with_ambient(&amb)?;
    print!("{}", map_to_dot(&d.map()?, "h"));
    Ok(())
}
