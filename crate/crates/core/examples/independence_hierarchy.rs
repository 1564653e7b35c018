//! The hierarchy of independence conditions on two pairs, and a search for
//! pairs that are extended local without being strongly local.

use locality::algebra::AmbientSet;
use locality::independence::{hierarchy_report, separating_examples, AlgebraPair, Condition, Limits};

fn main() -> locality::Result<()> {
    let limits = Limits::default();
    let amb = AmbientSet::new(["a", "b", "c", "d"])?;
    let grid = AlgebraPair::partitions(
        amb.partition([vec!["a", "b"], vec!["c", "d"]])?,
        amb.partition([vec!["a", "c"], vec!["b", "d"]])?,
    )?;
    let three = AmbientSet::numbered(3);
    let halves = AlgebraPair::partitions(
        three.partition([vec!["0", "1"], vec!["2"]])?,
        three.partition([vec!["0"], vec!["1", "2"]])?,
    )?;

    for (name, pair) in [("grid", &grid), ("halves", &halves)] {
        let r = hierarchy_report(pair, &limits)?;
        println!("{name}");
        for c in Condition::ALL {
            println!("  {:<20}{}", c.name(), r.get(c));
        }
    }

    for n in 1..=4 {
        println!("n = {n}: {} separating pairs", separating_examples(n, &limits)?.len());
    }
    Ok(())
}
