//! A diamond-shaped net: validation and per-pair analysis.

use locality::algebra::{AmbientSet, Partition};
use locality::independence::Limits;
use locality::net::{analyze_net, validate_net, NetSpec, SpacetimePoset};

fn main() -> locality::Result<()> {
    let amb = AmbientSet::new(["a", "b", "c", "d"])?;
    let st = SpacetimePoset::new(
        vec!["bottom".into(), "O1".into(), "O2".into(), "top".into()],
        &[("bottom", "O1"), ("bottom", "O2"), ("O1", "top"), ("O2", "top")],
        &[("O1", "O2")],
    )?;
    let net = NetSpec::new(
        st,
        amb.clone(),
        vec![
            Partition::trivial(4),
            amb.partition([vec!["a", "b"], vec!["c", "d"]])?,
            amb.partition([vec!["a", "c"], vec!["b", "d"]])?,
            Partition::discrete(4),
        ],
    )?;

    let v = validate_net(&net);
    println!("valid: {} ({} violations)", v.valid, v.violations.len());
    let r = analyze_net(&net, &Limits::default())?;
    for p in &r.pairs {
        println!("{} / {}: strong locality {}, sheaf {}", p.left, p.right, p.hierarchy.strong_locality, p.descent.sheaf);
    }
    println!("{:?}", r.summary);
    Ok(())
}
