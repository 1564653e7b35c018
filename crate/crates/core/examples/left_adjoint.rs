//! Left adjoints of monotone maps and the thickening test.

use locality::contexts::{left_adjoint, thickening_report, FinitePoset, MonotoneMap};

fn main() -> locality::Result<()> {
    // A square collapsing onto a chain of two.
    let square = FinitePoset::from_relations(
        vec!["0", "x", "y", "1"],
        &[(0, 1), (0, 2), (1, 3), (2, 3)],
    )?;
    let chain = FinitePoset::chain(2);

    for (name, table) in [("collapse x", vec![0, 0, 1, 1]), ("collapse top", vec![0, 1, 1, 1])] {
        let f = MonotoneMap::new(&square, &chain, table)?;
        let adj = left_adjoint(&f)?;
        let th = thickening_report(&f)?;
        println!("{name}:");
        println!("  adjoint {:?}, coreflector {}, iso {}", adj.adjoint, adj.is_coreflector, adj.is_iso);
        println!("  fiber sizes {:?}, thickening {}", th.fiber_sizes, th.thickening);
    }

    let bad = MonotoneMap::new(&chain, &chain, vec![1, 0]);
    println!("order-reversing table rejected: {}", bad.is_err());
    Ok(())
}
