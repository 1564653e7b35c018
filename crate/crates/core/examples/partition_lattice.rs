//! Partitions as commutative subalgebras: refinement, intersection and
//! context enumeration.

use locality::algebra::{all_partitions, bell_number, AmbientSet};
use locality::contexts::{ContextPoset, Poset};

fn main() -> locality::Result<()> {
    let amb = AmbientSet::new(["a", "b", "c", "d"])?;
    let a = amb.partition([vec!["a", "b"], vec!["c", "d"]])?;
    let b = amb.partition([vec!["a", "c"], vec!["b", "d"]])?;

    println!("A       = {}", amb.format(&a));
    println!("B       = {}", amb.format(&b));
    println!("A ∨ B   = {}", amb.format(&a.common_refinement(&b)?));
    println!("A ∩ B   = {}", amb.format(&a.overlap_join(&b)?));
    println!("A ⊆ A∨B : {}", a.is_coarser(&a.common_refinement(&b)?)?);

    for n in 0..=6 {
        println!("n = {n}: {} partitions, Bell = {:?}", all_partitions(n).count(), bell_number(n));
    }

    let ctx = ContextPoset::enumerate(&a.common_refinement(&b)?)?.with_ambient(&amb)?;
    println!("contexts of A ∨ B: {}", ctx.len());
    for i in 0..ctx.len() {
        println!("  {}", ctx.label(i));
    }
    Ok(())
}
