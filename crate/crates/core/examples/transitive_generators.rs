//! Three automorphisms of Γ_m, one per neighbour of a vertex, that already
//! act transitively on the vertices.

use semireg::graphs::gamma;
use semireg::permaut::{automorphism_group, find_transitive_generators, PermGroup};

fn main() -> semireg::Result<()> {
    for m in 1..=2 {
        let g = gamma(m)?;
        let aut = automorphism_group(g.graph())?;
        let gens = find_transitive_generators(g.graph(), &aut)?;
        let sub = PermGroup::new(g.graph().n(), gens.clone())?;
        println!("m = {m}: {} generators, transitive {}, subgroup order {}", gens.len(), sub.is_transitive(), sub.order()?);
        for p in &gens {
            println!("    order {}, longest cycle {}", p.order(), p.cycle_type().iter().max().unwrap_or(&1));
        }
    }
    Ok(())
}
