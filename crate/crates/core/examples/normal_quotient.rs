//! Quotients of Γ_m by the orbits of V.

use semireg::graphs::gamma;

fn main() -> semireg::Result<()> {
    for m in 1..=2 {
        let cg = gamma(m)?;
        let q = cg.graph().normal_quotient(&cg.v_orbits())?;
        println!(
            "m = {m}: {} orbits, quotient has {} edges ({} parallel edges collapsed)",
            q.graph.n(),
            q.graph.edge_count(),
            q.collapsed_edges
        );
        print!("{}", q.graph.to_edge_list());
    }
    Ok(())
}
