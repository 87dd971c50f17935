//! Builds Γ_m and prints its basic invariants and a few vertex labels.

use semireg::graphs::gamma;

fn main() -> semireg::Result<()> {
    let m = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2);
    let cg = gamma(m)?;
    let g = cg.graph();
    println!("Γ_{m}: {} vertices, {} edges, cubic {}, connected {}", g.n(), g.edge_count(), g.is_cubic(), g.is_connected());
    for v in 0..4 {
        let nbrs: Vec<String> = g.neighbors(v).iter().map(|&u| cg.descriptor(u)).collect();
        println!("{} ~ {}", cg.descriptor(v), nbrs.join(", "));
    }
    println!("{}", cg.group().numbering_scheme());
    Ok(())
}
