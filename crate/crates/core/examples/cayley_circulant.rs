//! Cayley graphs of cyclic groups and their automorphism groups.

use semireg::graphs::cayley_graph;
use semireg::permaut::automorphism_group;

fn main() -> semireg::Result<()> {
    let n = 10;
    let elements: Vec<usize> = (0..n).collect();
    for conn in [vec![1, 9], vec![1, 9, 5], vec![2, 8, 5]] {
        let g = cayley_graph(&elements, &conn, |a, b| (a + b) % n)?;
        let aut = automorphism_group(&g)?;
        println!("Cay(Z_{n}, {conn:?}): {} edges, connected {}, |Aut| = {}", g.edge_count(), g.is_connected(), aut.order()?);
    }
    Ok(())
}
