//! Orders of semiregular elements of G acting on the cosets of H.

use semireg::groupg::Group;

fn main() -> semireg::Result<()> {
    for m in 1..=3 {
        let g = Group::new(m)?;
        let s = g.max_semiregular_order()?;
        println!("m = {m}: |G| = {}, semiregular orders {:?} ({} elements)", g.order(), s.orders, s.scanned);
    }
    let g = Group::new(2)?;
    let a = g.a();
    let report = g.is_semiregular(&a);
    println!("a at m = 2: order {}, semiregular {}", report.order, report.semiregular);
    if let Some(w) = report.witness {
        println!("    a power of a fixes {}", g.describe_coset(&w));
    }
    Ok(())
}
