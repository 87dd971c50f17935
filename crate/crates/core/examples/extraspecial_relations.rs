//! The extraspecial group V and the automorphisms a, b for m = 1, 2, 3.

use semireg::extraspecial::Extraspecial;

fn main() -> semireg::Result<()> {
    for m in 1..=3 {
        let v = Extraspecial::new(m)?;
        let (a, b) = (v.aut_a(), v.aut_b());
        let ord_a = v.aut_order(&a)?;
        let bab = v.compose(&b, &v.compose(&a, &b));
        println!(
            "m = {m}: |V| = 3^{}, a valid {}, b valid {}, |a| = {ord_a}, |b| = {}, bab = a^-1: {}",
            v.dim() + 1,
            v.verify_relations(&a),
            v.verify_relations(&b),
            v.aut_order(&b)?,
            bab == v.aut_pow(&a, ord_a - 1),
        );
        let (v1, v2) = (v.generator(0), v.generator(1));
        println!("    [v1, v2] = {}", v.commutator(&v1, &v2));
    }
    Ok(())
}
