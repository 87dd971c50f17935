//! The action of ⟨a, b⟩ on V/⟨z⟩ over F_3 and its splitting under a.

use semireg::extraspecial::Extraspecial;
use semireg::ff3::is_irreducible;
use semireg::verify::w_factors;

fn main() -> semireg::Result<()> {
    for m in 1..=3 {
        let v = Extraspecial::new(m)?;
        let a = v.matrix_on_w(&v.aut_a())?;
        let b = v.matrix_on_w(&v.aut_b())?;
        println!("m = {m}: char poly of a = {}, irreducible {}", a.char_poly(), is_irreducible(&[a.clone(), b])?);
        if m >= 2 {
            let (p, q) = w_factors(m);
            let (wp, wq) = (p.eval_matrix(&a).kernel(), q.eval_matrix(&a).kernel());
            println!("    ker({p}) has dim {}, ker({q}) has dim {}", wp.len(), wq.len());
        }
    }
    Ok(())
}
