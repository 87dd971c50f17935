//! The labelled neighbourhood of the edge {H, Hab} and the short cycles near H.

use semireg::verify::{LemmaId, Verifier};

fn main() -> semireg::Result<()> {
    let v = Verifier::new(2)?;
    let pic = v.local_picture();
    for (i, j) in &pic.edges {
        let (a, b) = (&pic.labels[*i], &pic.labels[*j]);
        println!("H{} ({}) -- H{} ({})", a.0, a.1, b.0, b.1);
    }
    let result = v.run(LemmaId::LocalStructure);
    for line in &result.diagnostics {
        println!("{line}");
    }
    Ok(())
}
