//! Primitive prime divisors of x^f − 1 and the pairs without one.

use semireg::numth::{primitive_prime_divisor, zsigmondy_scan};

fn main() -> semireg::Result<()> {
    for (x, f) in [(2, 4), (2, 11), (10, 6), (97, 20)] {
        println!("{x}^{f} - 1: least primitive prime divisor {:?}", primitive_prime_divisor(x, f)?.prime);
    }
    for e in zsigmondy_scan(2..=40, 1..=12)? {
        if let Some(kind) = e.result.exception {
            println!("no primitive prime divisor for ({}, {}): {}", e.x, e.f, kind.describe(e.x, e.f));
        }
    }
    Ok(())
}
