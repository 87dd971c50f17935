//! Primitive prime divisors and multiplicative orders.
//!
//! A prime `r` is a primitive prime divisor of `x^f − 1` when it divides
//! `x^f − 1` but no `x^s − 1` with `s < f`, that is, when `x` has order
//! exactly `f` modulo `r`. Writing `x = y^k` with `k` maximal, such an `r`
//! divides `Φ_d(y)` for some `d | kf` with `d / gcd(d, k) = f`, so only these
//! cyclotomic values are factored. They stay far smaller than `x^f − 1`.

use std::collections::BTreeSet;

use num_prime::nt_funcs::{is_prime, is_prime64};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Candidates `r ≡ 1 (mod f)` up to this bound are tried by trial division
/// before any cyclotomic value is factored completely.
const TRIAL_BOUND: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PpdException {
    /// `f = 2` and `x + 1` is a power of two.
    MersenneF2,
    /// `x = 2`, `f = 6`.
    TwoSix,
    /// `x = 2`, `f = 1`: `x^f − 1 = 1` has no prime divisors at all.
    Degenerate,
}

impl PpdException {
    pub fn describe(self, x: u64, f: u32) -> String {
        match self {
            PpdException::MersenneF2 => format!("{x} = 2^{} \u{2212} 1, f = 2", (x + 1).trailing_zeros()),
            PpdException::TwoSix => "2^6\u{2212}1".to_string(),
            PpdException::Degenerate => format!("{x}^{f}\u{2212}1 = 1"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PpdResult {
    pub exists: bool,
    /// The least primitive prime divisor.
    pub prime: Option<u128>,
    pub exception: Option<PpdException>,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if let Some(p) = a.checked_mul(b) {
        return p % m;
    }
    let (mut a, mut b, mut acc) = (a % m, b, 0u128);
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod(acc, a, m);
        }
        a = add_mod(a, a, m);
        b >>= 1;
    }
    acc
}

fn add_mod(a: u128, b: u128, m: u128) -> u128 {
    let (s, overflow) = a.overflowing_add(b);
    if overflow || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

fn pow_mod(base: u128, mut e: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut b = base % m;
    let mut acc = 1u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

fn prime_factors_small(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    out.sort_unstable();
    out
}

/// Whether `x` has order exactly `f` modulo the prime `r`.
fn has_order(x: u64, f: u32, r: u128) -> bool {
    if pow_mod(x as u128, f as u128, r) != 1 {
        return false;
    }
    prime_factors_small(f as u64).into_iter().all(|p| pow_mod(x as u128, (f as u64 / p) as u128, r) != 1)
}

/// `x = y^k` with `k` as large as possible.
fn perfect_power(x: u64) -> (u64, u32) {
    for k in (2..=63u32).rev() {
        let y = (x as f64).powf(1.0 / k as f64).round() as u64;
        for cand in y.saturating_sub(1).max(2)..=y + 1 {
            if cand.checked_pow(k) == Some(x) {
                return (cand, k);
            }
        }
    }
    (x, 1)
}

/// Integer coefficients of the `d`-th cyclotomic polynomial, lowest first.
fn cyclotomic_coeffs(d: u64) -> Vec<i128> {
    // x^d − 1 divided by Φ_e for every proper divisor e of d
    let mut poly = vec![0i128; d as usize + 1];
    poly[0] = -1;
    poly[d as usize] = 1;
    for e in divisors(d).into_iter().filter(|&e| e < d) {
        let div = cyclotomic_coeffs(e);
        poly = exact_div(&poly, &div);
    }
    poly
}

/// Quotient of `num` by the monic `den`.
fn exact_div(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i128; qn + 1];
    for i in (0..=qn).rev() {
        let c = rem[i + dn];
        q[i] = c;
        for (j, &dc) in den.iter().enumerate() {
            rem[i + j] -= c * dc;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// `Φ_d(y)`, or a capacity error when it does not fit in `u128`.
fn cyclotomic_value(d: u64, y: u64) -> Result<u128> {
    let overflow = || Error::Capacity(format!("cyclotomic value Φ_{d}({y}) exceeds 128 bits"));
    let coeffs = cyclotomic_coeffs(d);
    // Horner from the top; partial values of a cyclotomic polynomial at
    // y ≥ 2 stay positive, so an i128 accumulator suffices until overflow
    let mut acc: i128 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc.checked_mul(y as i128).and_then(|v| v.checked_add(c)).ok_or_else(overflow)?;
    }
    u128::try_from(acc).map_err(|_| overflow())
}

fn exception_of(x: u64, f: u32) -> Option<PpdException> {
    match (x, f) {
        (2, 1) => Some(PpdException::Degenerate),
        (2, 6) => Some(PpdException::TwoSix),
        (_, 2) if (x + 1).is_power_of_two() => Some(PpdException::MersenneF2),
        _ => None,
    }
}

/// Least primitive prime divisor of `x^f − 1`, or the exception explaining
/// its absence.
pub fn primitive_prime_divisor(x: u64, f: u32) -> Result<PpdResult> {
    if x < 2 || f < 1 {
        return Err(Error::Parameter(format!("need x >= 2 and f >= 1, got x = {x}, f = {f}")));
    }
    let (y, k) = perfect_power(x);
    let kf = k as u64 * f as u64;
    let mut pieces: Vec<u128> = Vec::new();
    for d in divisors(kf) {
        if d / gcd(d, k as u64) == f as u64 {
            pieces.push(cyclotomic_value(d, y)?);
        }
    }
    // primes dividing f are never primitive (a primitive r has r ≡ 1 mod f)
    let f_primes = prime_factors_small(f as u64);
    for piece in &mut pieces {
        for &p in &f_primes {
            while *piece % p as u128 == 0 {
                *piece /= p as u128;
            }
        }
    }
    let mut candidates: BTreeSet<u128> = BTreeSet::new();
    // ascending trial over r ≡ 1 (mod f): the first hit is the least
    let mut r = f as u64 + 1;
    while r <= TRIAL_BOUND {
        if pieces.iter().any(|&p| p % r as u128 == 0) && is_prime64(r) && has_order(x, f, r as u128) {
            return Ok(PpdResult { exists: true, prime: Some(r as u128), exception: None });
        }
        r += f as u64;
    }
    for piece in pieces {
        let mut rest = piece;
        let mut t = 2u64;
        while t <= TRIAL_BOUND && rest > 1 {
            if rest % t as u128 == 0 {
                while rest % t as u128 == 0 {
                    rest /= t as u128;
                }
            }
            t += 1;
        }
        if rest > 1 {
            factor_into(rest, &mut candidates);
        }
    }
    let prime = candidates.into_iter().find(|&r| has_order(x, f, r));
    Ok(PpdResult { exists: prime.is_some(), prime, exception: if prime.is_some() { None } else { exception_of(x, f) } })
}

/// Montgomery arithmetic modulo an odd `n`, with `R = 2^128`.
struct Montgomery {
    n: u128,
    /// `−n^{-1} mod 2^128`.
    n_neg_inv: u128,
}

/// Full 256-bit product as `(high, low)`.
fn mul_wide(a: u128, b: u128) -> (u128, u128) {
    const LOW: u128 = u64::MAX as u128;
    let (a1, a0) = (a >> 64, a & LOW);
    let (b1, b0) = (b >> 64, b & LOW);
    let (p00, p01, p10, p11) = (a0 * b0, a0 * b1, a1 * b0, a1 * b1);
    let mid = (p00 >> 64) + (p01 & LOW) + (p10 & LOW);
    let lo = (p00 & LOW) | (mid << 64);
    let hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
    (hi, lo)
}

impl Montgomery {
    fn new(n: u128) -> Montgomery {
        debug_assert!(n % 2 == 1);
        // Newton iteration doubles the number of correct low bits each step
        let mut inv = n;
        for _ in 0..7 {
            inv = inv.wrapping_mul(2u128.wrapping_sub(n.wrapping_mul(inv)));
        }
        Montgomery { n, n_neg_inv: inv.wrapping_neg() }
    }

    /// `a·b·R^{-1} mod n` for `a, b < n`.
    fn mul(&self, a: u128, b: u128) -> u128 {
        let (hi, lo) = mul_wide(a, b);
        let m = lo.wrapping_mul(self.n_neg_inv);
        let (mh, ml) = mul_wide(m, self.n);
        let carry = lo.overflowing_add(ml).1 as u128;
        let (t, o1) = hi.overflowing_add(mh);
        let (t, o2) = t.overflowing_add(carry);
        if o1 || o2 || t >= self.n {
            t.wrapping_sub(self.n)
        } else {
            t
        }
    }

    fn add(&self, a: u128, b: u128) -> u128 {
        let (s, o) = a.overflowing_add(b);
        if o || s >= self.n {
            s.wrapping_sub(self.n)
        } else {
            s
        }
    }
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    if a == 0 || b == 0 {
        return a | b;
    }
    let shift = (a | b).trailing_zeros();
    a >>= a.trailing_zeros();
    loop {
        b >>= b.trailing_zeros();
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        b -= a;
        if b == 0 {
            return a << shift;
        }
    }
}

/// A nontrivial factor of the odd composite `n` by Brent's variant of
/// Pollard's rho, iterating `y ↦ y² + c` in Montgomery form.
fn brent_rho(n: u128, c: u128) -> Option<u128> {
    const BATCH: u64 = 256;
    let mont = Montgomery::new(n);
    let step = |y: u128| mont.add(mont.mul(y, y), c);
    let (mut y, mut x, mut ys) = (2u128, 2u128, 2u128);
    let mut q = 1u128;
    let mut g = 1u128;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = step(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = step(y);
                q = mont.mul(q, x.abs_diff(y));
            }
            g = gcd128(q, n);
            k += BATCH;
        }
        r *= 2;
    }
    if g == n {
        // the batch overshot; redo it one step at a time
        loop {
            ys = step(ys);
            g = gcd128(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Inserts the prime factors of `n` into `out`.
fn factor_into(mut n: u128, out: &mut BTreeSet<u128>) {
    if n.is_multiple_of(2) {
        out.insert(2);
        n >>= n.trailing_zeros();
    }
    if n == 1 {
        return;
    }
    if is_prime(&n, None).probably() {
        out.insert(n);
        return;
    }
    let d = (1..).find_map(|c| brent_rho(n, c)).unwrap_or(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// Whether the least primitive prime divisor `r` (if any) satisfies `r ≥ f + 1`.
pub fn ppd_lower_bound_check(x: u64, f: u32) -> Result<bool> {
    Ok(primitive_prime_divisor(x, f)?.prime.is_none_or(|r| r > f as u128))
}

/// Least `k ≥ 1` with `x^k ≡ 1 (mod n)`.
pub fn multiplicative_order(x: u64, n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Parameter("modulus must be positive".into()));
    }
    if n == 1 {
        return Ok(1);
    }
    if gcd(x % n, n) != 1 {
        return Err(Error::Parameter(format!("{x} is not invertible modulo {n}")));
    }
    let mut acc = x as u128 % n as u128;
    let mut k = 1;
    while acc != 1 {
        acc = acc * (x as u128 % n as u128) % n as u128;
        k += 1;
    }
    Ok(k)
}

/// One entry of an exception scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub x: u64,
    pub f: u32,
    pub result: PpdResult,
}

/// [`primitive_prime_divisor`] over a rectangle of parameters, in
/// lexicographic order of `(x, f)`.
pub fn zsigmondy_scan(xs: std::ops::RangeInclusive<u64>, fs: std::ops::RangeInclusive<u32>) -> Result<Vec<ScanEntry>> {
    use rayon::prelude::*;
    let pairs: Vec<(u64, u32)> = xs.flat_map(|x| fs.clone().map(move |f| (x, f))).collect();
    pairs
        .into_par_iter()
        .map(|(x, f)| Ok(ScanEntry { x, f, result: primitive_prime_divisor(x, f)? }))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zsigmondy_exceptions() {
        let r = primitive_prime_divisor(2, 6).unwrap();
        assert_eq!(r, PpdResult { exists: false, prime: None, exception: Some(PpdException::TwoSix) });
        let r = primitive_prime_divisor(7, 2).unwrap();
        assert_eq!(r.exception, Some(PpdException::MersenneF2));
        assert!(!r.exists);
        let r = primitive_prime_divisor(2, 1).unwrap();
        assert_eq!(r.exception, Some(PpdException::Degenerate));
    }

    #[test]
    fn small_values() {
        assert_eq!(primitive_prime_divisor(2, 4).unwrap().prime, Some(5));
        assert_eq!(primitive_prime_divisor(3, 1).unwrap().prime, Some(2));
        assert_eq!(primitive_prime_divisor(2, 11).unwrap().prime, Some(23));
        assert_eq!(primitive_prime_divisor(10, 6).unwrap().prime, Some(7));
        // 4 = 2²: 4³ − 1 = 63 = 3²·7, and 3 | 4 − 1
        assert_eq!(primitive_prime_divisor(4, 3).unwrap().prime, Some(7));
        assert!(primitive_prime_divisor(1, 3).is_err());
        assert!(primitive_prime_divisor(3, 0).is_err());
    }

    #[test]
    fn large_cyclotomic_pieces() {
        // both need full factorization of a large cyclotomic value
        for (x, f) in [(100, 19), (63, 19), (97, 20)] {
            let r = primitive_prime_divisor(x, f).unwrap();
            let p = r.prime.unwrap();
            assert!(has_order(x, f, p));
        }
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_coeffs(1), vec![-1, 1]);
        assert_eq!(cyclotomic_coeffs(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_coeffs(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(cyclotomic_value(6, 2).unwrap(), 3);
        assert!(matches!(cyclotomic_value(37, 100), Err(Error::Capacity(_))));
    }

    #[test]
    fn perfect_powers() {
        assert_eq!(perfect_power(64), (2, 6));
        assert_eq!(perfect_power(81), (3, 4));
        assert_eq!(perfect_power(10), (10, 1));
        assert_eq!(perfect_power(2), (2, 1));
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(3, 16).unwrap(), 4);
        assert_eq!(multiplicative_order(1, 7).unwrap(), 1);
        assert_eq!(multiplicative_order(5, 1).unwrap(), 1);
        assert!(multiplicative_order(6, 9).is_err());
        assert!(multiplicative_order(2, 0).is_err());
        for m in 3..=10u32 {
            let modulus = 1u64 << (m + 1);
            assert_eq!(pow_mod(3, 1 << (m - 2), modulus as u128), (1 + (1u64 << m)) as u128);
            assert_eq!(multiplicative_order(3, modulus).unwrap(), 1 << (m - 1));
        }
    }

    #[test]
    fn modular_helpers() {
        let m = (1u128 << 127) - 1;
        assert_eq!(mul_mod(m - 1, m - 1, m), 1);
        assert_eq!(pow_mod(2, 127, m), 1);
    }

    #[test]
    fn montgomery_product() {
        for n in [3u128, 1_000_003, (1 << 127) - 1, u128::MAX - 158] {
            let mont = Montgomery::new(n);
            let r = (u128::MAX % n + 1) % n;
            for (a, b) in [(1u128, 1u128), (2, n - 1), (n - 1, n - 1), (n / 3, n / 7 + 5)] {
                let (a, b) = (a % n, b % n);
                let (ar, br) = (mul_mod(a, r, n), mul_mod(b, r, n));
                assert_eq!(mont.mul(ar, br), mul_mod(mul_mod(a, b, n), r, n), "n = {n}");
            }
        }
    }

    #[test]
    fn rho_agrees_with_library_factorization() {
        // Φ_19(63), a product of two primes near 2^53
        let hard = (63u128.pow(19) - 1) / 62;
        for n in [hard, 1_000_003 * 998_244_353, 2u128.pow(20) * 3 * 3 * 1_000_000_007, 97] {
            let mut ours = BTreeSet::new();
            factor_into(n, &mut ours);
            let theirs: BTreeSet<u128> = num_prime::nt_funcs::factorize128(n).into_keys().collect();
            assert_eq!(ours, theirs);
        }
        assert_eq!(gcd128(0, 12), 12);
        assert_eq!(gcd128(48, 180), 12);
    }
}
