//! The group `G = V ⋊ Q`, its right-coset space `Ω = H\G` with
//! `H = ⟨a^(2^m)⟩`, and semiregularity of elements of `G` acting on `Ω`.
//!
//! `Q = ⟨a, b⟩` is dihedral of order `2^(m+2)`; elements are stored as
//! `a^j b^eps`. Elements of `G` are pairs `xv` (`x ∈ Q`, `v ∈ V`) multiplied by
//! `(xv)(yw) = (xy)(v^y w)`, where `v^y` is the automorphism attached to `y`.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extraspecial::{Extraspecial, VAut, VElem};

/// Largest `m` for which [`Group`] precomputes its action tables.
pub const MAX_GROUP_M: u32 = 6;

/// Largest `m` for which the full element scan is attempted.
pub const MAX_SCAN_M: u32 = 3;

/// Largest `m` for which fixed points are also checked by scanning `Ω`.
pub const MAX_COSET_SCAN_M: u32 = 2;

/// `a^j b^eps` in the dihedral group `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QElem {
    pub j: u32,
    pub eps: u8,
}

/// `xv` with `x ∈ Q` and `v ∈ V`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GElem {
    pub q: QElem,
    pub v: VElem,
}

/// Canonical representative `a^j b^eps v` of a right coset of `H`, with
/// `j < 2^m`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CosetIndex {
    pub j: u32,
    pub eps: u8,
    pub v: VElem,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemiregReport {
    pub element: GElem,
    pub order: u64,
    pub semiregular: bool,
    /// A coset fixed by some nontrivial power of the element.
    pub witness: Option<CosetIndex>,
}

/// Orders of semiregular elements found by a scan.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemiregularSpectrum {
    pub orders: BTreeSet<u64>,
    pub max_order: u64,
    pub scanned: u64,
}

impl SemiregularSpectrum {
    pub fn insert(&mut self, order: u64) {
        self.orders.insert(order);
        self.max_order = self.max_order.max(order);
    }

    fn merge(mut self, other: SemiregularSpectrum) -> SemiregularSpectrum {
        self.orders.extend(other.orders);
        self.max_order = self.max_order.max(other.max_order);
        self.scanned += other.scanned;
        self
    }
}

/// `G = V ⋊ Q` for a fixed `m`, with the `Q`-action on `V` tabulated.
#[derive(Debug)]
pub struct Group {
    v: Extraspecial,
    /// Automorphism of `V` attached to `a^j b^eps`, indexed by `2j + eps`.
    q_action: Vec<VAut>,
    /// Class of `a^(2^m)` in `G`, each element paired with a conjugator `x`
    /// such that the element equals `x⁻¹ a^(2^m) x`.
    involution_class: OnceLock<HashMap<GElem, GElem>>,
}

impl Group {
    pub fn new(m: u32) -> Result<Group> {
        if !(1..=MAX_GROUP_M).contains(&m) {
            return Err(Error::Parameter(format!("m must lie in 1..={MAX_GROUP_M}, got {m}")));
        }
        let v = Extraspecial::new(m)?;
        let rot = 1u32 << (m + 1);
        let a = v.aut_a();
        let b = v.aut_b();
        let mut q_action = Vec::with_capacity(2 * rot as usize);
        let mut a_pow = v.identity_aut();
        for _ in 0..rot {
            let with_b = v.compose(&a_pow, &b);
            q_action.push(a_pow.clone());
            q_action.push(with_b);
            a_pow = v.compose(&a_pow, &a);
        }
        Ok(Group { v, q_action, involution_class: OnceLock::new() })
    }

    pub fn m(&self) -> u32 {
        self.v.m()
    }

    pub fn v_group(&self) -> &Extraspecial {
        &self.v
    }

    /// `2^(m+1)`, the order of `a`.
    pub fn rotation_order(&self) -> u32 {
        1 << (self.m() + 1)
    }

    /// `|Q| = 2^(m+2)`.
    pub fn q_order(&self) -> u64 {
        1 << (self.m() + 2)
    }

    pub fn v_order(&self) -> u64 {
        3u64.pow(self.v.dim() as u32 + 1)
    }

    /// `|G| = 2^(m+2)·3^(2^m+1)`.
    pub fn order(&self) -> u64 {
        self.q_order() * self.v_order()
    }

    /// `|Ω| = |G|/2`.
    pub fn coset_count(&self) -> u64 {
        self.order() / 2
    }

    // ---- Q ----

    pub fn q_identity(&self) -> QElem {
        QElem { j: 0, eps: 0 }
    }

    pub fn q_mul(&self, p: QElem, q: QElem) -> QElem {
        let rot = self.rotation_order();
        // b a^k = a^(-k) b
        let k = if p.eps == 1 { (rot - q.j) % rot } else { q.j };
        QElem { j: (p.j + k) % rot, eps: p.eps ^ q.eps }
    }

    pub fn q_inv(&self, q: QElem) -> QElem {
        if q.eps == 1 {
            q
        } else {
            QElem { j: (self.rotation_order() - q.j) % self.rotation_order(), eps: 0 }
        }
    }

    pub fn q_order_of(&self, q: QElem) -> u64 {
        if q.eps == 1 {
            2
        } else if q.j == 0 {
            1
        } else {
            let rot = self.rotation_order() as u64;
            rot / gcd(rot, q.j as u64)
        }
    }

    /// The automorphism `v ↦ v^x` of `V`.
    pub fn q_action(&self, x: QElem) -> &VAut {
        &self.q_action[(2 * x.j + x.eps as u32) as usize]
    }

    // ---- G ----

    pub fn identity(&self) -> GElem {
        GElem { q: self.q_identity(), v: self.v.identity() }
    }

    pub fn from_q(&self, j: u32, eps: u8) -> GElem {
        GElem { q: QElem { j: j % self.rotation_order(), eps: eps & 1 }, v: self.v.identity() }
    }

    pub fn from_v(&self, v: VElem) -> GElem {
        GElem { q: self.q_identity(), v }
    }

    pub fn a(&self) -> GElem {
        self.from_q(1, 0)
    }

    pub fn b(&self) -> GElem {
        self.from_q(0, 1)
    }

    /// `v_(i+1)` as an element of `G` (0-based `i`).
    pub fn v_gen(&self, i: usize) -> GElem {
        self.from_v(self.v.generator(i))
    }

    pub fn z(&self) -> GElem {
        self.from_v(self.v.z())
    }

    /// The generator `a^(2^m)` of `H`.
    pub fn h_generator(&self) -> GElem {
        self.from_q(1 << self.m(), 0)
    }

    pub fn mul(&self, g: &GElem, h: &GElem) -> GElem {
        let moved = self.v.apply(self.q_action(h.q), &g.v);
        GElem { q: self.q_mul(g.q, h.q), v: self.v.mul(&moved, &h.v) }
    }

    /// Product of a word, left to right.
    pub fn product<'a>(&self, word: impl IntoIterator<Item = &'a GElem>) -> GElem {
        word.into_iter().fold(self.identity(), |acc, g| self.mul(&acc, g))
    }

    pub fn inv(&self, g: &GElem) -> GElem {
        let qi = self.q_inv(g.q);
        GElem { q: qi, v: self.v.apply(self.q_action(qi), &self.v.inv(&g.v)) }
    }

    pub fn pow(&self, g: &GElem, mut e: u64) -> GElem {
        let mut base = g.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `x⁻¹ g x`.
    pub fn conjugate(&self, g: &GElem, x: &GElem) -> GElem {
        self.mul(&self.mul(&self.inv(x), g), x)
    }

    pub fn is_identity(&self, g: &GElem) -> bool {
        g.q == self.q_identity() && g.v.is_identity()
    }

    /// Least `k ≥ 1` with `g^k = 1`.
    pub fn element_order(&self, g: &GElem) -> u64 {
        let k = self.q_order_of(g.q);
        let h = self.pow(g, k);
        debug_assert_eq!(h.q, self.q_identity());
        if h.v.is_identity() {
            k
        } else {
            3 * k
        }
    }

    /// Decodes `index ∈ [0, |G|)`: the `Q` part `2j + eps` is the major digit.
    pub fn element_from_index(&self, index: u64) -> GElem {
        let qv = index / self.v_order();
        let vi = index % self.v_order();
        GElem { q: QElem { j: (qv / 2) as u32, eps: (qv % 2) as u8 }, v: self.v.element_from_index(vi) }
    }

    pub fn element_index(&self, g: &GElem) -> u64 {
        (2 * g.q.j as u64 + g.q.eps as u64) * self.v_order() + self.v.element_index(&g.v)
    }

    /// Generators `a, b, v_1, …, v_n` of `G`.
    pub fn generators(&self) -> Vec<GElem> {
        let mut gens = vec![self.a(), self.b()];
        gens.extend((0..self.v.dim()).map(|i| self.v_gen(i)));
        gens
    }

    // ---- Ω ----

    pub fn canonical_coset(&self, g: &GElem) -> CosetIndex {
        // a^(2^m)·(x v) = (a^(2^m) x) v, so only the rotation exponent changes
        let half = 1u32 << self.m();
        CosetIndex { j: g.q.j % half, eps: g.q.eps, v: g.v.clone() }
    }

    pub fn coset_rep(&self, w: &CosetIndex) -> GElem {
        GElem { q: QElem { j: w.j, eps: w.eps }, v: w.v.clone() }
    }

    /// `ω·g`, the right-multiplication action.
    pub fn coset_act(&self, w: &CosetIndex, g: &GElem) -> CosetIndex {
        self.canonical_coset(&self.mul(&self.coset_rep(w), g))
    }

    /// Mixed-radix vertex number `((j·2 + eps)·3^n + X)·3 + c`, where `X`
    /// reads `x_1 … x_n` as base-3 digits, most significant first.
    pub fn coset_number(&self, w: &CosetIndex) -> usize {
        ((2 * w.j as u64 + w.eps as u64) * self.v_order() + self.v.element_index(&w.v)) as usize
    }

    pub fn coset_from_number(&self, index: usize) -> CosetIndex {
        let g = self.element_from_index(index as u64);
        CosetIndex { j: g.q.j, eps: g.q.eps, v: g.v }
    }

    pub fn cosets(&self) -> impl Iterator<Item = CosetIndex> + '_ {
        (0..self.coset_count() as usize).map(move |i| self.coset_from_number(i))
    }

    /// Human-readable descriptor `a^j b^eps v=[x…] z^c`.
    pub fn describe_coset(&self, w: &CosetIndex) -> String {
        format!("a^{} b^{} v={} z^{}", w.j, w.eps, w.v.x, w.v.c)
    }

    pub fn describe(&self, g: &GElem) -> String {
        format!("a^{} b^{} v={} z^{}", g.q.j, g.q.eps, g.v.x, g.v.c)
    }

    pub fn numbering_scheme(&self) -> String {
        format!(
            "mixed radix (j in [0,{}), eps in {{0,1}}, x_1..x_{} in F3 with x_1 most significant, c in F3); \
             vertex = ((j*2 + eps)*3^{} + X)*3 + c",
            1u32 << self.m(),
            self.v.dim(),
            self.v.dim()
        )
    }

    // ---- fixed points and semiregularity ----

    fn involution_class(&self) -> &HashMap<GElem, GElem> {
        self.involution_class.get_or_init(|| {
            let gens = self.generators();
            let h0 = self.h_generator();
            let mut class = HashMap::new();
            class.insert(h0.clone(), self.identity());
            let mut queue = VecDeque::from([h0]);
            while let Some(c) = queue.pop_front() {
                let x = class[&c].clone();
                for s in &gens {
                    let next = self.conjugate(&c, s);
                    if !class.contains_key(&next) {
                        class.insert(next.clone(), self.mul(&x, s));
                        queue.push_back(next);
                    }
                }
            }
            class
        })
    }

    /// Size of the conjugacy class of `a^(2^m)`.
    pub fn involution_class_size(&self) -> usize {
        self.involution_class().len()
    }

    /// A coset fixed by `g`, if any. `g` fixes `Hx` exactly when
    /// `x g x⁻¹ ∈ H`; for `g ≠ 1` that means `g` is conjugate to `a^(2^m)`.
    pub fn fixed_coset(&self, g: &GElem) -> Option<CosetIndex> {
        if self.is_identity(g) {
            return Some(self.canonical_coset(g));
        }
        self.involution_class().get(g).map(|x| self.canonical_coset(x))
    }

    pub fn fixed_point_free(&self, g: &GElem) -> Result<bool> {
        if self.is_identity(g) {
            return Err(Error::Parameter("the identity fixes every coset".into()));
        }
        Ok(!self.involution_class().contains_key(g))
    }

    /// [`fixed_point_free`](Self::fixed_point_free) by direct scan of `Ω`.
    pub fn fixed_point_free_scan(&self, g: &GElem) -> Result<bool> {
        if self.is_identity(g) {
            return Err(Error::Parameter("the identity fixes every coset".into()));
        }
        if self.m() > MAX_COSET_SCAN_M {
            return Err(Error::Capacity(format!("coset scan supports m <= {MAX_COSET_SCAN_M}")));
        }
        Ok(self.cosets().all(|w| self.coset_act(&w, g) != w))
    }

    /// Semiregular iff every prime-order power `g^(k/p)` is fixed-point-free.
    pub fn is_semiregular(&self, g: &GElem) -> SemiregReport {
        let order = self.element_order(g);
        let mut report = SemiregReport { element: g.clone(), order, semiregular: true, witness: None };
        for p in prime_divisors(order) {
            let h = self.pow(g, order / p);
            if let Some(w) = self.fixed_coset(&h) {
                report.semiregular = false;
                report.witness = Some(w);
                break;
            }
        }
        report
    }

    /// Scans every element of `G`; returns the orders of the semiregular ones.
    pub fn max_semiregular_order(&self) -> Result<SemiregularSpectrum> {
        if self.m() > MAX_SCAN_M {
            return Err(Error::Capacity(format!(
                "full element scan supports m <= {MAX_SCAN_M}, got {}",
                self.m()
            )));
        }
        self.involution_class();
        let spectrum = (0..self.order())
            .into_par_iter()
            .fold(SemiregularSpectrum::default, |mut acc, idx| {
                let g = self.element_from_index(idx);
                let report = self.is_semiregular(&g);
                if report.semiregular {
                    acc.insert(report.order);
                }
                acc.scanned += 1;
                acc
            })
            .reduce(SemiregularSpectrum::default, SemiregularSpectrum::merge);
        Ok(spectrum)
    }
}

impl fmt::Display for GElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a^{} b^{} {}", self.q.j, self.q.eps, self.v)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn prime_divisors(mut k: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            out.push(p);
            while k.is_multiple_of(p) {
                k /= p;
            }
        }
        p += 1;
    }
    if k > 1 {
        out.push(k);
    }
    out
}
