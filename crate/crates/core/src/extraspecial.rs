//! The extraspecial group `V` of order `3^(2^m + 1)` and exponent 3.
//!
//! `V` is generated by `v_1, …, v_n` (`n = 2^m`) and a central `z` of order 3
//! with `[v_i, v_j] = z^J[i][j]`, where `J` is the form from
//! [`build_j`](crate::ff3::build_j). Every element has a unique normal form
//! `v_1^x_1 ⋯ v_n^x_n · z^c`, stored as the exponent vector `x` and `c`.
//!
//! Moving `v_j^s` (with `j > i`) to the right of `v_i^t` costs `z^(J[j][i]·s·t)`,
//! so the product of normal forms is
//!
//! ```text
//! (x, c)·(y, d) = (x + y, c + d + Σ_{j>i} J[j][i]·x_j·y_i)
//! ```
//!
//! Commutators follow the convention `[g, h] = g⁻¹h⁻¹gh`, so `hg = gh[h, g]`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ff3::{build_j, F3Matrix, F3Vec, F3};

/// Largest parameter accepted by [`Extraspecial::new`].
pub const MAX_M: u32 = 10;

/// An element of `V` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VElem {
    /// Exponents of `v_1 … v_n`.
    pub x: F3Vec,
    /// Exponent of `z`.
    pub c: F3,
}

impl VElem {
    pub fn new(x: F3Vec, c: F3) -> VElem {
        VElem { x, c }
    }

    pub fn is_identity(&self) -> bool {
        self.c.is_zero() && self.x.is_zero()
    }

    /// Whether the element lies in `⟨z⟩`.
    pub fn is_central(&self) -> bool {
        self.x.is_zero()
    }
}

impl fmt::Display for VElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v={} z^{}", self.x, self.c)
    }
}

/// An automorphism of `V`, given by the images of the generators.
///
/// `z` is sent to `z^z_image`; a valid automorphism has `z_image ∈ {1, −1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VAut {
    pub images: Vec<VElem>,
    pub z_image: F3,
}

/// Parameters and arithmetic of `V` for a fixed `m`.
#[derive(Clone, Debug)]
pub struct Extraspecial {
    m: u32,
    n: usize,
    form: F3Matrix,
    /// `lower[j * n + i] = J[j][i]` as a signed value, used for `j > i`.
    lower: Vec<i8>,
}

impl Extraspecial {
    pub fn new(m: u32) -> Result<Extraspecial> {
        if !(1..=MAX_M).contains(&m) {
            return Err(Error::Parameter(format!("m must lie in 1..={MAX_M}, got {m}")));
        }
        let form = build_j(m)?;
        let n = form.dim();
        let mut lower = vec![0i8; n * n];
        for j in 0..n {
            for i in 0..j {
                lower[j * n + i] = form[(j, i)].signed();
            }
        }
        Ok(Extraspecial { m, n, form, lower })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `n = 2^m`, the number of `v` generators.
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &F3Matrix {
        &self.form
    }

    /// `|V| = 3^(n+1)`, when it fits in 128 bits.
    pub fn order(&self) -> Option<u128> {
        3u128.checked_pow(self.n as u32 + 1)
    }

    /// `|Q| = 2^(m+2)` for the dihedral group acting on `V`.
    pub fn order_q(&self) -> u64 {
        1u64 << (self.m + 2)
    }

    pub fn identity(&self) -> VElem {
        VElem { x: F3Vec::zero(self.n), c: F3::ZERO }
    }

    /// `v_(i+1)`, i.e. the generator with 0-based index `i`.
    pub fn generator(&self, i: usize) -> VElem {
        VElem { x: F3Vec::unit(self.n, i), c: F3::ZERO }
    }

    pub fn z(&self) -> VElem {
        VElem { x: F3Vec::zero(self.n), c: F3::ONE }
    }

    /// The collection cocycle `Σ_{j>i} J[j][i]·x_j·y_i`.
    pub fn cocycle(&self, x: &F3Vec, y: &F3Vec) -> F3 {
        let (xs, ys) = (x.as_slice(), y.as_slice());
        let mut acc: i32 = 0;
        for i in 0..self.n {
            let yi = ys[i].value() as i32;
            if yi == 0 {
                continue;
            }
            let row_sum: i32 = (i + 1..self.n)
                .map(|j| self.lower[j * self.n + i] as i32 * xs[j].value() as i32)
                .sum();
            acc += row_sum * yi;
        }
        F3::new(acc as i64)
    }

    pub fn mul(&self, g: &VElem, h: &VElem) -> VElem {
        debug_assert_eq!(g.x.len(), self.n);
        debug_assert_eq!(h.x.len(), self.n);
        let beta = self.cocycle(&g.x, &h.x);
        VElem { x: &g.x + &h.x, c: g.c + h.c + beta }
    }

    /// [`mul`](Self::mul) with length validation.
    pub fn checked_mul(&self, g: &VElem, h: &VElem) -> Result<VElem> {
        if g.x.len() != self.n || h.x.len() != self.n {
            return Err(Error::Parameter(format!(
                "element lengths {} and {} do not match dimension {}",
                g.x.len(),
                h.x.len(),
                self.n
            )));
        }
        Ok(self.mul(g, h))
    }

    pub fn inv(&self, g: &VElem) -> VElem {
        // (x, c)(-x, d) = (0, c + d + β(x, -x))
        let neg = -&g.x;
        let beta = self.cocycle(&g.x, &neg);
        VElem { x: neg, c: -g.c - beta }
    }

    pub fn pow(&self, g: &VElem, mut e: u64) -> VElem {
        let mut base = g.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `[g, h] = g⁻¹h⁻¹gh`.
    pub fn commutator(&self, g: &VElem, h: &VElem) -> VElem {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.mul(&self.mul(&gi, &hi), &self.mul(g, h))
    }

    pub fn identity_aut(&self) -> VAut {
        VAut { images: (0..self.n).map(|i| self.generator(i)).collect(), z_image: F3::ONE }
    }

    /// `a`: `v_i ↦ v_(i+1)` for `i < n`, `v_n ↦ v_1⁻¹`, `z ↦ z`.
    pub fn aut_a(&self) -> VAut {
        let n = self.n;
        let images = (0..n)
            .map(|i| if i + 1 < n { self.generator(i + 1) } else { self.inv(&self.generator(0)) })
            .collect();
        VAut { images, z_image: F3::ONE }
    }

    /// `b`: `v_1 ↦ v_1⁻¹`, `v_i ↦ v_(n−i+2)` for `i ≥ 2`, `z ↦ z⁻¹`.
    pub fn aut_b(&self) -> VAut {
        let n = self.n;
        let images = (0..n)
            .map(|i| if i == 0 { self.inv(&self.generator(0)) } else { self.generator(n - i) })
            .collect();
        VAut { images, z_image: F3::MINUS_ONE }
    }

    /// `φ(g)`, collected as `φ(v_1)^x_1 ⋯ φ(v_n)^x_n · z^(ε·c)`.
    pub fn apply(&self, phi: &VAut, g: &VElem) -> VElem {
        let mut acc = self.identity();
        for (i, e) in g.x.iter().enumerate() {
            for _ in 0..e.value() {
                acc = self.mul(&acc, &phi.images[i]);
            }
        }
        acc.c += phi.z_image * g.c;
        acc
    }

    /// The automorphism `g ↦ ψ(φ(g))`: first `phi`, then `psi`.
    pub fn compose(&self, phi: &VAut, psi: &VAut) -> VAut {
        VAut {
            images: phi.images.iter().map(|img| self.apply(psi, img)).collect(),
            z_image: phi.z_image * psi.z_image,
        }
    }

    pub fn aut_pow(&self, phi: &VAut, e: u64) -> VAut {
        (0..e).fold(self.identity_aut(), |acc, _| self.compose(&acc, phi))
    }

    /// Whether the generator images satisfy every defining relation of `V`.
    pub fn verify_relations(&self, phi: &VAut) -> bool {
        if phi.images.len() != self.n || phi.images.iter().any(|g| g.x.len() != self.n) {
            return false;
        }
        if phi.z_image.is_zero() {
            return false;
        }
        let z_img = VElem { x: F3Vec::zero(self.n), c: phi.z_image };
        let id = self.identity();
        for (i, gi) in phi.images.iter().enumerate() {
            if self.pow(gi, 3) != id || self.commutator(gi, &z_img) != id {
                return false;
            }
            for (j, gj) in phi.images.iter().enumerate() {
                let expected = VElem { x: F3Vec::zero(self.n), c: phi.z_image * self.form[(i, j)] };
                if self.commutator(gi, gj) != expected {
                    return false;
                }
            }
        }
        true
    }

    pub fn aut_order(&self, phi: &VAut) -> Result<u64> {
        if !self.verify_relations(phi) {
            return Err(Error::Contract("map does not preserve the relations of V".into()));
        }
        let id = self.identity_aut();
        let mut power = phi.clone();
        let mut k = 1u64;
        while power != id {
            power = self.compose(&power, phi);
            k += 1;
            if k > 1 << 24 {
                return Err(Error::Contract("automorphism order exceeds search bound".into()));
            }
        }
        Ok(k)
    }

    /// The linear map induced on `W = V/⟨z⟩`; column `i` is the image of `v_(i+1)`.
    pub fn matrix_on_w(&self, phi: &VAut) -> Result<F3Matrix> {
        if !self.verify_relations(phi) {
            return Err(Error::Contract("map does not preserve the relations of V".into()));
        }
        let cols: Vec<F3Vec> = phi.images.iter().map(|g| g.x.clone()).collect();
        F3Matrix::from_columns(&cols)
    }

    /// Decodes `index ∈ [0, 3^(n+1))`: base-3 digits `x_1 … x_n` (most
    /// significant first) followed by `c`.
    pub fn element_from_index(&self, mut index: u64) -> VElem {
        let c = F3::from((index % 3) as u8);
        index /= 3;
        let mut x = F3Vec::zero(self.n);
        for i in (0..self.n).rev() {
            x[i] = F3::from((index % 3) as u8);
            index /= 3;
        }
        VElem { x, c }
    }

    pub fn element_index(&self, g: &VElem) -> u64 {
        let xs = g.x.iter().fold(0u64, |acc, d| acc * 3 + d.value() as u64);
        xs * 3 + g.c.value() as u64
    }

    /// Iterates all of `V` in index order; only sensible for small `m`.
    pub fn elements(&self) -> impl Iterator<Item = VElem> + '_ {
        let total = 3u64.pow(self.n as u32 + 1);
        (0..total).map(move |i| self.element_from_index(i))
    }
}
