//! Exact linear algebra over the field with three elements.
//!
//! Matrices act on column vectors: the linear map attached to a matrix `M`
//! sends `x` to `M·x`, so column `i` holds the image of the `i`-th basis
//! vector. Indices are 0-based throughout; formulas stated with 1-based
//! indices are translated once, where the object is built.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Largest `m` accepted by [`build_j`]; the matrix has side `2^m`.
pub const MAX_J_PARAMETER: u32 = 16;

/// Largest dimension for which [`is_irreducible`] enumerates every line.
pub const MAX_IRREDUCIBLE_DIM: usize = 10;

/// An element of F₃, stored as its canonical residue in `{0, 1, 2}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F3(u8);

impl F3 {
    pub const ZERO: F3 = F3(0);
    pub const ONE: F3 = F3(1);
    /// `2 ≡ −1`.
    pub const MINUS_ONE: F3 = F3(2);

    pub fn new(value: i64) -> F3 {
        F3(value.rem_euclid(3) as u8)
    }

    #[inline]
    pub fn value(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Multiplicative inverse; every nonzero element is its own inverse.
    pub fn inv(self) -> Option<F3> {
        (self.0 != 0).then_some(self)
    }

    /// The value as a signed representative in `{-1, 0, 1}`.
    pub fn signed(self) -> i8 {
        match self.0 {
            0 => 0,
            1 => 1,
            _ => -1,
        }
    }
}

impl From<u8> for F3 {
    fn from(v: u8) -> F3 {
        F3(v % 3)
    }
}

impl fmt::Display for F3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Add for F3 {
    type Output = F3;
    #[inline]
    fn add(self, rhs: F3) -> F3 {
        let s = self.0 + rhs.0;
        F3(if s >= 3 { s - 3 } else { s })
    }
}

impl Sub for F3 {
    type Output = F3;
    #[inline]
    fn sub(self, rhs: F3) -> F3 {
        self + (-rhs)
    }
}

impl Neg for F3 {
    type Output = F3;
    #[inline]
    fn neg(self) -> F3 {
        F3(if self.0 == 0 { 0 } else { 3 - self.0 })
    }
}

impl Mul for F3 {
    type Output = F3;
    #[inline]
    fn mul(self, rhs: F3) -> F3 {
        F3((self.0 * rhs.0) % 3)
    }
}

impl AddAssign for F3 {
    fn add_assign(&mut self, rhs: F3) {
        *self = *self + rhs;
    }
}

impl SubAssign for F3 {
    fn sub_assign(&mut self, rhs: F3) {
        *self = *self - rhs;
    }
}

/// A vector over F₃ of fixed length.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct F3Vec(Vec<F3>);

impl F3Vec {
    pub fn zero(len: usize) -> F3Vec {
        F3Vec(vec![F3::ZERO; len])
    }

    /// The `i`-th standard basis vector (0-based).
    pub fn unit(len: usize, i: usize) -> F3Vec {
        let mut v = F3Vec::zero(len);
        v.0[i] = F3::ONE;
        v
    }

    pub fn from_values(values: &[i64]) -> F3Vec {
        F3Vec(values.iter().map(|&x| F3::new(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    pub fn as_slice(&self) -> &[F3] {
        &self.0
    }

    pub fn as_mut_slice(&mut self) -> &mut [F3] {
        &mut self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = F3> + '_ {
        self.0.iter().copied()
    }

    pub fn scaled(&self, k: F3) -> F3Vec {
        F3Vec(self.0.iter().map(|&c| c * k).collect())
    }

    /// `self += k·other`.
    pub fn add_scaled(&mut self, other: &F3Vec, k: F3) {
        debug_assert_eq!(self.len(), other.len());
        if k.is_zero() {
            return;
        }
        for (a, &b) in self.0.iter_mut().zip(&other.0) {
            *a += b * k;
        }
    }

    /// Index of the first nonzero coordinate.
    pub fn leading(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }
}

impl From<Vec<F3>> for F3Vec {
    fn from(v: Vec<F3>) -> F3Vec {
        F3Vec(v)
    }
}

impl Index<usize> for F3Vec {
    type Output = F3;
    fn index(&self, i: usize) -> &F3 {
        &self.0[i]
    }
}

impl IndexMut<usize> for F3Vec {
    fn index_mut(&mut self, i: usize) -> &mut F3 {
        &mut self.0[i]
    }
}

impl Add for &F3Vec {
    type Output = F3Vec;
    fn add(self, rhs: &F3Vec) -> F3Vec {
        assert_eq!(self.len(), rhs.len(), "vector length mismatch");
        F3Vec(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl Neg for &F3Vec {
    type Output = F3Vec;
    fn neg(self) -> F3Vec {
        F3Vec(self.0.iter().map(|&a| -a).collect())
    }
}

impl fmt::Display for F3Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// A square matrix over F₃, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct F3Matrix {
    n: usize,
    entries: Vec<F3>,
}

impl F3Matrix {
    pub fn zero(n: usize) -> F3Matrix {
        F3Matrix { n, entries: vec![F3::ZERO; n * n] }
    }

    pub fn identity(n: usize) -> F3Matrix {
        let mut m = F3Matrix::zero(n);
        for i in 0..n {
            m[(i, i)] = F3::ONE;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<F3Matrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parameter("matrix must be square".into()));
        }
        let entries = rows.iter().flatten().map(|&x| F3::new(x)).collect();
        Ok(F3Matrix { n, entries })
    }

    /// Builds the matrix whose `i`-th column is `columns[i]`.
    pub fn from_columns(columns: &[F3Vec]) -> Result<F3Matrix> {
        let n = columns.len();
        if columns.iter().any(|c| c.len() != n) {
            return Err(Error::Parameter("matrix must be square".into()));
        }
        let mut m = F3Matrix::zero(n);
        for (j, col) in columns.iter().enumerate() {
            for i in 0..n {
                m[(i, j)] = col[i];
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[F3] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn column(&self, j: usize) -> F3Vec {
        F3Vec((0..self.n).map(|i| self[(i, j)]).collect())
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        (0..self.n).map(|i| self.row(i).iter().map(|c| c.value()).collect()).collect()
    }

    pub fn transpose(&self) -> F3Matrix {
        let mut t = F3Matrix::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    pub fn scaled(&self, k: F3) -> F3Matrix {
        F3Matrix { n: self.n, entries: self.entries.iter().map(|&c| c * k).collect() }
    }

    /// `M·v`.
    pub fn apply(&self, v: &F3Vec) -> F3Vec {
        assert_eq!(v.len(), self.n, "dimension mismatch");
        F3Vec(
            (0..self.n)
                .map(|i| self.row(i).iter().zip(v.iter()).fold(F3::ZERO, |acc, (&a, b)| acc + a * b))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> F3Matrix {
        let mut base = self.clone();
        let mut acc = F3Matrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Determinant by Gaussian elimination.
    pub fn det(&self) -> F3 {
        let n = self.n;
        let mut a = self.clone();
        let mut det = F3::ONE;
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[(r, col)].is_zero()) else {
                return F3::ZERO;
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)];
            det = det * pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                let factor = a[(r, col)] * inv;
                if !factor.is_zero() {
                    a.row_axpy(r, col, -factor);
                }
            }
        }
        det
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M·x = 0}`.
    pub fn kernel(&self) -> Vec<F3Vec> {
        let n = self.n;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![None; n];
        for (row, &c) in pivots.iter().enumerate() {
            is_pivot[c] = Some(row);
        }
        (0..n)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = F3Vec::zero(n);
                v[free] = F3::ONE;
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, free)];
                }
                v
            })
            .collect()
    }

    /// Characteristic polynomial `det(T·I − M)`, monic.
    ///
    /// Reduces to upper Hessenberg form by similarity, then expands along
    /// the last column with the usual recurrence; no division by integers,
    /// so it is valid in characteristic 3.
    pub fn char_poly(&self) -> F3Poly {
        let n = self.n;
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(p) = (j + 1..n).find(|&i| !h[(i, j)].is_zero()) else {
                continue;
            };
            if p != j + 1 {
                h.swap_rows(p, j + 1);
                h.swap_cols(p, j + 1);
            }
            let inv = h[(j + 1, j)].inv().expect("nonzero pivot");
            for i in j + 2..n {
                let u = h[(i, j)] * inv;
                if u.is_zero() {
                    continue;
                }
                h.row_axpy(i, j + 1, -u);
                // inverse similarity on columns
                for r in 0..n {
                    let add = h[(r, i)] * u;
                    h[(r, j + 1)] += add;
                }
            }
        }

        let t = F3Poly::monomial(1);
        let mut p: Vec<F3Poly> = vec![F3Poly::one()];
        for k in 0..n {
            let mut next = &(&t - &F3Poly::constant(h[(k, k)])) * &p[k];
            let mut sub = F3::ONE;
            for i in (0..k).rev() {
                sub = sub * h[(i + 1, i)];
                let coef = h[(i, k)] * sub;
                if !coef.is_zero() {
                    next = &next - &p[i].scaled(coef);
                }
            }
            p.push(next);
        }
        p.pop().expect("nonempty")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.n {
            self.entries.swap(a * self.n + j, b * self.n + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.n {
            self.entries.swap(i * self.n + a, i * self.n + b);
        }
    }

    /// `row[target] += k·row[source]`.
    fn row_axpy(&mut self, target: usize, source: usize, k: F3) {
        for j in 0..self.n {
            let add = self.entries[source * self.n + j] * k;
            self.entries[target * self.n + j] += add;
        }
    }

    /// Reduced row echelon form and its pivot columns.
    fn rref(&self) -> (F3Matrix, Vec<usize>) {
        let n = self.n;
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            if row == n {
                break;
            }
            let Some(p) = (row..n).find(|&r| !a[(r, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(p, row);
            let inv = a[(row, col)].inv().expect("nonzero pivot");
            for j in 0..n {
                a[(row, j)] = a[(row, j)] * inv;
            }
            for r in 0..n {
                if r != row {
                    let factor = a[(r, col)];
                    if !factor.is_zero() {
                        a.row_axpy(r, row, -factor);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (a, pivots)
    }
}

impl Index<(usize, usize)> for F3Matrix {
    type Output = F3;
    fn index(&self, (i, j): (usize, usize)) -> &F3 {
        &self.entries[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for F3Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F3 {
        &mut self.entries[i * self.n + j]
    }
}

impl Mul for &F3Matrix {
    type Output = F3Matrix;
    fn mul(self, rhs: &F3Matrix) -> F3Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = F3Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let add = a * rhs[(k, j)];
                    out[(i, j)] += add;
                }
            }
        }
        out
    }
}

impl Add for &F3Matrix {
    type Output = F3Matrix;
    fn add(self, rhs: &F3Matrix) -> F3Matrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        F3Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl Sub for &F3Matrix {
    type Output = F3Matrix;
    fn sub(self, rhs: &F3Matrix) -> F3Matrix {
        self + &rhs.scaled(F3::MINUS_ONE)
    }
}

impl fmt::Display for F3Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|c| c.to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// A polynomial in `T` over F₃, coefficients from the constant term up.
/// The zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct F3Poly(Vec<F3>);

impl F3Poly {
    pub fn from_coeffs(coeffs: &[i64]) -> F3Poly {
        let mut p = F3Poly(coeffs.iter().map(|&c| F3::new(c)).collect());
        p.normalize();
        p
    }

    pub fn zero() -> F3Poly {
        F3Poly(Vec::new())
    }

    pub fn one() -> F3Poly {
        F3Poly(vec![F3::ONE])
    }

    pub fn constant(c: F3) -> F3Poly {
        let mut p = F3Poly(vec![c]);
        p.normalize();
        p
    }

    /// `T^k`.
    pub fn monomial(k: usize) -> F3Poly {
        let mut v = vec![F3::ZERO; k + 1];
        v[k] = F3::ONE;
        F3Poly(v)
    }

    pub fn coeffs(&self) -> &[F3] {
        &self.0
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, k: F3) -> F3Poly {
        let mut p = F3Poly(self.0.iter().map(|&c| c * k).collect());
        p.normalize();
        p
    }

    /// `p(M)`, by Horner's rule.
    pub fn eval_matrix(&self, m: &F3Matrix) -> F3Matrix {
        let mut acc = F3Matrix::zero(m.dim());
        for &c in self.0.iter().rev() {
            acc = &acc * m;
            for i in 0..m.dim() {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    fn normalize(&mut self) {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
    }
}

impl Mul for &F3Poly {
    type Output = F3Poly;
    fn mul(self, rhs: &F3Poly) -> F3Poly {
        if self.is_zero() || rhs.is_zero() {
            return F3Poly::zero();
        }
        let mut out = vec![F3::ZERO; self.0.len() + rhs.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        let mut p = F3Poly(out);
        p.normalize();
        p
    }
}

impl Add for &F3Poly {
    type Output = F3Poly;
    fn add(self, rhs: &F3Poly) -> F3Poly {
        let len = self.0.len().max(rhs.0.len());
        let get = |p: &F3Poly, i: usize| p.0.get(i).copied().unwrap_or(F3::ZERO);
        let mut p = F3Poly((0..len).map(|i| get(self, i) + get(rhs, i)).collect());
        p.normalize();
        p
    }
}

impl Sub for &F3Poly {
    type Output = F3Poly;
    fn sub(self, rhs: &F3Poly) -> F3Poly {
        self + &rhs.scaled(F3::MINUS_ONE)
    }
}

impl fmt::Display for F3Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c == F3::ONE { "+" } else { "-" };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match k {
                0 => write!(f, "1")?,
                1 => write!(f, "T")?,
                _ => write!(f, "T^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// The antisymmetric `2^m × 2^m` form matrix with `J[i][j] = (−1)^(i−j)`
/// below the diagonal and `−(−1)^(j−i)` above it.
pub fn build_j(m: u32) -> Result<F3Matrix> {
    if !(1..=MAX_J_PARAMETER).contains(&m) {
        return Err(Error::Parameter(format!("m must lie in 1..={MAX_J_PARAMETER}, got {m}")));
    }
    let n = 1usize << m;
    let mut j = F3Matrix::zero(n);
    for r in 0..n {
        for c in 0..n {
            // parity of |r - c| is the same for 0- and 1-based indices
            let sign = if (r.abs_diff(c)) % 2 == 0 { F3::ONE } else { F3::MINUS_ONE };
            j[(r, c)] = match r.cmp(&c) {
                std::cmp::Ordering::Greater => sign,
                std::cmp::Ordering::Less => -sign,
                std::cmp::Ordering::Equal => F3::ZERO,
            };
        }
    }
    Ok(j)
}

/// Incrementally maintained echelon basis used to test span membership.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<F3Vec>,
    leads: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Echelon {
        Echelon::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Residue of `v` after elimination against the current basis.
    pub fn reduce(&self, v: &F3Vec) -> F3Vec {
        let mut r = v.clone();
        for (row, &lead) in self.rows.iter().zip(&self.leads) {
            let c = r[lead];
            if !c.is_zero() {
                r.add_scaled(row, -c);
            }
        }
        r
    }

    pub fn contains(&self, v: &F3Vec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, v: &F3Vec) -> bool {
        let mut r = self.reduce(v);
        let Some(lead) = r.leading() else {
            return false;
        };
        let inv = r[lead].inv().expect("nonzero lead");
        r = r.scaled(inv);
        for (row, _) in self.rows.iter_mut().zip(&self.leads) {
            let c = row[lead];
            if !c.is_zero() {
                row.add_scaled(&r, -c);
            }
        }
        self.rows.push(r);
        self.leads.push(lead);
        true
    }
}

/// Basis of the smallest subspace containing `seed` and invariant under
/// every matrix in `gens`.
pub fn spin(seed: &F3Vec, gens: &[F3Matrix]) -> Result<Vec<F3Vec>> {
    if seed.is_zero() {
        return Err(Error::Parameter("spin seed must be nonzero".into()));
    }
    if let Some(g) = gens.iter().find(|g| g.dim() != seed.len()) {
        return Err(Error::Parameter(format!(
            "generator of dimension {} does not act on vectors of length {}",
            g.dim(),
            seed.len()
        )));
    }
    let mut ech = Echelon::new();
    ech.insert(seed);
    let mut basis = vec![seed.clone()];
    let mut next = 0;
    while next < basis.len() && ech.dim() < seed.len() {
        let v = basis[next].clone();
        next += 1;
        for g in gens {
            let image = g.apply(&v);
            if ech.insert(&image) {
                basis.push(image);
            }
        }
    }
    Ok(basis)
}

/// Whether the matrix group generated by `gens` fixes no proper nonzero
/// subspace, decided by spinning one vector from every line.
pub fn is_irreducible(gens: &[F3Matrix]) -> Result<bool> {
    let Some(first) = gens.first() else {
        return Err(Error::Parameter("need at least one generator".into()));
    };
    let n = first.dim();
    if gens.iter().any(|g| g.dim() != n) {
        return Err(Error::Parameter("generators have different dimensions".into()));
    }
    if n > MAX_IRREDUCIBLE_DIM {
        return Err(Error::Capacity(format!(
            "irreducibility by line enumeration supports dimension <= {MAX_IRREDUCIBLE_DIM}, got {n}"
        )));
    }
    if n == 0 {
        return Ok(false);
    }
    Ok(projective_points(n).all(|w| spin(&w, gens).map(|b| b.len() == n).unwrap_or(false)))
}

/// One representative (first nonzero coordinate equal to 1) of each line
/// in F₃ⁿ.
pub fn projective_points(n: usize) -> impl Iterator<Item = F3Vec> {
    let total = 3usize.pow(n as u32);
    (1..total).filter_map(move |mut code| {
        let mut v = F3Vec::zero(n);
        for i in (0..n).rev() {
            v[i] = F3::from((code % 3) as u8);
            code /= 3;
        }
        (v[v.leading()?] == F3::ONE).then_some(v)
    })
}
