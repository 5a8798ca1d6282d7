//! Dense linear algebra over a prime field `F_p`.
//!
//! Everything above this module (hom spaces, Ext groups, subfunctor tables)
//! reduces to row reduction over `F_p`. Matrices are small, so storage is a
//! plain row-major `Vec<u32>` of residues.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("modulus {0} is not a prime in 2..=251")]
    NotPrime(u32),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("ambient dimension mismatch: {0} vs {1}")]
    Ambient(usize, usize),
    #[error("field mismatch: F_{0} vs F_{1}")]
    Field(u32, u32),
}

/// A prime field `F_p` with `2 <= p <= 251`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Field {
    p: u32,
}

impl TryFrom<u32> for Field {
    type Error = LinalgError;
    fn try_from(p: u32) -> Result<Self, Self::Error> {
        Field::new(p)
    }
}

impl From<Field> for u32 {
    fn from(f: Field) -> u32 {
        f.p
    }
}

impl Field {
    pub fn new(p: u32) -> Result<Self, LinalgError> {
        if !(2..=251).contains(&p) || (2..p).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field { p })
    }

    pub fn p(self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        (self.p - a) % self.p
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        (a * b) % self.p
    }

    pub fn pow(self, mut a: u32, mut e: u32) -> u32 {
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(self, a: u32) -> u32 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// `p^k`, or `None` on overflow of `u64`.
    pub fn size_pow(self, k: usize) -> Option<u64> {
        (self.p as u64).checked_pow(u32::try_from(k).ok()?)
    }

    /// All vectors of `F_p^n` in lexicographic order (first coordinate slowest).
    pub fn all_vectors(self, n: usize) -> impl Iterator<Item = Vec<u32>> {
        let p = self.p;
        let total = (p as u64).pow(n as u32);
        (0..total).map(move |mut idx| {
            let mut v = vec![0; n];
            for slot in v.iter_mut().rev() {
                *slot = (idx % p as u64) as u32;
                idx /= p as u64;
            }
            v
        })
    }

    pub fn dot(self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| (acc + x * y) % self.p)
    }

    pub fn axpy(self, alpha: u32, x: &[u32], y: &mut [u32]) {
        if alpha == 0 {
            return;
        }
        for (yi, &xi) in y.iter_mut().zip(x) {
            *yi = (*yi + alpha * xi) % self.p;
        }
    }

    pub fn add_vec(self, a: &[u32], b: &[u32]) -> Vec<u32> {
        a.iter().zip(b).map(|(&x, &y)| self.add(x, y)).collect()
    }

    pub fn scale_vec(self, alpha: u32, a: &[u32]) -> Vec<u32> {
        a.iter().map(|&x| self.mul(alpha, x)).collect()
    }
}

/// Dense matrix over `F_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[F_{}; {}x{}](", self.field.p, self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, ")")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = u32;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &u32 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut u32 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Rref {
    /// Columns that carry no pivot, in increasing order.
    pub fn free_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.matrix.cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.matrix.cols).filter(|&c| !is_pivot[c]).collect()
    }
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = field.reduce(f(r, c));
            }
        }
        m
    }

    /// Builds a matrix from rows of integers, reducing every entry mod `p`.
    pub fn from_rows<R: AsRef<[i64]>>(field: Field, rows: &[R]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        if rows.iter().any(|r| r.as_ref().len() != cols) {
            return Err(LinalgError::Dimension("ragged rows".into()));
        }
        Ok(Self::from_fn(field, rows.len(), cols, |r, c| rows[r].as_ref()[c]))
    }

    /// Builds a matrix from already-reduced row vectors with a known column count.
    pub fn from_row_vecs(field: Field, cols: usize, rows: &[Vec<u32>]) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r.iter().map(|&x| x % field.p));
        }
        Matrix { field, rows: rows.len(), cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_col_vecs(field: Field, rows: usize, cols: &[Vec<u32>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (c, v) in cols.iter().enumerate() {
            assert_eq!(v.len(), rows, "column length mismatch");
            for (r, &x) in v.iter().enumerate() {
                m[(r, c)] = x % field.p;
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self[(r, c)]).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn col_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                let orow = other.row(k);
                let base = i * other.cols;
                for (j, &b) in orow.iter().enumerate() {
                    out.data[base + j] = (out.data[base + j] + a * b) % f.p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows).map(|r| self.field.dot(self.row(r), v)).collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape(), "matrix difference shape mismatch");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, alpha: u32) -> Matrix {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(alpha % f.p, a)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn pow(&self, mut e: u32) -> Matrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.field, self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols { self[(r, c)] as i64 } else { other[(r, c - self.cols)] as i64 }
        })
    }

    /// `[self ; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.rows + other.rows, self.cols + other.cols);
        m.set_block(0, 0, self);
        m.set_block(self.rows, self.cols, other);
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)];
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(self.field, rows, cols, |r, c| self[(r0 + r, c0 + c)] as i64)
    }

    pub fn select_cols(&self, cols: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, self.rows, cols.len(), |r, c| self[(r, cols[c])] as i64)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        Matrix::from_fn(self.field, rows.len(), self.cols, |r, c| self[(rows[r], c)] as i64)
    }

    /// Reduced row-echelon form. Unique for the row space of `self`.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m[(r, col)] != 0) else {
                continue;
            };
            m.swap_rows(row, piv);
            let inv = f.inv(m[(row, col)]);
            for c in col..m.cols {
                m[(row, c)] = f.mul(m[(row, c)], inv);
            }
            let pivot_row: Vec<u32> = m.row(row).to_vec();
            for r in 0..m.rows {
                if r != row {
                    let factor = m[(r, col)];
                    if factor != 0 {
                        let alpha = f.neg(factor);
                        let start = r * m.cols;
                        f.axpy(alpha, &pivot_row, &mut m.data[start..start + m.cols]);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, rank: row, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Matrix::identity(self.field, n)).rref();
        if aug.pivots.iter().take(n).enumerate().any(|(i, &c)| c != i) || aug.rank < n {
            return None;
        }
        Some(aug.matrix.block(0, n, n, n))
    }

    /// Nilpotent square matrix test.
    pub fn is_nilpotent(&self) -> bool {
        self.rows == self.cols && self.pow(self.rows as u32).is_zero()
    }

    /// Solves `self * x = b`. Returns the solution whose free coordinates are zero,
    /// or `None` if the system is inconsistent.
    pub fn solve(&self, b: &Matrix) -> Result<Option<Matrix>, LinalgError> {
        if self.rows != b.rows {
            return Err(LinalgError::Dimension(format!(
                "solve: {}x{} against {}x{}",
                self.rows, self.cols, b.rows, b.cols
            )));
        }
        let n = self.cols;
        let aug = self.hstack(b).rref();
        if aug.pivots.iter().any(|&c| c >= n) {
            return Ok(None);
        }
        let mut x = Matrix::zeros(self.field, n, b.cols);
        for (r, &pc) in aug.pivots.iter().enumerate() {
            for c in 0..b.cols {
                x[(pc, c)] = aug.matrix[(r, n + c)];
            }
        }
        Ok(Some(x))
    }

    /// Solves `self * x = v` for a single vector.
    pub fn solve_vec(&self, v: &[u32]) -> Option<Vec<u32>> {
        let b = Matrix::from_col_vecs(self.field, self.rows, &[v.to_vec()]);
        self.solve(&b).ok().flatten().map(|x| x.col(0))
    }

    /// Null space `{x : self * x = 0}` in canonical form.
    pub fn kernel(&self) -> Subspace {
        let (basis, _) = self.kernel_basis();
        Subspace::from_vectors(self.field, self.cols, &basis)
    }

    /// Raw null-space basis indexed by free columns: vector `k` has a `1` in
    /// free column `free[k]` and zeros in every other free column, so the
    /// coordinates of a null vector are its entries at the free columns.
    pub fn kernel_basis(&self) -> (Vec<Vec<u32>>, Vec<usize>) {
        let f = self.field;
        let rr = self.rref();
        let free = rr.free_cols();
        let basis = free
            .iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in rr.pivots.iter().enumerate() {
                    v[pc] = f.neg(rr.matrix[(r, fc)]);
                }
                v
            })
            .collect();
        (basis, free)
    }

    /// Column space as a subspace of `F_p^rows`.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_vectors(self.field, self.rows, &self.col_vecs())
    }
}

/// A linear subspace of `F_p^n`, stored by its canonical RREF basis so that
/// equal subspaces compare equal structurally.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<u32>>,
    pivots: Vec<usize>,
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(F_{}^{}, {:?})", self.field.p, self.ambient, self.basis)
    }
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![0; ambient];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { field, ambient, basis, pivots: (0..ambient).collect() }
    }

    pub fn from_vectors(field: Field, ambient: usize, vecs: &[Vec<u32>]) -> Self {
        if vecs.is_empty() || ambient == 0 {
            return Self::zero(field, ambient);
        }
        let rr = Matrix::from_row_vecs(field, ambient, vecs).rref();
        let basis = (0..rr.rank).map(|r| rr.matrix.row(r).to_vec()).collect();
        Subspace { field, ambient, basis, pivots: rr.pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Non-pivot coordinates; they index a basis of the quotient `F_p^n / self`.
    pub fn quotient_cols(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    pub fn basis_matrix(&self) -> Matrix {
        Matrix::from_row_vecs(self.field, self.ambient, &self.basis)
    }

    /// Canonical representative of `v + self`: zero in every pivot column.
    pub fn reduce(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.ambient, "vector/subspace ambient mismatch");
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &pc) in self.basis.iter().zip(&self.pivots) {
            let c = out[pc];
            if c != 0 {
                f.axpy(f.neg(c), row, &mut out);
            }
        }
        out
    }

    /// Coordinates of `v + self` in the quotient basis given by `quotient_cols`.
    pub fn quotient_coords(&self, v: &[u32]) -> Vec<u32> {
        let r = self.reduce(v);
        self.quotient_cols().into_iter().map(|c| r[c]).collect()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::Field(self.field.p, other.field.p));
        }
        if self.ambient != other.ambient {
            return Err(LinalgError::Ambient(self.ambient, other.ambient));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        let mut vecs = self.basis.clone();
        vecs.extend(other.basis.iter().cloned());
        Ok(Subspace::from_vectors(self.field, self.ambient, &vecs))
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field, self.ambient));
        }
        // Solve sum a_i u_i = sum b_j w_j via the kernel of [U^T | -W^T].
        let f = self.field;
        let u = self.basis_matrix().transpose();
        let w = other.basis_matrix().transpose().scale(f.neg(1));
        let (ker, _) = u.hstack(&w).kernel_basis();
        let k = self.dim();
        let vecs: Vec<Vec<u32>> = ker
            .iter()
            .map(|coeffs| u.mul_vec(&coeffs[..k]))
            .collect();
        Ok(Subspace::from_vectors(f, self.ambient, &vecs))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.basis.iter().all(|v| other.contains(v))
    }

    /// Image under the linear map `v -> m v`.
    pub fn image(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "image: map/subspace mismatch");
        let vecs: Vec<Vec<u32>> = self.basis.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_vectors(self.field, m.rows(), &vecs)
    }

    /// Iterates every element of the subspace (`p^dim` vectors).
    pub fn elements(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let f = self.field;
        f.all_vectors(self.dim()).map(move |coeffs| {
            let mut v = vec![0; self.ambient];
            for (c, b) in coeffs.iter().zip(&self.basis) {
                f.axpy(*c, b, &mut v);
            }
            v
        })
    }

    /// Every subspace of `F_p^n`, ordered by dimension and then by canonical basis.
    pub fn enumerate_all(field: Field, n: usize) -> Vec<Subspace> {
        let mut out = vec![Subspace::zero(field, n)];
        for d in 1..=n {
            // RREF matrices of rank d: choose pivot columns, fill free slots.
            for pivots in combinations(n, d) {
                let mut slots = Vec::new();
                for (r, &pc) in pivots.iter().enumerate() {
                    for c in pc + 1..n {
                        if !pivots.contains(&c) {
                            slots.push((r, c));
                        }
                    }
                }
                for fill in field.all_vectors(slots.len()) {
                    let mut basis = vec![vec![0; n]; d];
                    for (r, &pc) in pivots.iter().enumerate() {
                        basis[r][pc] = 1;
                    }
                    for (&(r, c), &x) in slots.iter().zip(&fill) {
                        basis[r][c] = x;
                    }
                    out.push(Subspace { field, ambient: n, basis, pivots: pivots.clone() });
                }
            }
        }
        out.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.basis.cmp(&b.basis)));
        out
    }

    /// Number of subspaces of `F_p^n` (Gaussian binomial sum), saturating.
    pub fn count_all(field: Field, n: usize) -> u128 {
        let q = field.p as u128;
        let mut total: u128 = 0;
        for k in 0..=n {
            let mut num: u128 = 1;
            let mut den: u128 = 1;
            for i in 0..k {
                num = num.saturating_mul(q.saturating_pow((n - i) as u32).saturating_sub(1));
                den = den.saturating_mul(q.saturating_pow((i + 1) as u32).saturating_sub(1));
            }
            total = total.saturating_add(num / den.max(1));
        }
        total
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}
