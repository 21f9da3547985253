use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Fp, Scalar};
use crate::error::{Error, Result};

/// Dense row-major matrix over F_p. Zero-row and zero-column shapes are legal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Fp,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
        }
        write!(f, "]")
    }
}

/// Result of reduced row echelon reduction.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: Fp, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: Fp, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % field.p();
        }
        m
    }

    pub fn from_vec(field: Fp, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        let p = field.p();
        Ok(Self {
            field,
            rows,
            cols,
            data: data.into_iter().map(|v| v % p).collect(),
        })
    }

    /// Builds from integer rows, reducing entries mod p. `cols` is needed when `rows` is empty.
    pub fn from_rows(field: Fp, rows: &[Vec<i64>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_cols(field: Fp, rows: usize, cols: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = v;
            }
        }
        m
    }

    pub fn column_vector(field: Fp, v: &[Scalar]) -> Self {
        Self {
            field,
            rows: v.len(),
            cols: 1,
            data: v.to_vec(),
        }
    }

    pub fn field(&self) -> Fp {
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
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = v % self.field.p();
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Scalar>> {
        (0..self.cols).map(|c| self.col(c)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.get(r, c);
            }
        }
        t
    }

    pub fn scale(&self, s: Scalar) -> Self {
        let f = self.field;
        Self {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| f.mul(v, s)).collect(),
        }
    }

    fn check_same(&self, other: &Self, what: &str) {
        assert_eq!(self.field, other.field, "{what}: field mismatch");
        assert_eq!(
            self.shape(),
            other.shape(),
            "{what}: shape mismatch {:?} vs {:?}",
            self.shape(),
            other.shape()
        );
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch(self.field.p(), rhs.field.p()));
        }
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let p = self.field.p() as u64;
        let mut out = vec![0u64; self.rows * rhs.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let row = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                let acc = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, &b) in acc.iter_mut().zip(row) {
                    *o = (*o + a * b as u64) % p;
                }
            }
        }
        Ok(Self {
            field: self.field,
            rows: self.rows,
            cols: rhs.cols,
            data: out.into_iter().map(|v| v as Scalar).collect(),
        })
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "mul_vec: length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, e: u64) -> Self {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut acc = Self::identity(self.field, self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn hstack(blocks: &[&Matrix]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("hstack of nothing".into()))?;
        let rows = first.rows;
        let field = first.field;
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            m.set_block(0, off, b);
            off += b.cols;
        }
        Ok(m)
    }

    pub fn vstack(blocks: &[&Matrix]) -> Result<Self> {
        let first = blocks
            .first()
            .ok_or_else(|| Error::DimensionMismatch("vstack of nothing".into()))?;
        let cols = first.cols;
        let field = first.field;
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::DimensionMismatch(
                "vstack column counts differ".into(),
            ));
        }
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let mut data = Vec::with_capacity(rows * cols);
        for b in blocks {
            data.extend_from_slice(&b.data);
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn block_diag(field: Fp, blocks: &[&Matrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            m.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(
            r0 + b.rows <= self.rows && c0 + b.cols <= self.cols,
            "block out of range"
        );
        for r in 0..b.rows {
            for c in 0..b.cols {
                self.data[(r0 + r) * self.cols + c0 + c] = b.get(r, c);
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(
            r0 + rows <= self.rows && c0 + cols <= self.cols,
            "block out of range"
        );
        let mut m = Self::zeros(self.field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m.data[r * cols + c] = self.get(r0 + r, c0 + c);
            }
        }
        m
    }

    /// Reduced row echelon form with leftmost pivots.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(piv) = (row..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(row, piv);
            let inv = f.inv(m.get(row, col)).expect("nonzero pivot");
            for c in col..m.cols {
                let v = m.get(row, c);
                m.data[row * m.cols + c] = f.mul(v, inv);
            }
            for r in 0..m.rows {
                if r == row {
                    continue;
                }
                let factor = m.get(r, col);
                if factor == 0 {
                    continue;
                }
                for c in col..m.cols {
                    let v = f.sub(m.get(r, c), f.mul(factor, m.get(row, c)));
                    m.data[r * m.cols + c] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { matrix: m, pivots }
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
        self.rref().pivots.len()
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `M^n = 0` where `n` is the size; nilpotency certificate.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        self.pow(self.rows.max(1) as u64).is_zero()
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let aug = Self::hstack(&[self, &Self::identity(self.field, n)]).ok()?;
        let r = aug.rref();
        if r.pivots.len() < n || r.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.matrix.block(0, n, n, n))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        self.check_same(rhs, "add");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        self.check_same(rhs, "sub");
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        let f = self.field;
        Matrix {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.neg(a)).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        self.try_mul(rhs).expect("matrix product shape")
    }
}

/// Rank of `m`.
pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// Some `x` with `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.field != b.field {
        return Err(Error::FieldMismatch(a.field.p(), b.field.p()));
    }
    if a.rows != b.rows {
        return Err(Error::DimensionMismatch(format!(
            "solve: a has {} rows, b has {}",
            a.rows, b.rows
        )));
    }
    let n = a.cols;
    let aug = Matrix::hstack(&[a, b])?;
    let r = aug.rref();
    if r.pivots.iter().any(|&p| p >= n) {
        return Ok(None);
    }
    let mut x = Matrix::zeros(a.field, n, b.cols);
    for (i, &pc) in r.pivots.iter().enumerate() {
        for c in 0..b.cols {
            x.data[pc * b.cols + c] = r.matrix.get(i, n + c);
        }
    }
    Ok(Some(x))
}

/// Basis of `{x : m x = 0}`, one vector per free column of the reduced echelon form.
pub fn nullspace_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    let f = m.field;
    let r = m.rref();
    let n = m.cols;
    let mut is_pivot = vec![false; n];
    for &p in &r.pivots {
        is_pivot[p] = true;
    }
    let mut out = Vec::new();
    for free in (0..n).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; n];
        v[free] = 1 % f.p();
        for (i, &pc) in r.pivots.iter().enumerate() {
            v[pc] = f.neg(r.matrix.get(i, free));
        }
        out.push(v);
    }
    out
}

/// Basis of the column space, taken from the pivot columns of `m` itself.
pub fn image_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.rref().pivots.iter().map(|&c| m.col(c)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> Fp {
        Fp::new(p).unwrap()
    }

    fn mat(p: u32, rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        Matrix::from_rows(f(p), &rows, cols).unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(f(2), 3)), 3);
        assert_eq!(rank(&Matrix::zeros(f(2), 2, 5)), 0);
        assert_eq!(rank(&mat(2, &[&[1, 1], &[1, 1]])), 1);
    }

    #[test]
    fn solve_examples() {
        let b = mat(5, &[&[3, 1], &[4, 0]]);
        assert_eq!(
            solve(&Matrix::identity(f(5), 2), &b).unwrap(),
            Some(b.clone())
        );
        let zero = Matrix::zeros(f(5), 2, 2);
        assert_eq!(solve(&zero, &b).unwrap(), None);
        let a = mat(3, &[&[1, 1], &[0, 1]]);
        let rhs = mat(3, &[&[2], &[1]]);
        assert_eq!(solve(&a, &rhs).unwrap(), Some(mat(3, &[&[1], &[1]])));
    }

    #[test]
    fn solve_shape_error() {
        let a = Matrix::identity(f(2), 2);
        let b = Matrix::zeros(f(2), 3, 1);
        assert!(matches!(solve(&a, &b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn nullspace_examples() {
        assert!(nullspace_basis(&Matrix::identity(f(3), 3)).is_empty());
        assert_eq!(nullspace_basis(&Matrix::zeros(f(3), 1, 3)).len(), 3);
        assert_eq!(nullspace_basis(&mat(2, &[&[1, 1]])), vec![vec![1, 1]]);
    }

    #[test]
    fn degenerate_shapes() {
        let z = Matrix::zeros(f(2), 0, 4);
        assert_eq!(z.rank(), 0);
        assert_eq!(nullspace_basis(&z).len(), 4);
        let w = Matrix::zeros(f(2), 3, 0);
        assert!(nullspace_basis(&w).is_empty());
        assert_eq!(
            Matrix::identity(f(2), 0).inverse(),
            Some(Matrix::identity(f(2), 0))
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let a = mat(7, &[&[2, 3], &[1, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(&a * &inv, Matrix::identity(f(7), 2));
        assert_eq!(mat(2, &[&[1, 1], &[1, 1]]).inverse(), None);
    }

    #[test]
    fn image_basis_picks_pivot_columns() {
        let m = mat(3, &[&[1, 2, 0], &[0, 0, 1]]);
        assert_eq!(image_basis(&m), vec![vec![1, 0], vec![0, 1]]);
    }
}
