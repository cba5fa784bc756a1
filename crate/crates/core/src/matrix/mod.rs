//! Dense matrices over a [`Field`] backend.

mod elim;

use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{Cyclotomic, Field};

pub use elim::KernelBlockForm;

/// Largest exponent accepted by the potency and order predicates.
pub const DEFAULT_EXPONENT_CAP: u64 = 64;

/// Dense row-major matrix. All entries belong to `field`.
#[derive(Clone)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

pub type CycloMatrix = Matrix<Cyclotomic>;

impl<F: Field> Matrix<F> {
    pub fn new(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field, rows, cols, data }
    }

    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let z = field.zero();
        Matrix { data: vec![z; rows * cols], field, rows, cols }
    }

    pub fn identity(field: F, n: usize) -> Self {
        Matrix::scalar(field.clone(), n, field.one())
    }

    pub fn scalar(field: F, n: usize, c: F::Elem) -> Self {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c.clone();
        }
        m
    }

    pub fn diagonal(field: F, d: &[F::Elem]) -> Self {
        let n = d.len();
        let mut m = Matrix::zeros(field, n, n);
        for (i, x) in d.iter().enumerate() {
            m.data[i * n + i] = x.clone();
        }
        m
    }

    /// Parses entries written in the backend's scalar syntax.
    pub fn parse(field: F, rows: &[&[&str]]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|s| field.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, parsed)
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    /// Builds a matrix from column vectors.
    pub fn from_cols(field: F, cols: &[Vec<F::Elem>]) -> Result<Self> {
        let n = cols.first().map_or(0, Vec::len);
        if cols.iter().any(|c| c.len() != n) {
            return Err(Error::DimensionMismatch("columns of different lengths".into()));
        }
        Ok(Matrix::from_fn(field, n, cols.len(), |i, j| cols[j][i].clone()))
    }

    fn require_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&F, &F::Elem, &F::Elem) -> F::Elem) -> Result<Self> {
        self.require_same_shape(other)?;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f(&self.field, a, b))
            .collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn map(&self, f: impl Fn(&F::Elem) -> F::Elem) -> Self {
        Matrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        self.map(|a| self.field.neg(a))
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        self.map(|a| self.field.mul(c, a))
    }

    /// `self + c·I`.
    pub fn add_scalar(&self, c: &F::Elem) -> Result<Self> {
        let n = self.require_square()?;
        let mut out = self.clone();
        for i in 0..n {
            let v = self.field.add(&out.data[i * n + i], c);
            out.data[i * n + i] = v;
        }
        Ok(out)
    }

    /// Product that skips zero entries of the left factor.
    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let (n, m) = (self.rows, other.cols);
        let mut out = Matrix::zeros(f.clone(), n, m);
        for i in 0..n {
            for l in 0..self.cols {
                let a = &self.data[i * self.cols + l];
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..m {
                    let b = &other.data[l * m + j];
                    if f.is_zero(b) {
                        continue;
                    }
                    let t = f.mul(a, b);
                    out.data[i * m + j] = f.add(&out.data[i * m + j], &t);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Result<Vec<F::Elem>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                (0..self.cols).fold(f.zero(), |acc, j| {
                    let a = self.get(i, j);
                    if f.is_zero(a) || f.is_zero(&v[j]) {
                        acc
                    } else {
                        f.add(&acc, &f.mul(a, &v[j]))
                    }
                })
            })
            .collect())
    }

    /// `A^e` by repeated squaring; `A^0 = I`.
    pub fn matpow(&self, mut e: u64) -> Result<Self> {
        let n = self.require_square()?;
        let mut acc = Matrix::identity(self.field.clone(), n);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<F::Elem> {
        let n = self.require_square()?;
        Ok((0..n).fold(self.field.zero(), |acc, i| self.field.add(&acc, self.get(i, i))))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.field.clone(), self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Entrywise equality under the backend's notion of equality.
    pub fn equals(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.data.iter().zip(&other.data).all(|(a, b)| self.field.equal(a, b))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.field.is_zero(a))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && self.equals(&Matrix::identity(self.field.clone(), self.rows))
    }

    /// The constant `c` if this matrix equals `c·I`.
    pub fn scalar_value(&self) -> Option<F::Elem> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(self.field.zero());
        }
        let c = self.get(0, 0).clone();
        for i in 0..n {
            for j in 0..n {
                let x = self.get(i, j);
                let ok = if i == j { self.field.equal(x, &c) } else { self.field.is_zero(x) };
                if !ok {
                    return None;
                }
            }
        }
        Some(c)
    }

    pub fn is_scalar(&self) -> bool {
        self.scalar_value().is_some()
    }

    pub fn diagonal_entries(&self) -> Vec<F::Elem> {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).collect()
    }

    /// `A^e = A`.
    pub fn is_kpotent(&self, e: u64) -> Result<bool> {
        self.is_kpotent_capped(e, DEFAULT_EXPONENT_CAP)
    }

    pub fn is_kpotent_capped(&self, e: u64, cap: u64) -> Result<bool> {
        self.require_square()?;
        if e == 0 || e > cap {
            return Err(Error::InvalidParameter(format!("exponent {e} outside 1..={cap}")));
        }
        Ok(self.matpow(e)?.equals(self))
    }

    /// `A^m = I`.
    pub fn has_order_dividing(&self, m: u64) -> Result<bool> {
        Ok(self.matpow(m)?.is_identity())
    }

    /// Smallest `1 <= m <= bound` with `A^m = I`.
    pub fn order_of(&self, bound: u64) -> Result<Option<u64>> {
        self.require_square()?;
        if bound > DEFAULT_EXPONENT_CAP {
            return Err(Error::InvalidParameter(format!(
                "order bound {bound} exceeds {DEFAULT_EXPONENT_CAP}"
            )));
        }
        let mut p = self.clone();
        for m in 1..=bound {
            if p.is_identity() {
                return Ok(Some(m));
            }
            p = p.matmul(self)?;
        }
        Ok(None)
    }

    /// Copy of the block `rows r0..r1`, `cols c0..c1`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Self {
        Matrix::from_fn(self.field.clone(), r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = Matrix::zeros(self.field.clone(), self.rows + other.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, self.cols, other);
        out
    }

    /// The matrix keeping only column `j`.
    pub fn column_part(&self, j: usize) -> Self {
        Matrix::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            if c == j {
                self.get(r, c).clone()
            } else {
                self.field.zero()
            }
        })
    }

    /// `u·vᵀ`.
    pub fn outer(field: F, u: &[F::Elem], v: &[F::Elem]) -> Self {
        Matrix::from_fn(field.clone(), u.len(), v.len(), |i, j| {
            if field.is_zero(&u[i]) || field.is_zero(&v[j]) {
                field.zero()
            } else {
                field.mul(&u[i], &v[j])
            }
        })
    }

    /// `S·A·S⁻¹`.
    pub fn conjugate_by(&self, s: &Self) -> Result<Self> {
        let s_inv = s.inverse()?;
        s.matmul(self)?.matmul(&s_inv)
    }

    /// Moves every entry into another backend through the exact value.
    pub fn convert<G: Field>(&self, target: &G) -> Result<Matrix<G>> {
        let data = self
            .data
            .iter()
            .map(|a| {
                let c = self.field.to_cyclo(a).ok_or_else(|| {
                    Error::Unsupported(format!("{} entries have no exact value", self.field.name()))
                })?;
                target.from_cyclo(&c)
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(target.clone(), self.rows, self.cols, data)
    }

    /// Entries in the backend's text syntax.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.field.format(self.get(i, j))).collect())
            .collect()
    }
}

impl<F: Field> PartialEq for Matrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.equals(other)
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{:?}", self.to_strings())
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}
