//! Elimination: rank, reduced echelon form, kernels, inverses.

use super::Matrix;
use crate::error::{Error, Result};
use crate::scalars::Field;

/// `A = S·C·S⁻¹` where the last `n - rank` columns of `S` span `ker A`,
/// so the last `n - rank` columns of `C` vanish.
#[derive(Clone, Debug)]
pub struct KernelBlockForm<F: Field> {
    pub s: Matrix<F>,
    pub s_inv: Matrix<F>,
    pub c: Matrix<F>,
    pub rank: usize,
}

fn pick_pivot<F: Field>(f: &F, m: &[F::Elem], cols: usize, from: usize, rows: usize, c: usize) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for i in from..rows {
        let x = &m[i * cols + c];
        if f.is_zero(x) {
            continue;
        }
        let w = f.magnitude(x);
        if best.is_none_or(|(_, bw)| w > bw) {
            best = Some((i, w));
        }
    }
    best.map(|(i, _)| i)
}

fn swap_rows<T>(m: &mut [T], cols: usize, a: usize, b: usize) {
    if a != b {
        for j in 0..cols {
            m.swap(a * cols + j, b * cols + j);
        }
    }
}

impl<F: Field> Matrix<F> {
    /// Rank by fraction-free (Bareiss) elimination on exact backends and
    /// thresholded Gauss-Jordan on approximate ones.
    pub fn rank(&self) -> usize {
        if self.field.is_exact() {
            self.bareiss_rank()
        } else {
            self.rref().1.len()
        }
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn bareiss_rank(&self) -> usize {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut prev = f.one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = pick_pivot(f, &m, cols, r, rows, c) else {
                continue;
            };
            swap_rows(&mut m, cols, p, r);
            let pivot = m[r * cols + c].clone();
            let prev_inv = f.inv(&prev).expect("Bareiss pivots are nonzero");
            for i in r + 1..rows {
                let lead = m[i * cols + c].clone();
                for j in c + 1..cols {
                    let t = f.sub(&f.mul(&pivot, &m[i * cols + j]), &f.mul(&lead, &m[r * cols + j]));
                    m[i * cols + j] = f.mul(&t, &prev_inv);
                }
                m[i * cols + c] = f.zero();
            }
            prev = pivot;
            r += 1;
        }
        r
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix<F>, Vec<usize>) {
        let f = &self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut m = self.data.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = pick_pivot(f, &m, cols, r, rows, c) else {
                for i in r..rows {
                    m[i * cols + c] = f.zero();
                }
                continue;
            };
            swap_rows(&mut m, cols, p, r);
            let inv = f.inv(&m[r * cols + c]).expect("pivot is nonzero");
            for j in c..cols {
                m[r * cols + j] = f.mul(&m[r * cols + j], &inv);
            }
            m[r * cols + c] = f.one();
            for i in 0..rows {
                if i == r {
                    continue;
                }
                let lead = m[i * cols + c].clone();
                if f.is_zero(&lead) {
                    m[i * cols + c] = f.zero();
                    continue;
                }
                for j in c..cols {
                    let t = f.mul(&lead, &m[r * cols + j]);
                    m[i * cols + j] = f.sub(&m[i * cols + j], &t);
                }
                m[i * cols + c] = f.zero();
            }
            pivots.push(c);
            r += 1;
        }
        (Matrix { field: f.clone(), rows, cols, data: m }, pivots)
    }

    /// A basis of `{v : A·v = 0}` with one vector per non-pivot column.
    pub fn kernel_basis(&self) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![f.zero(); self.cols];
                v[fc] = f.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(r.get(row, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Matrix<F>> {
        let n = self.require_square()?;
        let f = &self.field;
        let aug = Matrix::from_fn(f.clone(), n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                f.one()
            } else {
                f.zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        Ok(r.submatrix(0, n, n, 2 * n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Similarity that moves the kernel to the trailing coordinates.
    pub fn kernel_block_form(&self) -> Result<KernelBlockForm<F>> {
        let n = self.require_square()?;
        let f = &self.field;
        let kernel = self.kernel_basis();
        let rank = n - kernel.len();
        // Standard vectors off the pivots of the kernel's echelon form
        // complete the kernel to a basis.
        let mut cols: Vec<Vec<F::Elem>> = Vec::with_capacity(n);
        if kernel.is_empty() {
            let id = Matrix::identity(f.clone(), n);
            return Ok(KernelBlockForm { s: id.clone(), s_inv: id, c: self.clone(), rank });
        }
        let kt = Matrix::from_rows(f.clone(), kernel.clone())?;
        let (_, kpiv) = kt.rref();
        for i in (0..n).filter(|i| !kpiv.contains(i)) {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            cols.push(e);
        }
        cols.extend(kernel);
        let s = Matrix::from_cols(f.clone(), &cols)?;
        let s_inv = s.inverse()?;
        let c = s_inv.matmul(self)?.matmul(&s)?;
        Ok(KernelBlockForm { s, s_inv, c, rank })
    }
}
