//! Similarities prescribing the diagonal of a non-scalar matrix.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;

fn unit<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut e = vec![f.zero(); n];
    e[i] = f.one();
    e
}

fn independent<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> bool {
    Matrix::from_cols(f.clone(), &[a.to_vec(), b.to_vec()]).map(|m| m.rank() == 2).unwrap_or(false)
}

/// A vector `v` with `v` and `Bv` linearly independent: first among the
/// standard vectors, then among sums of two of them.
fn cyclic_start<F: Field>(b: &Matrix<F>) -> Result<(Vec<F::Elem>, Vec<F::Elem>)> {
    let f = b.field();
    let n = b.rows();
    let try_v = |v: Vec<F::Elem>| -> Result<Option<(Vec<F::Elem>, Vec<F::Elem>)>> {
        let bv = b.mul_vec(&v)?;
        Ok(independent(f, &v, &bv).then_some((v, bv)))
    };
    for i in 0..n {
        if let Some(p) = try_v(unit(f, n, i))? {
            return Ok(p);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut v = unit(f, n, i);
            v[j] = f.one();
            if let Some(p) = try_v(v)? {
                return Ok(p);
            }
        }
    }
    Err(Error::Unreachable("matrix is scalar".into()))
}

/// Invertible `T` with `diag(T·B·T⁻¹) = d`.
///
/// Requires `tr B = Σ d`. A scalar `B` only reaches its own diagonal.
pub fn fillmore_diagonalize<F: Field>(b: &Matrix<F>, d: &[F::Elem]) -> Result<Matrix<F>> {
    diagonal_similarity(b, d).map(|(t, _)| t)
}

/// `T` and `T⁻¹` with `diag(T·B·T⁻¹) = d`. Elementary transvections are
/// tried first since they keep entries small; the recursive construction
/// covers the cases where they get stuck.
pub(crate) fn diagonal_similarity<F: Field>(b: &Matrix<F>, d: &[F::Elem]) -> Result<(Matrix<F>, Matrix<F>)> {
    if let Some(pair) = check_targets(b, d)? {
        return Ok(pair);
    }
    if let Some(pair) = by_transvections(b, d) {
        return Ok(pair);
    }
    let t = recursive(b, d)?;
    let t_inv = t.inverse()?;
    Ok((t, t_inv))
}

/// Validates the request; `Some` when the identity already works.
#[allow(clippy::type_complexity)]
fn check_targets<F: Field>(b: &Matrix<F>, d: &[F::Elem]) -> Result<Option<(Matrix<F>, Matrix<F>)>> {
    let f = b.field();
    let n = b.rows();
    if !b.is_square() {
        return Err(Error::NotSquare { rows: b.rows(), cols: b.cols() });
    }
    if d.len() != n {
        return Err(Error::DimensionMismatch(format!("{} targets for a {n}x{n} matrix", d.len())));
    }
    let sum = d.iter().fold(f.zero(), |acc, x| f.add(&acc, x));
    if !f.equal(&b.trace()?, &sum) {
        return Err(Error::Unreachable(format!(
            "trace {} differs from the target sum {}",
            f.format(&b.trace()?),
            f.format(&sum)
        )));
    }
    if b.diagonal_entries().iter().zip(d).all(|(x, y)| f.equal(x, y)) {
        let id = Matrix::identity(f.clone(), n);
        return Ok(Some((id.clone(), id)));
    }
    if b.is_scalar() {
        return Err(Error::Unreachable(format!(
            "scalar matrix {} cannot take a different diagonal",
            f.format(b.get(0, 0))
        )));
    }
    Ok(None)
}

/// `M ← (I + s·E_ij)·M·(I - s·E_ij)` together with the accumulated `T`
/// and `T⁻¹`. Only the diagonal entries `i` and `j` move:
/// `M_ii += s·M_ji` and `M_jj -= s·M_ji`.
struct Transvections<F: Field> {
    m: Matrix<F>,
    t: Matrix<F>,
    t_inv: Matrix<F>,
}

impl<F: Field> Transvections<F> {
    fn apply(&mut self, i: usize, j: usize, s: &F::Elem) {
        let f = self.m.field().clone();
        let n = self.m.rows();
        for c in 0..n {
            for m in [&mut self.m, &mut self.t] {
                let x = m.get(j, c);
                if !f.is_zero(x) {
                    let v = f.add(m.get(i, c), &f.mul(s, x));
                    m.set(i, c, v);
                }
            }
        }
        for r in 0..n {
            for m in [&mut self.m, &mut self.t_inv] {
                let x = m.get(r, i);
                if !f.is_zero(x) {
                    let v = f.sub(m.get(r, j), &f.mul(s, x));
                    m.set(r, j, v);
                }
            }
        }
    }
}

/// Fixes the diagonal one position at a time with transvections against
/// later positions, so fixed entries are never touched again. `None` when
/// the trailing block becomes scalar with targets it cannot reach.
fn by_transvections<F: Field>(b: &Matrix<F>, d: &[F::Elem]) -> Option<(Matrix<F>, Matrix<F>)> {
    let f = b.field().clone();
    let n = b.rows();
    let id = Matrix::identity(f.clone(), n);
    let mut st = Transvections { m: b.clone(), t: id.clone(), t_inv: id };
    let one = f.one();
    let nz = |st: &Transvections<F>, r: usize, c: usize| !f.is_zero(st.m.get(r, c));
    for i in 0..n.saturating_sub(1) {
        if f.equal(st.m.get(i, i), &d[i]) {
            continue;
        }
        if !(i + 1..n).any(|j| nz(&st, j, i) || nz(&st, i, j)) {
            // position i is isolated from the trailing block: borrow an
            // off-diagonal entry, or create one from two distinct diagonal
            // entries
            let off = (i + 1..n).find(|&p| (i + 1..n).any(|q| q != p && nz(&st, p, q)));
            let spread = || (i + 1..n).find(|&p| !f.equal(st.m.get(p, p), st.m.get(i, i)));
            let p = off.or_else(spread)?;
            st.apply(i, p, &one);
        }
        let size = |x: &F::Elem| f.format(x).len();
        let below = (i + 1..n).filter(|&j| nz(&st, j, i)).map(|j| (size(st.m.get(j, i)), j, true));
        let right = (i + 1..n).filter(|&j| nz(&st, i, j)).map(|j| (size(st.m.get(i, j)), j, false));
        let (_, j, from_below) = below.chain(right).min_by_key(|&(s, j, _)| (s, j))?;
        let gap = f.sub(&d[i], st.m.get(i, i));
        if from_below {
            let s = f.div(&gap, st.m.get(j, i)).ok()?;
            st.apply(i, j, &s);
        } else {
            // (I + s·E_ji) lowers M_ii by s·M_ij
            let s = f.div(&f.neg(&gap), st.m.get(i, j)).ok()?;
            st.apply(j, i, &s);
        }
    }
    debug_assert!(st.m.diagonal_entries().iter().zip(d).all(|(x, y)| f.equal(x, y)));
    Some((st.t, st.t_inv))
}

/// The classical construction: a cyclic pair `v, Bv - d₀v` starts a basis
/// in which the first diagonal entry is `d₀`; recurse on the rest.
fn recursive<F: Field>(b: &Matrix<F>, d: &[F::Elem]) -> Result<Matrix<F>> {
    let f = b.field();
    let n = b.rows();
    if b.diagonal_entries().iter().zip(d).all(|(x, y)| f.equal(x, y)) {
        return Ok(Matrix::identity(f.clone(), n));
    }
    if b.is_scalar() {
        return Err(Error::Unreachable(format!(
            "scalar matrix {} cannot take a different diagonal",
            f.format(b.get(0, 0))
        )));
    }
    // n >= 2 here: a 1x1 matrix already has its only possible diagonal.
    let (v, bv) = cyclic_start(b)?;
    let w: Vec<F::Elem> = bv.iter().zip(&v).map(|(x, y)| f.sub(x, &f.mul(&d[0], y))).collect();
    let mut cols = vec![v.clone(), w];
    let (_, piv) = Matrix::from_rows(f.clone(), cols.clone())?.rref();
    for i in (0..n).filter(|i| !piv.contains(i)) {
        cols.push(unit(f, n, i));
    }
    let mut q = Matrix::from_cols(f.clone(), &cols)?;
    let mut q_inv = q.inverse()?;
    let mut m = q_inv.matmul(b)?.matmul(&q)?;
    let rest = &d[1..];
    if n >= 3 {
        let tail = m.submatrix(1, n, 1, n);
        if let Some(lambda) = tail.scalar_value() {
            if !rest.iter().all(|x| f.equal(x, &lambda)) {
                // Shear the third basis vector so the trailing block stops
                // being scalar.
                cols[2] = cols[2].iter().zip(&v).map(|(x, y)| f.add(x, y)).collect();
                q = Matrix::from_cols(f.clone(), &cols)?;
                q_inv = q.inverse()?;
                m = q_inv.matmul(b)?.matmul(&q)?;
            }
        }
    }
    let tail = m.submatrix(1, n, 1, n);
    let t_tail = recursive(&tail, rest)?;
    let one = Matrix::identity(f.clone(), 1);
    one.direct_sum(&t_tail).matmul(&q_inv)
}
