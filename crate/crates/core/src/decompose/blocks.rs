//! Small explicit building blocks.

use super::{potency_for, root_of, Decomposition, Mode, Summand};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;

/// The n×n matrix whose only nonzero column is `p`, with `diag` on the
/// diagonal, `above` in rows `0..p` and `below` in rows `p+1..n`.
///
/// Such a matrix satisfies `E^{i} = diag^{i-1}·E`, so it is
/// `(k+1)`-potent whenever `diag` is a k-th root of unity.
pub fn lemma4_block<F: Field>(
    field: &F,
    n: usize,
    p: usize,
    diag: &F::Elem,
    above: &[F::Elem],
    below: &[F::Elem],
) -> Result<Matrix<F>> {
    if p >= n || above.len() != p || below.len() != n - p - 1 {
        return Err(Error::Shape(format!(
            "column {p} of an {n}x{n} block needs {p} entries above and {} below",
            n.saturating_sub(p + 1)
        )));
    }
    let k = field.root_order() as u64;
    if !field.is_one(&field.pow(diag, k)) {
        return Err(Error::Shape(format!("diagonal entry {} is not a root of unity", field.format(diag))));
    }
    let mut m = Matrix::zeros(field.clone(), n, n);
    for (i, x) in above.iter().enumerate() {
        m.set(i, p, x.clone());
    }
    m.set(p, p, diag.clone());
    for (i, y) in below.iter().enumerate() {
        m.set(p + 1 + i, p, y.clone());
    }
    Ok(m)
}

/// `B = [[a, -a], [a-ω, ω-a]]` and `C = [[a, a], [ω-a, ω-a]]`, both
/// rank one with `B² = ωB`, `C² = ωC`, and `B + C = diag(2a, 2ω - 2a)`.
pub fn lemma1_pair<F: Field>(field: &F, a: &F::Elem) -> (Matrix<F>, Matrix<F>) {
    lemma1_pair_with_root(field, a, &field.omega())
}

/// [`lemma1_pair`] with an arbitrary root in place of ω.
pub fn lemma1_pair_with_root<F: Field>(field: &F, a: &F::Elem, root: &F::Elem) -> (Matrix<F>, Matrix<F>) {
    let f = field;
    let am = f.sub(a, root);
    let ma = f.sub(root, a);
    let b = Matrix::from_rows(f.clone(), vec![vec![a.clone(), f.neg(a)], vec![am, ma.clone()]]).expect("2x2");
    let c = Matrix::from_rows(f.clone(), vec![vec![a.clone(), a.clone()], vec![ma.clone(), ma]]).expect("2x2");
    (b, c)
}

/// Splits `diag(x, 2ω - x)` as the [`lemma1_pair`] with `a = x/2`.
pub fn lemma2_split<F: Field>(field: &F, x: &F::Elem) -> Result<(Matrix<F>, Matrix<F>)> {
    lemma2_split_with_root(field, x, &field.omega())
}

pub fn lemma2_split_with_root<F: Field>(
    field: &F,
    x: &F::Elem,
    root: &F::Elem,
) -> Result<(Matrix<F>, Matrix<F>)> {
    let a = field.div(x, &field.from_i64(2))?;
    Ok(lemma1_pair_with_root(field, &a, root))
}

/// Splits `(ωI + A) ⊕ (ωI - A)` into two `(k+1)`-potent matrices of size
/// `2m`, with `Y = (ωI + A)/2`:
/// `B = [[Y, -Y], [Y - ωI, ωI - Y]]`, `C = [[Y, Y], [ωI - Y, ωI - Y]]`.
pub fn lemma3_split<F: Field>(a: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let f = a.field();
    let m = a.rows();
    let w = f.omega();
    let half = f.inv(&f.from_i64(2))?;
    let y = a.add_scalar(&w)?.scale(&half);
    let wi = Matrix::scalar(f.clone(), m, w);
    let y_minus = y.sub(&wi)?;
    let minus_y = wi.sub(&y)?;
    let mut b = Matrix::zeros(f.clone(), 2 * m, 2 * m);
    b.set_block(0, 0, &y);
    b.set_block(0, m, &y.neg());
    b.set_block(m, 0, &y_minus);
    b.set_block(m, m, &minus_y);
    let mut c = Matrix::zeros(f.clone(), 2 * m, 2 * m);
    c.set_block(0, 0, &y);
    c.set_block(0, m, &y);
    c.set_block(m, 0, &minus_y);
    c.set_block(m, m, &minus_y);
    Ok((b, c))
}

/// `I_n = Σ_{i=1}^{k-1} Σ_j (-ω^i)·e_jj` for even `k`, using
/// `1 + ω + … + ω^{k-1} = 0`. Each summand is a single-entry matrix with
/// a root of unity on the diagonal, hence `(k+1)`-potent.
pub fn identity_decomposition<F: Field>(field: &F, n: usize, k: u32) -> Result<Decomposition<F>> {
    scaled_identity_decomposition(field, n, k, 1)
}

/// `α·I_n` as `α` copies of [`identity_decomposition`].
pub fn scaled_identity_decomposition<F: Field>(field: &F, n: usize, k: u32, alpha: u32) -> Result<Decomposition<F>> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("identity decomposition needs even k, got {k}")));
    }
    let mut one_copy = Vec::with_capacity((k as usize - 1) * n);
    for i in 1..k as i64 {
        // -ω^i = ω^{i + k/2}
        let root = root_of(field, k, i + k as i64 / 2)?;
        for j in 0..n {
            let mut m = Matrix::zeros(field.clone(), n, n);
            m.set(j, j, root.clone());
            one_copy.push(Summand::new(m, potency_for(field, &root, k), "identity"));
        }
    }
    let mut summands = Vec::with_capacity(one_copy.len() * alpha as usize);
    for _ in 0..alpha {
        summands.extend(one_copy.iter().cloned());
    }
    let target = Matrix::scalar(field.clone(), n, field.from_i64(alpha as i64));
    let mut d = Decomposition::new(target, summands, Mode::Sum);
    d.claimed_count = Some(alpha as u64 * n as u64 * (k as u64 - 1));
    d.verified()
}
