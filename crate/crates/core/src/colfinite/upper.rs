//! Upper triangular matrices with constant diagonal `2ω`.

use std::sync::Arc;

use parking_lot::RwLock;

use super::lazy::{LazyMatrix, ScanMemo, Structure};
use super::{LazySummand, Part};
use crate::decompose::SummandKind;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;

/// Keeps the largest dense prefix built so far; grows by at least half.
pub(crate) struct GrowCache<T> {
    slot: RwLock<Option<(usize, Arc<T>)>>,
}

impl<T> GrowCache<T> {
    pub(crate) fn new() -> Self {
        GrowCache { slot: RwLock::new(None) }
    }

    pub(crate) fn get(&self, need: usize, build: impl FnOnce(usize) -> Result<T>) -> Result<Arc<T>> {
        if let Some((size, v)) = &*self.slot.read() {
            if *size >= need {
                return Ok(v.clone());
            }
        }
        let mut slot = self.slot.write();
        if let Some((size, v)) = &*slot {
            if *size >= need {
                return Ok(v.clone());
            }
        }
        let old = slot.as_ref().map_or(0, |(s, _)| *s);
        let size = need.max(old + old / 2).div_ceil(16) * 16;
        let v = Arc::new(build(size)?);
        *slot = Some((size, v.clone()));
        Ok(v)
    }
}

/// Inverse of a unit upper triangular matrix by back substitution.
pub(crate) fn unit_upper_inverse<F: Field>(s: &Matrix<F>) -> Matrix<F> {
    let f = s.field();
    let n = s.rows();
    let mut x = Matrix::identity(f.clone(), n);
    for j in 0..n {
        for i in (0..j).rev() {
            let mut acc = f.zero();
            for l in i + 1..=j {
                let a = s.get(i, l);
                let b = x.get(l, j);
                if !f.is_zero(a) && !f.is_zero(b) {
                    acc = f.add(&acc, &f.mul(a, b));
                }
            }
            x.set(i, j, f.neg(&acc));
        }
    }
    x
}

/// Unit upper triangular `S` with `S·t·S⁻¹ = ωI + Σ t_{i,i+1}e_{i,i+1}`,
/// for finite upper `t` with diagonal `ω` and nonzero superdiagonal.
///
/// Row 0 is `e₀`; row `i+1` solves row `i` of `S·N = B·S` where `N = t - ωI`
/// and `B` is the superdiagonal of `t`.
pub fn bidiagonal_conjugator<F: Field>(t: &Matrix<F>, omega: &F::Elem) -> Result<Matrix<F>> {
    let f = t.field();
    let n = t.rows();
    if !t.is_square() {
        return Err(Error::NotSquare { rows: t.rows(), cols: t.cols() });
    }
    for i in 0..n {
        if !f.equal(t.get(i, i), omega) {
            return Err(Error::InvalidParameter(format!("diagonal entry {i} is {}, not ω", f.format(t.get(i, i)))));
        }
        for j in 0..i {
            if !f.is_zero(t.get(i, j)) {
                return Err(Error::Shape(format!("entry ({i}, {j}) below the diagonal is nonzero")));
            }
        }
    }
    let mut s = Matrix::identity(f.clone(), n);
    for i in 0..n.saturating_sub(1) {
        let sup = t.get(i, i + 1);
        if f.is_zero(sup) {
            return Err(Error::InvalidParameter(format!("superdiagonal entry ({i}, {}) is zero", i + 1)));
        }
        let inv = f.inv(sup)?;
        for j in i + 1..n {
            let mut acc = f.zero();
            for l in i..j {
                let a = s.get(i, l);
                let b = t.get(l, j);
                if !f.is_zero(a) && !f.is_zero(b) {
                    acc = f.add(&acc, &f.mul(a, b));
                }
            }
            s.set(i + 1, j, f.mul(&acc, &inv));
        }
    }
    Ok(s)
}

/// `t₁'`: diagonal ω, superdiagonal of `t` with zeros replaced by ω, and
/// `t` above that.
fn first_part<F: Field>(f: &F, omega: &F::Elem, i: usize, j: usize, t: impl Fn(usize, usize) -> F::Elem) -> F::Elem {
    if j < i {
        f.zero()
    } else if j == i {
        omega.clone()
    } else if j == i + 1 {
        let x = t(i, j);
        if f.is_zero(&x) {
            omega.clone()
        } else {
            x
        }
    } else {
        t(i, j)
    }
}

/// Superdiagonal of the bidiagonal remainder `t - t₁'`: `-ω` where `t`
/// had a zero.
fn remainder_super<F: Field>(f: &F, omega: &F::Elem, t_sup: &F::Elem) -> F::Elem {
    if f.is_zero(t_sup) {
        f.neg(omega)
    } else {
        f.zero()
    }
}

/// Row `n` belongs to `v'` unless row `n-1` did and carried a nonzero
/// superdiagonal entry.
fn next_in_first(prev_in: bool, prev_carries: bool) -> bool {
    !(prev_in && prev_carries)
}

/// The two conjugated halves `S⁻¹uS`, `S⁻¹u'S` of `t₁'` for the dense
/// leading block `t₁'` of size `n`.
struct ConjugatedHalves<F: Field> {
    even: Matrix<F>,
    odd: Matrix<F>,
}

fn conjugated_halves<F: Field>(t1: &Matrix<F>, omega: &F::Elem) -> Result<ConjugatedHalves<F>> {
    let f = t1.field();
    let n = t1.rows();
    let s = bidiagonal_conjugator(t1, omega)?;
    let s_inv = unit_upper_inverse(&s);
    let mut halves = [Matrix::zeros(f.clone(), n, n), Matrix::zeros(f.clone(), n, n)];
    for i in 0..n {
        let h = &mut halves[i % 2];
        h.set(i, i, omega.clone());
        if i + 1 < n {
            h.set(i, i + 1, t1.get(i, i + 1).clone());
        }
    }
    let [u, u2] = halves;
    Ok(ConjugatedHalves { even: s_inv.matmul(&u)?.matmul(&s)?, odd: s_inv.matmul(&u2)?.matmul(&s)? })
}

/// Four `(k+1)`-potent matrices summing to a finite upper triangular `t`
/// with diagonal `2ω`: `S⁻¹uS`, `S⁻¹u'S`, `v'`, `v''`.
pub fn decompose_upper_finite<F: Field>(t: &Matrix<F>, omega: &F::Elem) -> Result<[Matrix<F>; 4]> {
    let f = t.field();
    let n = t.rows();
    let two_w = f.add(omega, omega);
    if (0..n).any(|i| !f.equal(t.get(i, i), &two_w)) {
        return Err(Error::InvalidParameter("diagonal must be constant 2ω".into()));
    }
    let t1 = Matrix::from_fn(f.clone(), n, n, |i, j| first_part(f, omega, i, j, |a, b| t.get(a, b).clone()));
    let halves = conjugated_halves(&t1, omega)?;
    let mut v = [Matrix::zeros(f.clone(), n, n), Matrix::zeros(f.clone(), n, n)];
    let mut inside = true;
    for i in 0..n {
        let c = if i + 1 < n { remainder_super(f, omega, t.get(i, i + 1)) } else { f.zero() };
        let m = &mut v[usize::from(!inside)];
        m.set(i, i, omega.clone());
        if i + 1 < n {
            m.set(i, i + 1, c.clone());
        }
        inside = next_in_first(inside, !f.is_zero(&c));
    }
    let [v1, v2] = v;
    Ok([halves.even, halves.odd, v1, v2])
}

/// Leading blocks of `S` for a lazy upper `t` with diagonal ω and nonzero
/// superdiagonal. Each request reuses the largest block built so far.
pub struct Conjugator<F: Field> {
    t: LazyMatrix<F>,
    omega: F::Elem,
    cache: GrowCache<Matrix<F>>,
}

impl<F: Field> Conjugator<F> {
    /// Dense leading `n×n` block of `S`.
    pub fn leading(&self, n: usize) -> Result<Matrix<F>> {
        let s = self.cache.get(n, |size| bidiagonal_conjugator(&self.t.truncate(size), &self.omega))?;
        Ok(s.submatrix(0, n, 0, n))
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<F::Elem> {
        let s = self.cache.get(i.max(j) + 1, |size| bidiagonal_conjugator(&self.t.truncate(size), &self.omega))?;
        Ok(s.get(i, j).clone())
    }
}

/// The similarity carrying `t` to its bidiagonal part.
pub fn conjugator_to_bidiagonal<F: Field>(t: &LazyMatrix<F>, k: u32) -> Result<Conjugator<F>> {
    let omega = super::omega_for(t.field(), k)?;
    if !matches!(t.structure(), Structure::Upper | Structure::Diagonal) {
        return Err(Error::Shape(format!("expected an upper triangular matrix, got {}", t.structure())));
    }
    Ok(Conjugator { t: t.clone(), omega, cache: GrowCache::new() })
}

/// Prefix checked eagerly for the constant-diagonal precondition.
pub(crate) const PRECHECK: usize = 16;

/// Four lazy summands of an upper `t` with diagonal `2ω`.
pub fn decompose_upper_2omega<F: Field>(t: &LazyMatrix<F>, k: u32) -> Result<Vec<LazySummand<F>>> {
    let w = super::omega_for(t.field(), k)?;
    let omega = &w;
    let f = t.field().clone();
    if !matches!(t.structure(), Structure::Upper | Structure::Diagonal) {
        return Err(Error::Shape(format!("expected an upper triangular matrix, got {}", t.structure())));
    }
    let two_w = f.add(omega, omega);
    if (0..PRECHECK).any(|i| !f.equal(&t.entry(i, i), &two_w)) {
        return Err(Error::InvalidParameter("diagonal must be constant 2ω".into()));
    }
    let kind = SummandKind::Potent { exponent: k + 1 };
    let halves: Arc<GrowCache<ConjugatedHalves<F>>> = Arc::new(GrowCache::new());
    let conj = |odd: bool| {
        let (t, w, f2, h) = (t.clone(), omega.clone(), f.clone(), halves.clone());
        LazyMatrix::new(
            f.clone(),
            Structure::Upper,
            move |i, j| {
                let dense = h
                    .get(i.max(j) + 1, |size| {
                        let t1 = Matrix::from_fn(f2.clone(), size, size, |a, b| first_part(&f2, &w, a, b, |x, y| t.entry(x, y)));
                        conjugated_halves(&t1, &w)
                    })
                    .expect("the split keeps the diagonal ω and the superdiagonal nonzero");
                let m = if odd { &dense.odd } else { &dense.even };
                m.get(i, j).clone()
            },
            |j| j,
        )
    };
    let rows = {
        let (t, w, f2) = (t.clone(), omega.clone(), f.clone());
        Arc::new(ScanMemo::new(
            || true,
            move |n, &prev| {
                let c = remainder_super(&f2, &w, &t.entry(n - 1, n));
                next_in_first(prev, !f2.is_zero(&c))
            },
        ))
    };
    let rest = |first: bool| {
        let (t, w, f2, rows) = (t.clone(), omega.clone(), f.clone(), rows.clone());
        LazyMatrix::new(
            f.clone(),
            Structure::Upper,
            move |i, j| {
                if rows.get(i) != first {
                    f2.zero()
                } else if i == j {
                    w.clone()
                } else if j == i + 1 {
                    remainder_super(&f2, &w, &t.entry(i, j))
                } else {
                    f2.zero()
                }
            },
            |j| j,
        )
    };
    Ok(vec![
        LazySummand::new(conj(false).with_label("S⁻¹uS"), kind, Part::Upper, "upper: conjugated even blocks"),
        LazySummand::new(conj(true).with_label("S⁻¹u'S"), kind, Part::Upper, "upper: conjugated odd blocks"),
        LazySummand::new(rest(true).with_label("v'"), kind, Part::Upper, "upper: remainder rows kept"),
        LazySummand::new(rest(false).with_label("v''"), kind, Part::Upper, "upper: remainder rows passed on"),
    ])
}
