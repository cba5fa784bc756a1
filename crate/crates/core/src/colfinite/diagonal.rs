//! Diagonal matrices as four potent summands.

use std::sync::Arc;

use super::lazy::{LazyMatrix, ScanMemo, Structure};
use super::{LazySummand, Part};
use crate::decompose::{lemma1_pair_with_root, SummandKind};
use crate::error::{Error, Result};
use crate::scalars::Field;

/// `(x_n, y_n)` with `x_n + y_n = d_n`, `x_{2p} + x_{2p+1} = 2ω` and
/// `y_{2p-1} + y_{2p} = 2ω`; `x_0 = d_0`, `y_0 = 0`.
pub fn diagonal_recurrence<F: Field>(
    d: &LazyMatrix<F>,
    omega: &F::Elem,
) -> impl Fn(usize) -> (F::Elem, F::Elem) + Send + Sync + 'static {
    let (d, w, f) = (d.clone(), omega.clone(), d.field().clone());
    let d0 = d.clone();
    let f0 = f.clone();
    let two_w = f.add(&w, &w);
    let memo = Arc::new(ScanMemo::new(
        move || (d0.entry(0, 0), f0.zero()),
        move |n, (x, y): &(F::Elem, F::Elem)| {
            let dn = d.entry(n, n);
            if n % 2 == 1 {
                let x = f.sub(&two_w, x);
                let y = f.sub(&dn, &x);
                (x, y)
            } else {
                let y = f.sub(&two_w, y);
                let x = f.sub(&dn, &y);
                (x, y)
            }
        },
    ));
    move |n| memo.get(n)
}

/// Four lazy summands of a diagonal `d`.
///
/// `d = X + Y` with `X` a sum of `diag(x, 2ω-x)` blocks at `(2p, 2p+1)` and
/// `Y` a zero followed by such blocks at `(2p-1, 2p)`. Each block is the
/// sum of a rank-one pair with `a = x/2`.
pub fn decompose_diagonal<F: Field>(d: &LazyMatrix<F>, k: u32) -> Result<Vec<LazySummand<F>>> {
    let w = super::omega_for(d.field(), k)?;
    let omega = &w;
    let f = d.field().clone();
    if d.structure() != Structure::Diagonal {
        return Err(Error::Shape(format!("expected a diagonal matrix, got {}", d.structure())));
    }
    let half = f.inv(&f.from_i64(2)).map_err(|_| Error::Unsupported("characteristic 2".into()))?;
    let kind = SummandKind::Potent { exponent: k + 1 };
    let rec = Arc::new(diagonal_recurrence(d, omega));
    // (offset, second): X blocks start at even indices, Y blocks at odd ones.
    let piece = |offset: usize, second: bool| {
        let (f2, w, half, rec) = (f.clone(), omega.clone(), half.clone(), rec.clone());
        let m = LazyMatrix::new(
            f.clone(),
            Structure::General,
            move |i, j| {
                if i < offset || j < offset || (i - offset) / 2 != (j - offset) / 2 {
                    return f2.zero();
                }
                let start = offset + 2 * ((i - offset) / 2);
                let (x, y) = rec(start);
                let a = f2.mul(if offset == 0 { &x } else { &y }, &half);
                let (b, c) = lemma1_pair_with_root(&f2, &a, &w);
                let m = if second { c } else { b };
                m.get(i - start, j - start).clone()
            },
            move |j| if j < offset { j } else { offset + 2 * ((j - offset) / 2) + 1 },
        );
        if offset == 0 {
            m.with_boundary(|n| n + n % 2)
        } else {
            m.with_boundary(|n| if n > 0 && n % 2 == 0 { n + 1 } else { n })
        }
    };
    Ok(vec![
        LazySummand::new(piece(0, false).with_label("X·B"), kind, Part::Diagonal, "diagonal: X pairs, first"),
        LazySummand::new(piece(0, true).with_label("X·C"), kind, Part::Diagonal, "diagonal: X pairs, second"),
        LazySummand::new(piece(1, false).with_label("Y·B"), kind, Part::Diagonal, "diagonal: Y pairs, first"),
        LazySummand::new(piece(1, true).with_label("Y·C"), kind, Part::Diagonal, "diagonal: Y pairs, second"),
    ])
}
