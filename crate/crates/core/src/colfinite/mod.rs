//! Column-finite ℕ×ℕ matrices and their decomposition into at most 14
//! `(k+1)`-potent column-finite matrices, checked on leading blocks.
//!
//! Indices are 0-based throughout.

mod diagonal;
mod family;
mod lazy;
mod lower;
mod upper;

use std::fmt;

use crate::decompose::SummandKind;
use crate::error::{Error, Result};
use crate::scalars::Field;

pub use diagonal::{decompose_diagonal, diagonal_recurrence};
pub use family::{BandValue, Family, FamilySpec, Perturbation, Schedule};
pub use lazy::{LazyMatrix, Structure, TruncatedView};
pub use lower::{decompose_lower_3omega, decompose_lower_finite, StaircaseProfile};
pub use upper::{
    bidiagonal_conjugator, conjugator_to_bidiagonal, decompose_upper_2omega, decompose_upper_finite, Conjugator,
};

/// Which third of `A = t₁ + t₂ + d` a summand comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Part {
    Upper,
    Lower,
    Diagonal,
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Part::Upper => "upper",
            Part::Lower => "lower",
            Part::Diagonal => "diagonal",
        })
    }
}

#[derive(Clone, Debug)]
pub struct LazySummand<F: Field> {
    pub matrix: LazyMatrix<F>,
    pub kind: SummandKind,
    pub part: Part,
    pub provenance: String,
}

impl<F: Field> LazySummand<F> {
    pub fn new(matrix: LazyMatrix<F>, kind: SummandKind, part: Part, provenance: impl Into<String>) -> Self {
        LazySummand { matrix, kind, part, provenance: provenance.into() }
    }
}

/// `ω` as the first power of a primitive k-th root in the backend.
fn omega_for<F: Field>(f: &F, k: u32) -> Result<F::Elem> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    let big = f.root_order();
    if !big.is_multiple_of(k) {
        return Err(Error::FieldMismatch(format!("backend root order {big} is not a multiple of {k}")));
    }
    Ok(f.omega_power((big / k) as i64))
}

/// `A = t₁ + t₂ + d` with `t₁` upper (diagonal `2ω`), `t₂` lower
/// (diagonal `3ω`) and `d = diag(a_ii - 5ω)`.
pub fn split_upper_lower_diag<F: Field>(
    a: &LazyMatrix<F>,
    k: u32,
) -> Result<(LazyMatrix<F>, LazyMatrix<F>, LazyMatrix<F>)> {
    let f = a.field().clone();
    let w = omega_for(&f, k)?;
    let two_w = f.add(&w, &w);
    let three_w = f.add(&two_w, &w);
    let five_w = f.add(&three_w, &two_w);
    let t1 = {
        let (a, f2) = (a.clone(), f.clone());
        LazyMatrix::new(
            f.clone(),
            Structure::Upper,
            move |i, j| if i == j { two_w.clone() } else if i < j { a.entry(i, j) } else { f2.zero() },
            |j| j,
        )
        .with_label("t₁")
    };
    let t2 = {
        let lower_free = matches!(a.structure(), Structure::Upper | Structure::Diagonal);
        let (a, f2) = (a.clone(), f.clone());
        let a2 = a.clone();
        let shape = if lower_free { Structure::Diagonal } else { Structure::Lower };
        LazyMatrix::new(
            f.clone(),
            shape,
            move |i, j| if i == j { three_w.clone() } else if i > j { a.entry(i, j) } else { f2.zero() },
            move |j| if lower_free { j } else { a2.col_support(j).max(j) },
        )
        .with_label("t₂")
    };
    let d = {
        let (a, f2) = (a.clone(), f.clone());
        LazyMatrix::diagonal(f.clone(), move |i| f2.sub(&a.entry(i, i), &five_w)).with_label("d")
    };
    Ok((t1, t2, d))
}

/// Summands of a column-finite matrix, lazily evaluated.
#[derive(Clone, Debug)]
pub struct LazyDecomposition<F: Field> {
    pub target: LazyMatrix<F>,
    pub k: u32,
    pub summands: Vec<LazySummand<F>>,
}

/// One summand's leading-block check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SummandCheck {
    pub label: String,
    pub part: Part,
    /// Size actually checked (the summand's safe size).
    pub size: usize,
    pub potent: bool,
    pub support: bool,
}

/// Leading-block verification of a lazy decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncationReport {
    pub requested: usize,
    /// `Σ` of the summands' `N×N` blocks equals the target's.
    pub reconstruction: bool,
    pub summands: Vec<SummandCheck>,
}

impl TruncationReport {
    pub fn ok(&self) -> bool {
        self.reconstruction && self.summands.iter().all(|s| s.potent && s.support)
    }
}

/// Rows past the support witness sampled by verification.
const SUPPORT_MARGIN: usize = 3;

impl<F: Field> LazyDecomposition<F> {
    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn count(&self, part: Part) -> usize {
        self.summands.iter().filter(|s| s.part == part).count()
    }

    /// Entrywise sum of the summands.
    pub fn reconstruction(&self) -> LazyMatrix<F> {
        let terms: Vec<_> = self.summands.iter().map(|s| s.matrix.clone()).collect();
        LazyMatrix::sum(self.target.field().clone(), &terms)
    }

    /// Each summand's block at its own safe size.
    pub fn truncations(&self, n: usize) -> Vec<TruncatedView<F>> {
        self.summands.iter().map(|s| s.matrix.truncate_view(n, true)).collect()
    }

    /// Reconstruction at `n` plus, per summand, potency of the leading block
    /// at its safe size and a support-witness sample.
    pub fn verify_truncated(&self, n: usize) -> TruncationReport {
        let f = self.target.field();
        let want = self.target.truncate(n);
        let reconstruction = self
            .summands
            .iter()
            .try_fold(crate::matrix::Matrix::zeros(f.clone(), n, n), |acc, s| acc.add(&s.matrix.truncate(n)))
            .map(|sum| sum.equals(&want))
            .unwrap_or(false);
        let summands = self
            .summands
            .iter()
            .map(|s| {
                let view = s.matrix.truncate_view(n, true);
                let potent = match s.kind {
                    SummandKind::Potent { exponent } => view.matrix.is_kpotent(exponent as u64).unwrap_or(false),
                    SummandKind::Order { order } => view.matrix.has_order_dividing(order as u64).unwrap_or(false),
                };
                SummandCheck {
                    label: s.matrix.label().to_string(),
                    part: s.part,
                    size: view.size,
                    potent,
                    support: s.matrix.check_support(n, SUPPORT_MARGIN).is_ok(),
                }
            })
            .collect();
        TruncationReport { requested: n, reconstruction, summands }
    }
}

/// Any column-finite `A` as at most 14 `(k+1)`-potent column-finite
/// matrices: 4 from the upper part, 6 from the lower part, 4 from the
/// diagonal.
pub fn decompose14<F: Field>(a: &LazyMatrix<F>, k: u32) -> Result<LazyDecomposition<F>> {
    let (t1, t2, d) = split_upper_lower_diag(a, k)?;
    let mut summands = decompose_upper_2omega(&t1, k)?;
    summands.extend(decompose_lower_3omega(&t2, k)?);
    summands.extend(decompose_diagonal(&d, k)?);
    Ok(LazyDecomposition { target: a.clone(), k, summands })
}

#[cfg(test)]
mod tests;
