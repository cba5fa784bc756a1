//! Constructive decompositions of finite matrices into sums and linear
//! combinations of potent and finite-order matrices.

mod blocks;
mod counted;
mod engine;
mod fillmore;
mod order;

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;

pub use blocks::{
    identity_decomposition, lemma1_pair, lemma1_pair_with_root, lemma2_split, lemma2_split_with_root, lemma3_split,
    lemma4_block, scaled_identity_decomposition,
};
pub use counted::{decompose_counted_general, decompose_rank1, gamma, CountFormula, CountReport};
pub use engine::{decompose_linear_combination, decompose_theorem1, decompose_theorem4};
pub use fillmore::fillmore_diagonalize;
pub use order::{
    decompose_finite_order, eq1_residual, eq2_residual, order_from_lemma4, order_from_potent, potent_from_order,
    OrderVariant,
};

/// What a summand is guaranteed to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SummandKind {
    /// `E^exponent = E`.
    Potent { exponent: u32 },
    /// `B^order = I`.
    Order { order: u32 },
}

impl fmt::Display for SummandKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SummandKind::Potent { exponent: 2 } => write!(f, "idempotent"),
            SummandKind::Potent { exponent } => write!(f, "{exponent}-potent"),
            SummandKind::Order { order } => write!(f, "order {order}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub matrix: Matrix<F>,
    pub kind: SummandKind,
    /// Present in linear-combination mode: the summand is `coefficient·matrix`.
    pub coefficient: Option<F::Elem>,
    /// Which construction step produced the summand.
    pub provenance: String,
}

impl<F: Field> Summand<F> {
    pub fn new(matrix: Matrix<F>, kind: SummandKind, provenance: impl Into<String>) -> Self {
        Summand { matrix, kind, coefficient: None, provenance: provenance.into() }
    }

    pub fn scaled(coefficient: F::Elem, matrix: Matrix<F>, kind: SummandKind, provenance: impl Into<String>) -> Self {
        Summand { matrix, kind, coefficient: Some(coefficient), provenance: provenance.into() }
    }

    /// Checks the kind's defining identity.
    pub fn check_kind(&self) -> bool {
        match self.kind {
            SummandKind::Potent { exponent } => self.matrix.is_kpotent(exponent as u64).unwrap_or(false),
            SummandKind::Order { order } => self.matrix.has_order_dividing(order as u64).unwrap_or(false),
        }
    }

    /// The matrix this summand contributes to the sum.
    pub fn contribution(&self) -> Matrix<F> {
        match &self.coefficient {
            Some(c) => self.matrix.scale(c),
            None => self.matrix.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Sum,
    LinearCombination,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Sum => "sum",
            Mode::LinearCombination => "linear-combination",
        })
    }
}

/// Per-summand kind checks plus the global reconstruction check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub summands: Vec<bool>,
    pub sum_matches: bool,
    /// Set on approximate backends, where equality is tolerance-based.
    pub approximate: bool,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.sum_matches && self.summands.iter().all(|&b| b)
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub target: Matrix<F>,
    pub summands: Vec<Summand<F>>,
    pub mode: Mode,
    pub verified: bool,
    /// Human-readable certificate the construction was driven by.
    pub certificate: Option<String>,
    /// Count predicted by a closed formula, when one applies.
    pub claimed_count: Option<u64>,
    pub notes: Vec<String>,
}

impl<F: Field> Decomposition<F> {
    pub fn new(target: Matrix<F>, summands: Vec<Summand<F>>, mode: Mode) -> Self {
        Decomposition { target, summands, mode, verified: false, certificate: None, claimed_count: None, notes: vec![] }
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// `Σ` (or `Σ c_i·E_i`) of the summands.
    pub fn reconstruct(&self) -> Result<Matrix<F>> {
        let t = &self.target;
        let mut acc = Matrix::zeros(t.field().clone(), t.rows(), t.cols());
        for s in &self.summands {
            acc = acc.add(&s.contribution())?;
        }
        Ok(acc)
    }

    pub fn check(&self) -> VerifyReport {
        let summands = self.summands.iter().map(Summand::check_kind).collect();
        let sum_matches = self.reconstruct().map(|m| m.equals(&self.target)).unwrap_or(false);
        VerifyReport { summands, sum_matches, approximate: !self.target.field().is_exact() }
    }

    /// Runs [`check`](Self::check) and records the outcome in `verified`.
    pub fn verify(&mut self) -> VerifyReport {
        let report = self.check();
        self.verified = report.ok();
        report
    }

    pub(crate) fn verified(mut self) -> Result<Self> {
        let report = self.verify();
        if report.ok() {
            Ok(self)
        } else {
            Err(Error::Infeasible(format!("construction failed its own verification: {report:?}")))
        }
    }
}

/// `ω^{j·K/k}`: the j-th power of a primitive k-th root inside a backend
/// whose distinguished root has order `K`.
pub(crate) fn root_of<F: Field>(f: &F, k: u32, j: i64) -> Result<F::Elem> {
    let big = f.root_order();
    if k == 0 || !big.is_multiple_of(k) {
        return Err(Error::FieldMismatch(format!(
            "backend root order {big} is not a multiple of {k}"
        )));
    }
    Ok(f.omega_power(j * (big / k) as i64))
}

/// Potency exponent for a column summand with diagonal `root`.
pub(crate) fn potency_for<F: Field>(f: &F, root: &F::Elem, k: u32) -> SummandKind {
    if f.is_one(root) {
        SummandKind::Potent { exponent: 2 }
    } else {
        SummandKind::Potent { exponent: k + 1 }
    }
}

#[cfg(test)]
mod tests;
