//! Column-finite ℕ×ℕ matrices given by entry generators.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use parking_lot::RwLock;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;

/// Sparsity shape promised by a lazy matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    /// `entry(i, j) = 0` for `i > j`.
    Upper,
    /// `entry(i, j) = 0` for `i < j`.
    Lower,
    /// `entry(i, j) = 0` for `i ≠ j`.
    Diagonal,
    General,
}

impl Structure {
    /// Shape of a sum of two matrices.
    pub fn join(self, other: Structure) -> Structure {
        use Structure::*;
        match (self, other) {
            (Diagonal, s) | (s, Diagonal) => s,
            (Upper, Upper) => Upper,
            (Lower, Lower) => Lower,
            _ => General,
        }
    }

    /// Whether the shape forces `entry(i, j)` to vanish.
    pub fn forces_zero(self, i: usize, j: usize) -> bool {
        match self {
            Structure::Upper => i > j,
            Structure::Lower => i < j,
            Structure::Diagonal => i != j,
            Structure::General => false,
        }
    }

    /// Truncation commutes with products of matrices of this shape.
    pub fn truncation_safe(self) -> bool {
        self != Structure::General
    }
}

impl fmt::Display for Structure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Structure::Upper => "upper",
            Structure::Lower => "lower",
            Structure::Diagonal => "diagonal",
            Structure::General => "general",
        })
    }
}

type EntryFn<F> = Arc<dyn Fn(usize, usize) -> <F as Field>::Elem + Send + Sync>;
type IndexFn = Arc<dyn Fn(usize) -> usize + Send + Sync>;

struct Inner<F: Field> {
    field: F,
    label: String,
    structure: Structure,
    entry: EntryFn<F>,
    support: IndexFn,
    boundary: IndexFn,
    memo: RwLock<HashMap<(usize, usize), F::Elem>>,
}

/// An ℕ×ℕ matrix (0-based indices) with finitely many nonzero entries in
/// each column.
///
/// `col_support(j)` bounds the last nonzero row of column `j`;
/// `safe_size(n)` is the smallest truncation size `≥ n` at which the
/// leading block of every power is the power of the leading block.
/// Entries are memoized; all writers compute identical values.
#[derive(Clone)]
pub struct LazyMatrix<F: Field>(Arc<Inner<F>>);

impl<F: Field> LazyMatrix<F> {
    pub fn new(
        field: F,
        structure: Structure,
        entry: impl Fn(usize, usize) -> F::Elem + Send + Sync + 'static,
        support: impl Fn(usize) -> usize + Send + Sync + 'static,
    ) -> Self {
        LazyMatrix(Arc::new(Inner {
            field,
            label: "matrix".into(),
            structure,
            entry: Arc::new(entry),
            support: Arc::new(support),
            boundary: Arc::new(|n| n),
            memo: RwLock::new(HashMap::new()),
        }))
    }

    fn rebuild(&self, label: String, boundary: IndexFn) -> Self {
        let i = &self.0;
        LazyMatrix(Arc::new(Inner {
            field: i.field.clone(),
            label,
            structure: i.structure,
            entry: i.entry.clone(),
            support: i.support.clone(),
            boundary,
            memo: RwLock::new(HashMap::new()),
        }))
    }

    pub fn with_label(self, label: impl Into<String>) -> Self {
        let b = self.0.boundary.clone();
        self.rebuild(label.into(), b)
    }

    /// Replaces the safe-size rule.
    pub fn with_boundary(self, boundary: impl Fn(usize) -> usize + Send + Sync + 'static) -> Self {
        let l = self.0.label.clone();
        self.rebuild(l, Arc::new(boundary))
    }

    pub fn zero(field: F) -> Self {
        let z = field.zero();
        LazyMatrix::new(field, Structure::Diagonal, move |_, _| z.clone(), |j| j).with_label("zero")
    }

    pub fn scalar(field: F, c: F::Elem) -> Self {
        let z = field.zero();
        LazyMatrix::new(field, Structure::Diagonal, move |i, j| if i == j { c.clone() } else { z.clone() }, |j| j)
            .with_label("scalar")
    }

    /// Diagonal matrix with `d(i)` at `(i, i)`.
    pub fn diagonal(field: F, d: impl Fn(usize) -> F::Elem + Send + Sync + 'static) -> Self {
        let z = field.zero();
        LazyMatrix::new(field, Structure::Diagonal, move |i, j| if i == j { d(i) } else { z.clone() }, |j| j)
            .with_label("diagonal")
    }

    pub fn field(&self) -> &F {
        &self.0.field
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn structure(&self) -> Structure {
        self.0.structure
    }

    pub fn col_support(&self, j: usize) -> usize {
        (self.0.support)(j)
    }

    pub fn safe_size(&self, n: usize) -> usize {
        (self.0.boundary)(n)
    }

    fn known_zero(&self, i: usize, j: usize) -> bool {
        self.0.structure.forces_zero(i, j) || i > self.col_support(j)
    }

    pub fn entry(&self, i: usize, j: usize) -> F::Elem {
        if self.known_zero(i, j) {
            return self.0.field.zero();
        }
        if let Some(v) = self.0.memo.read().get(&(i, j)) {
            return v.clone();
        }
        let v = (self.0.entry)(i, j);
        self.0.memo.write().insert((i, j), v.clone());
        v
    }

    /// The generator's value, bypassing the cache and the shape shortcuts.
    pub fn entry_uncached(&self, i: usize, j: usize) -> F::Elem {
        (self.0.entry)(i, j)
    }

    /// Dense leading `n×n` block.
    pub fn truncate(&self, n: usize) -> Matrix<F> {
        Matrix::from_fn(self.0.field.clone(), n, n, |i, j| self.entry(i, j))
    }

    /// Leading block, enlarged to the safe size when `boundary_safe`.
    pub fn truncate_view(&self, n: usize, boundary_safe: bool) -> TruncatedView<F> {
        let size = if boundary_safe { self.safe_size(n) } else { n };
        TruncatedView { requested: n, size, matrix: self.truncate(size), boundary_safe }
    }

    /// Samples rows `s(j)+1 ..= s(j)+margin` of the first `cols` columns and
    /// reports the first nonzero entry the witness excludes.
    pub fn check_support(&self, cols: usize, margin: usize) -> Result<()> {
        let f = &self.0.field;
        for j in 0..cols {
            let s = self.col_support(j);
            for i in s + 1..=s + margin {
                if !f.is_zero(&self.entry_uncached(i, j)) {
                    return Err(Error::SupportViolation { row: i, col: j });
                }
            }
        }
        Ok(())
    }

    /// Shape claims violated by the generator inside the leading block.
    pub fn check_structure(&self, n: usize) -> Result<()> {
        let f = &self.0.field;
        for j in 0..n {
            for i in 0..n {
                if self.0.structure.forces_zero(i, j) && !f.is_zero(&self.entry_uncached(i, j)) {
                    return Err(Error::Shape(format!("{} entry ({i}, {j}) is nonzero", self.0.structure)));
                }
            }
        }
        Ok(())
    }

    /// Entrywise sum. The safe size is the larger of the two.
    pub fn add(&self, other: &LazyMatrix<F>) -> LazyMatrix<F> {
        LazyMatrix::sum(self.0.field.clone(), &[self.clone(), other.clone()])
    }

    pub fn sum(field: F, terms: &[LazyMatrix<F>]) -> LazyMatrix<F> {
        let structure = terms.iter().map(|t| t.structure()).fold(Structure::Diagonal, Structure::join);
        let (a, b, c) = (terms.to_vec(), terms.to_vec(), terms.to_vec());
        let f = field.clone();
        LazyMatrix::new(
            field,
            structure,
            move |i, j| a.iter().fold(f.zero(), |acc, t| f.add(&acc, &t.entry(i, j))),
            move |j| b.iter().map(|t| t.col_support(j)).max().unwrap_or(j),
        )
        .with_boundary(move |n| c.iter().map(|t| t.safe_size(n)).max().unwrap_or(n))
        .with_label("sum")
    }

    /// Number of memoized entries.
    pub fn cached_entries(&self) -> usize {
        self.0.memo.read().len()
    }
}

impl<F: Field> fmt::Debug for LazyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyMatrix")
            .field("label", &self.0.label)
            .field("structure", &self.0.structure)
            .field("field", &self.0.field.name())
            .finish()
    }
}

/// A dense leading block of a lazy matrix.
#[derive(Clone, Debug)]
pub struct TruncatedView<F: Field> {
    pub requested: usize,
    /// Actual size `N' ≥ requested`.
    pub size: usize,
    pub matrix: Matrix<F>,
    pub boundary_safe: bool,
}

/// Memo for a sequential left-to-right scan, kept in stripes of
/// [`STRIPE`] rows. Each stripe is computed from the last state of the
/// previous one.
pub(crate) struct ScanMemo<T: Clone + Send + Sync + 'static> {
    first: Arc<dyn Fn() -> T + Send + Sync>,
    step: Arc<dyn Fn(usize, &T) -> T + Send + Sync>,
    stripes: RwLock<Vec<Arc<Vec<T>>>>,
}

pub(crate) const STRIPE: usize = 1024;

impl<T: Clone + Send + Sync + 'static> ScanMemo<T> {
    /// `first()` is the state at row 0; `step(n, prev)` the state at row `n`.
    pub(crate) fn new(
        first: impl Fn() -> T + Send + Sync + 'static,
        step: impl Fn(usize, &T) -> T + Send + Sync + 'static,
    ) -> Self {
        ScanMemo { first: Arc::new(first), step: Arc::new(step), stripes: RwLock::new(Vec::new()) }
    }

    pub(crate) fn get(&self, n: usize) -> T {
        let s = n / STRIPE;
        if let Some(stripe) = self.stripes.read().get(s) {
            return stripe[n % STRIPE].clone();
        }
        let mut stripes = self.stripes.write();
        while stripes.len() <= s {
            let start = stripes.len() * STRIPE;
            let mut v = Vec::with_capacity(STRIPE);
            let mut state = match stripes.last() {
                Some(prev) => (self.step)(start, &prev[STRIPE - 1]),
                None => (self.first)(),
            };
            v.push(state.clone());
            for r in start + 1..start + STRIPE {
                state = (self.step)(r, &state);
                v.push(state.clone());
            }
            stripes.push(Arc::new(v));
        }
        stripes[s][n % STRIPE].clone()
    }
}
