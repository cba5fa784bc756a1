//! Lower triangular column-finite matrices with constant diagonal `3ω`.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::RwLock;

use super::lazy::{LazyMatrix, Structure};
use super::upper::{decompose_upper_finite, PRECHECK};
use super::{LazySummand, Part};
use crate::decompose::SummandKind;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;

#[derive(Default)]
struct Profile {
    /// `l_m`: last nonzero row of column `m` (at least `m`).
    l: Vec<usize>,
    /// Prefix maxima of `l`.
    lp: Vec<usize>,
    /// Inclusive block ends; block `r` starts after block `r-1` ends.
    ends: Vec<usize>,
}

/// Staircase shape of a lower column-finite matrix: `l_m`, its prefix
/// maxima `l'_m` and the diagonal blocks `[b, l'_b]` they delimit.
pub struct StaircaseProfile<F: Field> {
    t: LazyMatrix<F>,
    state: RwLock<Profile>,
}

impl<F: Field> StaircaseProfile<F> {
    pub fn new(t: &LazyMatrix<F>) -> Self {
        StaircaseProfile { t: t.clone(), state: RwLock::new(Profile::default()) }
    }

    fn last_nonzero(&self, m: usize) -> usize {
        let f = self.t.field();
        (m + 1..=self.t.col_support(m)).rev().find(|&i| !f.is_zero(&self.t.entry(i, m))).unwrap_or(m)
    }

    fn extend(&self, m: usize) {
        if self.state.read().l.len() > m {
            return;
        }
        let mut st = self.state.write();
        while st.l.len() <= m {
            let c = st.l.len();
            let l = self.last_nonzero(c);
            let lp = st.lp.last().map_or(l, |&p| p.max(l));
            st.l.push(l);
            st.lp.push(lp);
        }
    }

    pub fn l(&self, m: usize) -> usize {
        self.extend(m);
        self.state.read().l[m]
    }

    pub fn l_prime(&self, m: usize) -> usize {
        self.extend(m);
        self.state.read().lp[m]
    }

    /// `(index, start, end)` of the block containing `j`.
    pub fn block_of(&self, j: usize) -> (usize, usize, usize) {
        loop {
            {
                let st = self.state.read();
                if st.ends.last().is_some_and(|&e| e >= j) {
                    let r = st.ends.partition_point(|&e| e < j);
                    let start = if r == 0 { 0 } else { st.ends[r - 1] + 1 };
                    return (r, start, st.ends[r]);
                }
            }
            let start = self.state.read().ends.last().map_or(0, |&e| e + 1);
            let end = self.l_prime(start);
            let mut st = self.state.write();
            if st.ends.last().map_or(0, |&e| e + 1) == start {
                st.ends.push(end);
            }
        }
    }

    /// Blocks `(start, end)` covering rows `0..n`.
    pub fn blocks_until(&self, n: usize) -> Vec<(usize, usize)> {
        if n == 0 {
            return Vec::new();
        }
        let (last, _, _) = self.block_of(n - 1);
        let st = self.state.read();
        (0..=last).map(|r| (if r == 0 { 0 } else { st.ends[r - 1] + 1 }, st.ends[r])).collect()
    }
}

/// Transposed upper construction for a finite lower block with diagonal `2ω`.
pub fn decompose_lower_finite<F: Field>(t: &Matrix<F>, omega: &F::Elem) -> Result<[Matrix<F>; 4]> {
    let parts = decompose_upper_finite(&t.transpose(), omega)?;
    Ok(parts.map(|m| m.transpose()))
}

/// Six lazy summands of a lower column-finite `t` with diagonal `3ω`.
///
/// `u` keeps `2ω` on the diagonal and `t`'s entries inside the staircase
/// blocks; each block is split into four. The remainder `v = t - u` has
/// diagonal ω and entries only in the block below each column block; it
/// splits by block parity.
pub fn decompose_lower_3omega<F: Field>(t: &LazyMatrix<F>, k: u32) -> Result<Vec<LazySummand<F>>> {
    let w = super::omega_for(t.field(), k)?;
    let omega = &w;
    let f = t.field().clone();
    if !matches!(t.structure(), Structure::Lower | Structure::Diagonal) {
        return Err(Error::Shape(format!("expected a lower triangular matrix, got {}", t.structure())));
    }
    let three_w = f.mul(&f.from_i64(3), omega);
    if (0..PRECHECK).any(|i| !f.equal(&t.entry(i, i), &three_w)) {
        return Err(Error::InvalidParameter("diagonal must be constant 3ω".into()));
    }
    let kind = SummandKind::Potent { exponent: k + 1 };
    let profile = Arc::new(StaircaseProfile::new(t));
    let blocks: Arc<RwLock<HashMap<usize, Arc<[Matrix<F>; 4]>>>> = Arc::new(RwLock::new(HashMap::new()));
    let block_part = |q: usize| {
        let (t, w, f2, p, cache) = (t.clone(), omega.clone(), f.clone(), profile.clone(), blocks.clone());
        let p2 = profile.clone();
        LazyMatrix::new(
            f.clone(),
            Structure::Lower,
            move |i, j| {
                let (r, start, end) = p.block_of(j);
                if i < start || i > end {
                    return f2.zero();
                }
                let hit = cache.read().get(&r).cloned();
                let parts = match hit {
                    Some(parts) => parts,
                    None => {
                        let size = end - start + 1;
                        let two_w = f2.add(&w, &w);
                        let u = Matrix::from_fn(f2.clone(), size, size, |a, b| match a.cmp(&b) {
                            std::cmp::Ordering::Equal => two_w.clone(),
                            std::cmp::Ordering::Greater => t.entry(start + a, start + b),
                            std::cmp::Ordering::Less => f2.zero(),
                        });
                        let parts = Arc::new(
                            decompose_lower_finite(&u, &w).expect("staircase blocks have diagonal 2ω"),
                        );
                        cache.write().insert(r, parts.clone());
                        parts
                    }
                };
                parts[q].get(i - start, j - start).clone()
            },
            move |j| p2.block_of(j).2,
        )
    };
    let remainder = |parity: usize| {
        let (t, w, f2, p) = (t.clone(), omega.clone(), f.clone(), profile.clone());
        let t2 = t.clone();
        LazyMatrix::new(
            f.clone(),
            Structure::Lower,
            move |i, j| {
                let (r, _, end) = p.block_of(j);
                if r % 2 != parity {
                    f2.zero()
                } else if i == j {
                    w.clone()
                } else if i > end {
                    t.entry(i, j)
                } else {
                    f2.zero()
                }
            },
            move |j| t2.col_support(j).max(j),
        )
    };
    let labels = ["u₁", "u₂", "u₃", "u₄"];
    let mut out: Vec<LazySummand<F>> = (0..4)
        .map(|q| {
            LazySummand::new(
                block_part(q).with_label(labels[q]),
                kind,
                Part::Lower,
                format!("lower: staircase blocks, piece {}", q + 1),
            )
        })
        .collect();
    out.push(LazySummand::new(remainder(0).with_label("v'"), kind, Part::Lower, "lower: even block remainder"));
    out.push(LazySummand::new(remainder(1).with_label("v''"), kind, Part::Lower, "lower: odd block remainder"));
    Ok(out)
}
