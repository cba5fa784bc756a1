//! Lattice search for nonnegative certificates.
//!
//! Coefficient vectors `a ∈ Z^k` with `Σ a_j ζ^j = t` form the coset
//! `base + {Φ_k·g : deg g < k - φ(k)}`. Because `Φ_k(0) = 1` for `k >= 2`,
//! the first `k - φ(k)` entries of `a` determine `g`, so the search walks
//! those entries and solves for the rest.

use num_traits::ToPrimitive;

use super::TraceCertificate;
use crate::error::{Error, Result};
use crate::scalars::CycloNum;

/// Default bound on `F(1)` for certificate searches.
pub const DEFAULT_BUDGET: u64 = 64;

struct Search<'a> {
    k: usize,
    m: usize,
    base: Vec<i64>,
    phi: &'a [i64],
    rank: u64,
    budget: u64,
    prefix: Vec<i64>,
    g: Vec<i64>,
    best: Option<(u64, Vec<u64>)>,
}

impl Search<'_> {
    fn best_f1(&self) -> u64 {
        self.best.as_ref().map_or(self.budget, |(f1, _)| *f1)
    }

    fn dfs(&mut self, pos: usize, partial: u64) {
        if pos == self.m {
            self.finish();
            return;
        }
        let mut a = 0u64;
        while partial + a <= self.best_f1() {
            // a_pos = base_pos + Σ_{i<=pos} g_i φ_{pos-i}, with φ_0 = 1
            let mut rest = self.base[pos];
            for i in 0..pos {
                rest += self.g[i] * self.phi.get(pos - i).copied().unwrap_or(0);
            }
            self.g[pos] = a as i64 - rest;
            self.prefix[pos] = a as i64;
            self.dfs(pos + 1, partial + a);
            a += 1;
        }
    }

    fn finish(&mut self) {
        let mut a: Vec<u64> = self.prefix.iter().map(|&x| x as u64).collect();
        let mut sum: u64 = a.iter().sum();
        for j in self.m..self.k {
            let mut v = self.base[j];
            for (i, gi) in self.g.iter().enumerate() {
                if let Some(p) = self.phi.get(j - i) {
                    v += gi * p;
                }
            }
            if v < 0 {
                return;
            }
            sum += v as u64;
            if sum > self.budget {
                return;
            }
            a.push(v as u64);
        }
        if sum < self.rank {
            return;
        }
        let better = match &self.best {
            None => true,
            Some((f1, prev)) => sum < *f1 || (sum == *f1 && a < *prev),
        };
        if better {
            self.best = Some((sum, a));
        }
    }
}

/// Finds `F` with nonnegative integer coefficients, `F(ω) = t`,
/// `rank <= F(1) <= budget`, minimizing `F(1)` and then the coefficient
/// vector lexicographically.
pub fn find_certificate(t: &CycloNum, rank: usize, budget: u64) -> Result<TraceCertificate> {
    let k = t.k();
    let coords = t
        .integer_coords()
        .ok_or_else(|| Error::NonIntegral(format!("{t} has non-integer coordinates")))?;
    let mut base: Vec<i64> = Vec::with_capacity(k as usize);
    for c in &coords {
        base.push(c.to_i64().ok_or_else(|| Error::Infeasible(format!("coordinates of {t} are too large")))?);
    }
    base.resize(k as usize, 0);
    if k == 1 {
        return match base[0] {
            v if v >= 0 && v as u64 >= rank as u64 && v as u64 <= budget => TraceCertificate::new(1, vec![v as u64]),
            _ => Err(Error::Infeasible(format!("no certificate for {t} with rank {rank} within budget {budget}"))),
        };
    }
    let phi: Vec<i64> = t.ctx().phi().iter().map(|c| c.to_i64().expect("small cyclotomic coefficients")).collect();
    debug_assert_eq!(phi[0], 1);
    let m = k as usize - t.ctx().degree();
    let mut s = Search {
        k: k as usize,
        m,
        base,
        phi: &phi,
        rank: rank as u64,
        budget,
        prefix: vec![0; m],
        g: vec![0; m],
        best: None,
    };
    s.dfs(0, 0);
    match s.best {
        Some((_, a)) => TraceCertificate::new(k, a),
        None => Err(Error::Infeasible(format!(
            "no nonnegative certificate for {t} with F(1) >= {rank} within budget {budget}"
        ))),
    }
}
