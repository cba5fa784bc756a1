//! Rank-one splittings with explicit summand counts.

use super::blocks::lemma2_split_with_root;
use super::engine::{column_engine, Amount, RootGroup};
use super::{potency_for, root_of, Decomposition, Mode, Summand, SummandKind};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;
use crate::trace::MultiRootCertificate;

/// `(α-2)/2` for even `α`, `(α-3)/2 + 3` for odd `α`.
pub fn gamma(alpha: u64) -> u64 {
    if alpha.is_multiple_of(2) {
        alpha.saturating_sub(2) / 2
    } else {
        alpha.saturating_sub(3) / 2 + 3
    }
}

/// Which closed count formula a report compares against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountFormula {
    /// Rank one, trace `αρ`: `(α-2)/2 + 2` or `(α-3)/2 + 3`.
    RankOne,
    /// Every coefficient of `F` above 3 and `rank = k`: `(Σγ_i + 2)·k`.
    AllCoefficients,
    /// Some coefficients zero, the rest above 3: `Σ_{α_i≠0} γ_i·(k-j)`.
    SomeCoefficients,
    /// Several root orders: `(γ₀ + Σ(γ_ij + 2))·rank`.
    MultiRoot,
}

/// Constructed count next to the closed formula's count.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub constructed: u64,
    pub claimed: u64,
    pub formula: CountFormula,
}

impl CountReport {
    pub fn matches(&self) -> bool {
        self.constructed == self.claimed
    }
}

fn rank_one_claim(alpha: u64) -> u64 {
    if alpha.is_multiple_of(2) {
        (alpha - 2) / 2 + 2
    } else {
        (alpha - 3) / 2 + 3
    }
}

/// Splits `αρ·e₀₀` (in the basis `P`) into `α` potent summands:
/// `2β` single entries `ρe₀₀`, `ρe₁₁` and the pair splitting
/// `diag((α-β)ρ, -βρ)` with `β = (α-2)/2`; odd `α` first peels `ρe₀₀`.
fn split_rank_one<F: Field>(
    p: &Matrix<F>,
    p_inv: &Matrix<F>,
    alpha: u64,
    root: &F::Elem,
    kind: SummandKind,
) -> Result<Vec<Summand<F>>> {
    let f = p.field();
    let n = p.rows();
    let single = |i: usize| -> Result<Matrix<F>> {
        let mut e = Matrix::zeros(f.clone(), n, n);
        e.set(i, i, root.clone());
        p.matmul(&e)?.matmul(p_inv)
    };
    let mut out = Vec::with_capacity(alpha as usize);
    let even = if alpha % 2 == 1 {
        out.push(Summand::new(single(0)?, kind, "odd peel"));
        alpha - 1
    } else {
        alpha
    };
    let beta = (even - 2) / 2;
    let e00 = single(0)?;
    let e11 = single(1)?;
    for _ in 0..beta {
        out.push(Summand::new(e00.clone(), kind, "diagonal"));
        out.push(Summand::new(e11.clone(), kind, "diagonal"));
    }
    let x = f.mul(&f.from_i64((even - beta) as i64), root);
    let (b, c) = lemma2_split_with_root(f, &x, root)?;
    for (m, tag) in [(b, "pair B"), (c, "pair C")] {
        let mut big = Matrix::zeros(f.clone(), n, n);
        big.set_block(0, 0, &m);
        out.push(Summand::new(p.matmul(&big)?.matmul(p_inv)?, kind, tag));
    }
    Ok(out)
}

/// Basis in which a rank-one `A` becomes `tr(A)·e₀₀`: its nonzero column
/// followed by a kernel basis.
fn rank_one_basis<F: Field>(a: &Matrix<F>) -> Result<(Matrix<F>, Matrix<F>)> {
    let f = a.field();
    let j = (0..a.cols())
        .find(|&j| a.col(j).iter().any(|x| !f.is_zero(x)))
        .ok_or_else(|| Error::InvalidParameter("matrix is zero".into()))?;
    let mut cols = vec![a.col(j)];
    cols.extend(a.kernel_basis());
    let p = Matrix::from_cols(f.clone(), &cols)?;
    let p_inv = p.inverse()?;
    Ok((p, p_inv))
}

fn rank_one_inner<F: Field>(a: &Matrix<F>, alpha: u64, root: &F::Elem, kind: SummandKind) -> Result<Vec<Summand<F>>> {
    let f = a.field();
    if a.rows() < 2 {
        return Err(Error::InvalidParameter("rank-one splitting needs n >= 2".into()));
    }
    if alpha <= 3 {
        return Err(Error::InvalidParameter(format!("α must exceed 3, got {alpha}")));
    }
    if a.rank() != 1 {
        return Err(Error::InvalidParameter(format!("matrix has rank {}, expected 1", a.rank())));
    }
    let expect = f.mul(&f.from_i64(alpha as i64), root);
    if !f.equal(&a.trace()?, &expect) {
        return Err(Error::InvalidParameter(format!(
            "trace {} is not {}",
            f.format(&a.trace()?),
            f.format(&expect)
        )));
    }
    let (p, p_inv) = rank_one_basis(a)?;
    split_rank_one(&p, &p_inv, alpha, root, kind)
}

/// Rank-one `A` with `tr A = α·ω^j`, `α > 3`, as `α` summands that are
/// `(k+1)`-potent (idempotent when `j = 0`).
pub fn decompose_rank1<F: Field>(a: &Matrix<F>, k: u32, alpha: u64, j: u32) -> Result<(Decomposition<F>, CountReport)> {
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if j >= k {
        return Err(Error::InvalidParameter(format!("power {j} must be below k = {k}")));
    }
    let f = a.field();
    let root = root_of(f, k, j as i64)?;
    let kind = potency_for(f, &root, k);
    let summands = rank_one_inner(a, alpha, &root, kind)?;
    let report = CountReport { constructed: summands.len() as u64, claimed: rank_one_claim(alpha), formula: CountFormula::RankOne };
    let mut d = Decomposition::new(a.clone(), summands, Mode::Sum);
    d.claimed_count = Some(report.claimed);
    Ok((d.verified()?, report))
}

/// Rank equal to the number of nonzero certificate terms, each above 3:
/// the leading block is given the diagonal `(α_iρ_i)` and each column is
/// split by [`decompose_rank1`]'s construction.
pub fn decompose_counted_general<F: Field>(
    a: &Matrix<F>,
    cert: &MultiRootCertificate,
) -> Result<(Decomposition<F>, CountReport)> {
    let f = a.field();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let mut groups: Vec<RootGroup<F>> = Vec::new();
    let mut alphas = Vec::new();
    if cert.a0 > 0 {
        groups.push(RootGroup { root: f.one(), kind: SummandKind::Potent { exponent: 2 }, amount: Amount::Count(cert.a0) });
        alphas.push(cert.a0);
    }
    for band in &cert.roots {
        for (j, &c) in band.coeffs.iter().enumerate() {
            if c > 0 {
                let root = root_of(f, band.beta, j as i64)?;
                let kind = potency_for(f, &root, band.beta);
                groups.push(RootGroup { root, kind, amount: Amount::Count(c) });
                alphas.push(c);
            }
        }
    }
    if let Some(&bad) = alphas.iter().find(|&&x| x <= 3) {
        return Err(Error::InvalidParameter(format!("every nonzero coefficient must exceed 3, found {bad}")));
    }
    let value = cert.evaluate_in(cert.common_order())?;
    if !f.equal(&f.from_cyclo(&value)?, &a.trace()?) {
        return Err(Error::InvalidCertificate("certificate does not evaluate to the trace".into()));
    }
    let rank = a.rank();
    if rank != groups.len() {
        return Err(Error::InvalidParameter(format!(
            "rank {rank} must equal the number of nonzero coefficients ({})",
            groups.len()
        )));
    }
    // one slot per group with the whole coefficient: each column piece is
    // rank one with trace α_iρ_i
    let columns = column_engine(a, groups.clone(), Mode::Sum)?;
    if columns.iter().any(|s| s.provenance == "peel") {
        return Err(Error::Unreachable("leading block is scalar; the diagonal (α_iρ_i) is unreachable".into()));
    }
    let mut summands = Vec::new();
    let mut idx = 0;
    for (g, &alpha) in groups.iter().zip(&alphas) {
        let piece = &columns[idx].matrix;
        idx += alpha as usize;
        let scaled = piece.scale(&f.from_i64(alpha as i64));
        summands.extend(rank_one_inner(&scaled, alpha, &g.root, g.kind)?);
    }
    let multi = cert.roots.len() > 1;
    let (claimed, formula) = if multi {
        let inner: u64 = cert.roots.iter().flat_map(|r| r.coeffs.iter().filter(|&&c| c > 0)).map(|&c| gamma(c) + 2).sum();
        ((gamma(cert.a0) + inner) * rank as u64, CountFormula::MultiRoot)
    } else {
        let k = cert.roots.first().map_or(1, |r| r.beta) as usize;
        let mut all = vec![cert.a0];
        all.extend(cert.roots.first().map(|r| r.coeffs.iter().skip(1).copied().collect::<Vec<_>>()).unwrap_or_default());
        all.resize(k, 0);
        let nonzero: Vec<u64> = all.iter().copied().filter(|&c| c > 0).collect();
        let gammas: u64 = nonzero.iter().map(|&c| gamma(c)).sum();
        if nonzero.len() == k {
            ((gammas + 2) * k as u64, CountFormula::AllCoefficients)
        } else {
            (gammas * nonzero.len() as u64, CountFormula::SomeCoefficients)
        }
    };
    let report = CountReport { constructed: summands.len() as u64, claimed, formula };
    let mut d = Decomposition::new(a.clone(), summands, Mode::Sum);
    d.certificate = Some(cert.to_string());
    d.claimed_count = Some(claimed);
    Ok((d.verified()?, report))
}
