//! Conversions between potent and finite-order matrices, and sums of
//! finite-order matrices.

use num_bigint::BigInt;
use num_integer::Integer;

use super::engine::{column_engine, exact_trace, Amount, RootGroup};
use super::{root_of, Decomposition, Mode, Summand, SummandKind};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{CycloNum, Field};
use crate::trace::{find_certificate, DEFAULT_BUDGET};

/// `B = (1/k)·Σ_{i=0}^{k-1} A^i` for `A^k = I`; `B` is idempotent, hence
/// `k`-potent.
pub fn potent_from_order<F: Field>(a: &Matrix<F>, k: u32) -> Result<Matrix<F>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    if !a.has_order_dividing(k as u64)? {
        return Err(Error::NotOfOrder { order: k });
    }
    let f = a.field();
    let n = a.rows();
    let mut acc = Matrix::zeros(f.clone(), n, n);
    let mut p = Matrix::identity(f.clone(), n);
    for _ in 0..k {
        acc = acc.add(&p)?;
        p = p.matmul(a)?;
    }
    let b = acc.scale(&f.inv(&f.from_i64(k as i64))?);
    debug_assert!(b.is_kpotent(k as u64).unwrap_or(false));
    Ok(b)
}

/// Which scalar shift turns a k-potent matrix into one of order k.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderVariant {
    /// `B = (ω - 1)·A^{k-1} + I`, any k.
    Eq1,
    /// `C = (1 + ω)·A^{k-1} - I`, even k.
    Eq2,
}

/// Order-k matrix built from a k-potent `A`. `A^{k-1}` is idempotent, so
/// `(αP + I)^k = ((α+1)^k - 1)·P + I`, which is `I` for `α = ω - 1`; and
/// `(αP - I)^k = ((α-1)^k - 1)·P + I` for even `k`, which is `I` for
/// `α = 1 + ω`.
pub fn order_from_potent<F: Field>(a: &Matrix<F>, k: u32, variant: OrderVariant) -> Result<Matrix<F>> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be at least 2, got {k}")));
    }
    if !a.is_kpotent(k as u64)? {
        return Err(Error::NotPotent { exponent: k });
    }
    let f = a.field();
    let w = root_of(f, k, 1)?;
    let p = a.matpow(k as u64 - 1)?;
    let out = match variant {
        OrderVariant::Eq1 => p.scale(&f.sub(&w, &f.one())).add_scalar(&f.one())?,
        OrderVariant::Eq2 => {
            if !k.is_multiple_of(2) {
                return Err(Error::Unsupported(format!("the second construction needs even k, got {k}")));
            }
            p.scale(&f.add(&w, &f.one())).add_scalar(&f.neg(&f.one()))?
        }
    };
    if !out.has_order_dividing(k as u64)? {
        return Err(Error::NotOfOrder { order: k });
    }
    Ok(out)
}

fn binomial(n: u32, r: u32) -> BigInt {
    (0..r).fold(BigInt::from(1), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `x^{k-1} + C(k,1)x^{k-2} + … + C(k,k-1)` at `x = ω - 1`, i.e.
/// `((x+1)^k - 1)/x`. Zero for every `k >= 1`.
pub fn eq1_residual(k: u32) -> CycloNum {
    let x = &CycloNum::omega_power(k, 1) - &CycloNum::one(k);
    horner(k, &x, |i| binomial(k, i))
}

/// `x^{k-1} - C(k,1)x^{k-2} + … - C(k,k-1)` at `x = 1 + ω`, i.e.
/// `((x-1)^k - 1)/x` for even `k`. Zero for even `k >= 4`; for `k = 2`
/// the point `1 + ω` is `0` and the value is `-2`.
pub fn eq2_residual(k: u32) -> CycloNum {
    let x = &CycloNum::omega_power(k, 1) + &CycloNum::one(k);
    horner(k, &x, |i| if i % 2 == 0 { binomial(k, i) } else { -binomial(k, i) })
}

/// `Σ_{i=0}^{k-1} c(i)·x^{k-1-i}`.
fn horner(k: u32, x: &CycloNum, c: impl Fn(u32) -> BigInt) -> CycloNum {
    let mut acc = CycloNum::zero(k);
    for i in 0..k {
        let ci = CycloNum::from_rational(k, num_rational::BigRational::from_integer(c(i)));
        acc = &(&acc * x) + &ci;
    }
    acc
}

/// `B = 2E - ωI` for `E` with a single nonzero column `p` and `E_pp = ω`.
/// `B² = ω²I`, so `B` has order `k` for even `k`.
pub fn order_from_lemma4<F: Field>(e: &Matrix<F>, k: u32) -> Result<Matrix<F>> {
    if !k.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("2E - ωI has order k only for even k, got {k}")));
    }
    if !e.is_square() {
        return Err(Error::NotSquare { rows: e.rows(), cols: e.cols() });
    }
    let f = e.field();
    let w = root_of(f, k, 1)?;
    let n = e.rows();
    let nonzero: Vec<usize> = (0..n).filter(|&j| e.col(j).iter().any(|x| !f.is_zero(x))).collect();
    match nonzero.as_slice() {
        [p] if f.equal(e.get(*p, *p), &w) => {}
        _ => return Err(Error::Shape("expected a single nonzero column with ω on the diagonal".into())),
    }
    let b = e.scale(&f.from_i64(2)).add_scalar(&f.neg(&w))?;
    debug_assert!(b.has_order_dividing(k as u64).unwrap_or(false));
    Ok(b)
}

/// Parity class of a cyclotomic integer: its canonical coordinates mod 2.
fn parity(c: &CycloNum) -> Option<Vec<bool>> {
    Some(c.integer_coords()?.iter().map(|x| x.is_odd()).collect())
}

/// A diagonal matrix of k-th roots whose trace has the given parity class,
/// preferring root `1` in every position. `None` if no choice works.
fn parity_diagonal(k: u32, n: usize, target: &[bool]) -> Option<Vec<i64>> {
    let dim = target.len();
    let root_par: Vec<u32> = (0..k as i64)
        .map(|j| {
            let p = parity(&CycloNum::omega_power(k, j)).expect("roots are integral");
            p.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i))
        })
        .collect();
    let goal = target.iter().enumerate().fold(0u32, |acc, (i, &b)| acc | (u32::from(b) << i));
    let states = 1usize << dim;
    // reach[i][s]: positions i..n can produce parity s
    let mut reach = vec![vec![false; states]; n + 1];
    reach[n][0] = true;
    for i in (0..n).rev() {
        for s in 0..states {
            if reach[i + 1][s] {
                for &p in &root_par {
                    reach[i][s ^ p as usize] = true;
                }
            }
        }
    }
    if !reach[0][goal as usize] {
        return None;
    }
    let mut need = goal;
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let j = (0..k as i64).find(|&j| reach[i + 1][(need ^ root_par[j as usize]) as usize])?;
        need ^= root_par[j as usize];
        out.push(j);
    }
    Some(out)
}

/// Writes `A` as a sum of matrices of order `k` (even `k`).
///
/// With `S = (A + D + mωI)/2`, where `D` is an optional diagonal of roots
/// fixing the parity of the trace, `S` has an integral trace; its sum
/// decomposition `S = Σ E_i` gives `A = Σ (2E_i - ρ_iI) + Σ ρ_iI - D - mωI`.
/// Every `2E_i - ρ_iI` squares to `ρ_i²I`, `-D` is a root diagonal, and the
/// scalar remainder becomes copies of `±ρI`.
pub fn decompose_finite_order<F: Field>(a: &Matrix<F>, k: u32) -> Result<Decomposition<F>> {
    if k < 2 || !k.is_multiple_of(2) {
        return Err(Error::Unsupported(format!("sums of order-k matrices need even k, got {k}")));
    }
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let n = a.rows();
    let order = SummandKind::Order { order: k };
    if n > 0 && a.has_order_dividing(k as u64)? {
        let mut d = Decomposition::new(a.clone(), vec![Summand::new(a.clone(), order, "input")], Mode::Sum);
        d.notes.push("input already has finite order".into());
        return d.verified();
    }
    let t = exact_trace(a, k)?;
    let nn = n as i64;
    let f_t = find_certificate(&t, 0, DEFAULT_BUDGET).map(|c| c.f1() as i64);
    // smallest m >= 2 - F(1)/n, matching the parity of F(1)
    let start = match (&f_t, nn) {
        (Ok(f1), nn) if nn > 0 => {
            let mut m = Integer::div_ceil(&(2 * nn - f1), &nn);
            if (m - f1).rem_euclid(2) != 0 {
                m += 1;
            }
            m
        }
        _ => 0,
    };
    let mut last_err = Error::NonIntegral(format!("no shift makes (tr A + tr D)/2 integral for tr A = {t}"));
    for step in 0..2 * DEFAULT_BUDGET as i64 {
        let m = start + step;
        let shifted = &t + &CycloNum::omega_power(k, 1).scale(&num_rational::BigRational::from_integer(BigInt::from(m * nn)));
        let Some(par) = parity(&shifted) else {
            return Err(Error::NonIntegral(format!("trace {t} has non-integer coordinates")));
        };
        let diag = if par.iter().any(|&b| b) {
            match parity_diagonal(k, n, &par) {
                Some(d) => Some(d),
                None => continue,
            }
        } else {
            None
        };
        match attempt(a, k, m, diag.as_deref()) {
            Ok(d) => return Ok(d),
            Err(e @ (Error::Infeasible(_) | Error::InvalidCertificate(_) | Error::Unreachable(_))) => last_err = e,
            Err(e) => return Err(e),
        }
    }
    Err(last_err)
}

fn attempt<F: Field>(a: &Matrix<F>, k: u32, m: i64, diag: Option<&[i64]>) -> Result<Decomposition<F>> {
    let f = a.field();
    let n = a.rows();
    let order = SummandKind::Order { order: k };
    let w = f.omega();
    let shift = f.mul(&f.from_i64(m), &w);
    let mut shifted = a.add_scalar(&shift)?;
    let dmat = diag.map(|d| {
        let entries: Vec<F::Elem> = d.iter().map(|&j| f.omega_power(j)).collect();
        Matrix::diagonal(f.clone(), &entries)
    });
    if let Some(dm) = &dmat {
        shifted = shifted.add(dm)?;
    }
    let s = shifted.scale(&f.inv(&f.from_i64(2))?);
    let ts = exact_trace(&s, k)?;
    let rank = s.rank();
    let cert = find_certificate(&ts, rank, DEFAULT_BUDGET)?;
    let groups: Vec<RootGroup<F>> = cert
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, &c)| {
            let root = f.omega_power(j as i64);
            RootGroup { root, kind: super::potency_for(f, &f.omega_power(j as i64), k), amount: Amount::Count(c) }
        })
        .collect();
    let pieces = column_engine(&s, groups, Mode::Sum)?;
    let mut out = Vec::with_capacity(pieces.len() + 2);
    // net multiple of each root in the scalar remainder Σ ρ_i I - mωI
    let mut net = vec![0i64; k as usize];
    for p in &pieces {
        let j = (0..k as i64)
            .find(|&j| {
                let r = f.omega_power(j);
                let tr = p.matrix.trace().unwrap_or_else(|_| f.zero());
                f.equal(&tr, &r)
            })
            .ok_or_else(|| Error::Infeasible("piece trace is not a root of unity".into()))?;
        net[j as usize] += 1;
        let b = p.matrix.scale(&f.from_i64(2)).add_scalar(&f.neg(&f.omega_power(j)))?;
        out.push(Summand::new(b, order, format!("2E - ρI ({})", p.provenance)));
    }
    net[1] -= m;
    if let Some(dm) = dmat {
        out.push(Summand::new(dm.neg(), order, "parity diagonal"));
    }
    // ρ and -ρ = ω^{k/2}ρ cancel
    let half = k as usize / 2;
    for j in 0..half {
        let c = net[j] - net[j + half];
        let (root, count) = if c >= 0 { (j, c) } else { (j + half, -c) };
        let m = Matrix::scalar(f.clone(), n, f.omega_power(root as i64));
        for _ in 0..count {
            out.push(Summand::new(m.clone(), order, "scalar"));
        }
    }
    let mut d = Decomposition::new(a.clone(), out, Mode::Sum);
    d.certificate = Some(cert.to_string());
    d.notes.push(format!("shift m = {m}{}", if diag.is_some() { " with parity diagonal" } else { "" }));
    d.verified()
}
