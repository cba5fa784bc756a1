//! Column-splitting engine shared by the sum and linear-combination
//! constructions.
//!
//! `A = S·C·S⁻¹` with the kernel in the trailing coordinates, so only the
//! leading `s×s` block `A₁` of `C` matters. A similarity `T` gives `A₁` a
//! prescribed diagonal, after which every column of `C` is cut into pieces
//! whose diagonal entry is a root of unity; each piece is a single-column
//! matrix of the `(k+1)`-potent shape.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{fillmore::diagonal_similarity, root_of, Decomposition, Mode, Summand, SummandKind};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::Field;
use crate::trace::{find_certificate, MultiRootCertificate, SignedCertificate, TraceCertificate, DEFAULT_BUDGET};

/// Amount of one root in a certificate.
#[derive(Clone, Debug)]
pub(crate) enum Amount {
    Count(u64),
    Coeff(BigRational),
}

#[derive(Clone, Debug)]
pub(crate) struct RootGroup<F: Field> {
    pub root: F::Elem,
    pub kind: SummandKind,
    pub amount: Amount,
}

/// Per slot, the `(group, part)` pairs it carries.
type Slots = Vec<Vec<(usize, Amount)>>;

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn capacity(a: &Amount) -> u64 {
    match a {
        Amount::Count(c) => *c,
        Amount::Coeff(c) => c.abs().ceil().to_integer().to_u64().unwrap_or(u64::MAX).max(1),
    }
}

/// Splits `amount` into `parts` pieces: counts as evenly as possible with
/// larger pieces first, coefficients exactly evenly.
fn split(amount: &Amount, parts: u64) -> Vec<Amount> {
    match amount {
        Amount::Count(a) => {
            let (q, r) = (a / parts, a % parts);
            (0..parts).map(|i| Amount::Count(q + u64::from(i < r))).collect()
        }
        Amount::Coeff(c) => (0..parts).map(|_| Amount::Coeff(c / rat(parts))).collect(),
    }
}

/// Distributes the groups over `s` slots. With at most `s` groups every
/// group gets a slot and spare slots go round-robin to groups with spare
/// capacity; otherwise the last slot mixes the overflow groups.
fn allocate<F: Field>(groups: &[RootGroup<F>], s: usize, strict: bool) -> Slots {
    let g = groups.len();
    if g > s {
        let mut slots: Slots = (0..s - 1).map(|j| vec![(j, groups[j].amount.clone())]).collect();
        slots.push((s - 1..g).map(|j| (j, groups[j].amount.clone())).collect());
        return slots;
    }
    let caps: Vec<u64> = groups.iter().map(|gr| capacity(&gr.amount)).collect();
    let mut r = vec![1u64; g];
    let mut remaining = s - g;
    let mut relaxed = !strict;
    while remaining > 0 {
        let mut progressed = false;
        for j in 0..g {
            if remaining > 0 && (relaxed || r[j] < caps[j]) {
                r[j] += 1;
                remaining -= 1;
                progressed = true;
            }
        }
        if !progressed {
            relaxed = true;
        }
    }
    let mut slots = Slots::with_capacity(s);
    for (j, gr) in groups.iter().enumerate() {
        for part in split(&gr.amount, r[j]) {
            slots.push(vec![(j, part)]);
        }
    }
    slots
}

fn amount_elem<F: Field>(f: &F, a: &Amount) -> Result<F::Elem> {
    match a {
        Amount::Count(c) => Ok(f.from_i64(*c as i64)),
        Amount::Coeff(c) => f.from_rational(c),
    }
}

fn slot_targets<F: Field>(f: &F, groups: &[RootGroup<F>], slots: &Slots) -> Result<Vec<F::Elem>> {
    slots
        .iter()
        .map(|slot| {
            slot.iter().try_fold(f.zero(), |acc, (j, part)| {
                Ok(f.add(&acc, &f.mul(&amount_elem(f, part)?, &groups[*j].root)))
            })
        })
        .collect()
}

fn unit_row<F: Field>(f: &F, n: usize, i: usize) -> Vec<F::Elem> {
    let mut e = vec![f.zero(); n];
    e[i] = f.one();
    e
}

/// Builds the summands. `strict` selects the capacity rule of sum mode.
pub(crate) fn column_engine<F: Field>(a: &Matrix<F>, mut groups: Vec<RootGroup<F>>, mode: Mode) -> Result<Vec<Summand<F>>> {
    let f = a.field().clone();
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    groups.retain(|g| match &g.amount {
        Amount::Count(c) => *c > 0,
        Amount::Coeff(c) => !c.is_zero(),
    });
    if groups.is_empty() {
        return if a.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::InvalidCertificate("empty certificate for a nonzero matrix".into()))
        };
    }
    let kb = a.kernel_block_form()?;
    let s = kb.rank.max(1);
    let total: u64 = groups.iter().map(|g| capacity(&g.amount)).sum();
    if mode == Mode::Sum && total < s as u64 {
        return Err(Error::InvalidCertificate(format!("F(1) = {total} is below rank {s}")));
    }
    let strict = mode == Mode::Sum;
    let mut c = kb.c.clone();
    let mut out = Vec::new();

    let mut slots = allocate(&groups, s, strict);
    let mut targets = slot_targets(&f, &groups, &slots)?;
    let a1 = c.submatrix(0, s, 0, s);
    if s >= 2 {
        if let Some(lambda) = a1.scalar_value() {
            if !targets.iter().all(|d| f.equal(d, &lambda)) {
                // Peel one piece off the first group so that the block
                // stops being scalar: E = ρ·e₀₀ + e₁₀ in C coordinates.
                let g0 = &mut groups[0];
                let root = g0.root.clone();
                let (coef, below) = match &mut g0.amount {
                    Amount::Count(cnt) => {
                        if total < s as u64 + 1 {
                            return Err(Error::Infeasible(format!(
                                "leading block is scalar and F(1) = {total} leaves no piece to peel (needs {})",
                                s + 1
                            )));
                        }
                        *cnt -= 1;
                        (None, f.one())
                    }
                    Amount::Coeff(q) => {
                        let p = q.clone() / rat(2);
                        *q = p.clone();
                        let pe = f.from_rational(&p)?;
                        (Some(pe.clone()), f.inv(&pe)?)
                    }
                };
                let mut u = vec![f.zero(); n];
                u[0] = root;
                u[1] = below;
                let e_c = Matrix::outer(f.clone(), &u, &unit_row(&f, n, 0));
                let contribution = match &coef {
                    Some(p) => e_c.scale(p),
                    None => e_c.clone(),
                };
                c = c.sub(&contribution)?;
                let e_a = Matrix::outer(f.clone(), &kb.s.mul_vec(&u)?, &kb.s_inv.row(0));
                let kind = groups[0].kind;
                out.push(match coef {
                    Some(p) => Summand::scaled(p, e_a, kind, "peel"),
                    None => Summand::new(e_a, kind, "peel"),
                });
                groups.retain(|g| !matches!(g.amount, Amount::Count(0)));
                slots = allocate(&groups, s, strict);
                targets = slot_targets(&f, &groups, &slots)?;
            }
        }
    }
    let a1 = c.submatrix(0, s, 0, s);
    let (t, t_inv) = diagonal_similarity(&a1, &targets)?;
    let rest = Matrix::identity(f.clone(), n - s);
    let t_hat = t.direct_sum(&rest);
    let t_hat_inv = t_inv.direct_sum(&rest);
    let c2 = t_hat.matmul(&c)?.matmul(&t_hat_inv)?;
    let p = kb.s.matmul(&t_hat_inv)?;
    let p_inv = t_hat.matmul(&kb.s_inv)?;

    for (i, slot) in slots.iter().enumerate() {
        let x = c2.col(i);
        let mut x_off = x.clone();
        x_off[i] = f.zero();
        let row = p_inv.row(i);
        match mode {
            Mode::Sum => {
                let m: u64 = slot.iter().map(|(_, a)| capacity(a)).sum();
                let inv_m = f.inv(&f.from_i64(m as i64))?;
                for (j, part) in slot {
                    let Amount::Count(cnt) = part else { unreachable!() };
                    let gr = &groups[*j];
                    let mut u: Vec<F::Elem> = x_off.iter().map(|v| f.mul(v, &inv_m)).collect();
                    u[i] = gr.root.clone();
                    let e = Matrix::outer(f.clone(), &p.mul_vec(&u)?, &row);
                    for _ in 0..*cnt {
                        out.push(Summand::new(e.clone(), gr.kind, format!("column {i}")));
                    }
                }
            }
            Mode::LinearCombination => {
                let g_slot = f.from_i64(slot.len() as i64);
                for (j, part) in slot {
                    let q = amount_elem(&f, part)?;
                    let scale = f.inv(&f.mul(&q, &g_slot))?;
                    let gr = &groups[*j];
                    let mut u: Vec<F::Elem> = x_off.iter().map(|v| f.mul(v, &scale)).collect();
                    u[i] = gr.root.clone();
                    let e = Matrix::outer(f.clone(), &p.mul_vec(&u)?, &row);
                    out.push(Summand::scaled(q, e, gr.kind, format!("column {i}")));
                }
            }
        }
    }
    Ok(out)
}

fn check_trace<F: Field>(a: &Matrix<F>, value: &crate::scalars::CycloNum) -> Result<()> {
    let f = a.field();
    let v = f.from_cyclo(value)?;
    let t = a.trace()?;
    if !f.equal(&v, &t) {
        return Err(Error::InvalidCertificate(format!(
            "certificate evaluates to {} but the trace is {}",
            f.format(&v),
            f.format(&t)
        )));
    }
    Ok(())
}

fn single_root_groups<F: Field>(f: &F, cert: &TraceCertificate) -> Result<Vec<RootGroup<F>>> {
    let k = cert.k();
    cert.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(j, &c)| {
            let root = root_of(f, k, j as i64)?;
            let kind = super::potency_for(f, &root, k);
            Ok(RootGroup { root, kind, amount: Amount::Count(c) })
        })
        .collect()
}

/// Writes `A` as a sum of exactly `F(1)` matrices that are idempotent or
/// `(k+1)`-potent, driven by a certificate `tr A = F(ω)` with
/// `F(1) >= rank A`.
///
/// Without a certificate one is searched for; if the leading block turns
/// out scalar and the minimal certificate leaves nothing to peel, the
/// search is repeated once with the rank bound raised by one.
pub fn decompose_theorem1<F: Field>(
    a: &Matrix<F>,
    k: u32,
    cert: Option<&TraceCertificate>,
) -> Result<Decomposition<F>> {
    let f = a.field();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    root_of(f, k, 0)?;
    let rank = a.rank();
    let run = |c: &TraceCertificate| -> Result<Decomposition<F>> {
        let summands = column_engine(a, single_root_groups(f, c)?, Mode::Sum)?;
        let mut d = Decomposition::new(a.clone(), summands, Mode::Sum);
        d.certificate = Some(c.to_string());
        d.claimed_count = Some(c.f1());
        d.verified()
    };
    match cert {
        Some(c) => {
            if c.k() != k {
                return Err(Error::InvalidCertificate(format!("certificate has k = {}, expected {k}", c.k())));
            }
            check_trace(a, &c.evaluate())?;
            if c.f1() < rank as u64 {
                return Err(Error::InvalidCertificate(format!("F(1) = {} is below rank {rank}", c.f1())));
            }
            run(c)
        }
        None => {
            let t = exact_trace(a, k)?;
            let c = find_certificate(&t, rank, DEFAULT_BUDGET)?;
            match run(&c) {
                Err(Error::Infeasible(why)) => {
                    let c2 = find_certificate(&t, rank + 1, DEFAULT_BUDGET)
                        .map_err(|_| Error::Infeasible(why.clone()))?;
                    let mut d = run(&c2)?;
                    d.notes.push(format!("minimal certificate {c} was infeasible ({why}); used {c2}"));
                    Ok(d)
                }
                other => other,
            }
        }
    }
}

/// The trace as an element of `Q(ζ_k)`, which must be the backend's field.
pub(crate) fn exact_trace<F: Field>(a: &Matrix<F>, k: u32) -> Result<crate::scalars::CycloNum> {
    let f = a.field();
    if f.root_order() != k {
        return Err(Error::Unsupported(format!(
            "certificate search needs the backend root order ({}) to equal k = {k}",
            f.root_order()
        )));
    }
    let t = a.trace()?;
    f.to_cyclo(&t)
        .ok_or_else(|| Error::Unsupported(format!("{} backend has no exact trace; pass a certificate", f.name())))
}

/// Sum of `a₀ + Σ F_i(1)` matrices: idempotents for `a₀`, and
/// `(β_i+1)`-potent matrices for the terms of `F_i`.
pub fn decompose_theorem4<F: Field>(a: &Matrix<F>, cert: &MultiRootCertificate) -> Result<Decomposition<F>> {
    let f = a.field();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let l = cert.common_order();
    let value = cert.evaluate_in(l)?;
    check_trace(a, &value)?;
    let rank = a.rank();
    if let crate::trace::Verdict::Invalid(why) = crate::trace::verify_multiroot(cert, &value, rank) {
        return Err(Error::InvalidCertificate(why));
    }
    let mut groups = Vec::new();
    if cert.a0 > 0 {
        groups.push(RootGroup { root: f.one(), kind: SummandKind::Potent { exponent: 2 }, amount: Amount::Count(cert.a0) });
    }
    for band in &cert.roots {
        for (j, &c) in band.coeffs.iter().enumerate() {
            if c > 0 {
                let root = root_of(f, band.beta, j as i64)?;
                let kind = super::potency_for(f, &root, band.beta);
                groups.push(RootGroup { root, kind, amount: Amount::Count(c) });
            }
        }
    }
    let summands = column_engine(a, groups, Mode::Sum)?;
    let mut d = Decomposition::new(a.clone(), summands, Mode::Sum);
    d.certificate = Some(cert.to_string());
    d.claimed_count = Some(cert.f1());
    d.verified()
}

/// `A = Σ c_i·E_i` with one term per nonzero coefficient of a signed
/// certificate `tr A = a₀ + Σ F_i(ω_i)` with `|F| >= rank A`.
pub fn decompose_linear_combination<F: Field>(a: &Matrix<F>, cert: &SignedCertificate) -> Result<Decomposition<F>> {
    let f = a.field();
    if !a.is_square() {
        return Err(Error::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let l = cert.common_order();
    let value = cert.evaluate_in(l)?;
    check_trace(a, &value)?;
    let rank = a.rank();
    if let crate::trace::Verdict::Invalid(why) = cert.verify(&value, rank) {
        return Err(Error::InvalidCertificate(why));
    }
    let groups = cert
        .terms()
        .into_iter()
        .map(|t| {
            let root = root_of(f, t.beta, t.power as i64)?;
            let kind = super::potency_for(f, &root, t.beta);
            Ok(RootGroup { root, kind, amount: Amount::Coeff(t.coeff) })
        })
        .collect::<Result<Vec<_>>>()?;
    let count = groups.len() as u64;
    let summands = column_engine(a, groups, Mode::LinearCombination)?;
    let mut d = Decomposition::new(a.clone(), summands, Mode::LinearCombination);
    d.certificate = Some(cert.to_string());
    d.claimed_count = Some(count);
    d.verified()
}
