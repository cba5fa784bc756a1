//! Trace certificates: polynomials `F` with `F(ω) = tr A` and `F(1) >= rank A`.

mod search;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalars::{lcm_all, CycloNum, Field};

pub use search::{find_certificate, DEFAULT_BUDGET};

fn ratio(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn format_poly<T: fmt::Display>(coeffs: impl IntoIterator<Item = (usize, T)>, var: &str) -> String {
    let terms: Vec<String> = coeffs
        .into_iter()
        .map(|(j, c)| {
            let c = c.to_string();
            let pw = match j {
                0 => return c,
                1 => var.to_string(),
                _ => format!("{var}^{j}"),
            };
            if c == "1" {
                pw
            } else {
                format!("{c}*{pw}")
            }
        })
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// `F(x) = Σ a_j x^j` with nonnegative integer `a_j`, `j < k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "CertJson", into = "CertJson")]
pub struct TraceCertificate {
    k: u32,
    coeffs: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct CertJson {
    k: u32,
    coeffs: Vec<u64>,
    #[serde(rename = "F1", default, skip_serializing_if = "Option::is_none")]
    f1: Option<u64>,
}

impl TryFrom<CertJson> for TraceCertificate {
    type Error = Error;
    fn try_from(j: CertJson) -> Result<Self> {
        let c = TraceCertificate::new(j.k, j.coeffs)?;
        match j.f1 {
            Some(f1) if f1 != c.f1() => Err(Error::InvalidCertificate(format!(
                "F1 = {f1} but coefficients sum to {}",
                c.f1()
            ))),
            _ => Ok(c),
        }
    }
}

impl From<TraceCertificate> for CertJson {
    fn from(c: TraceCertificate) -> Self {
        CertJson { k: c.k, f1: Some(c.f1()), coeffs: c.coeffs }
    }
}

impl TraceCertificate {
    /// Shorter coefficient vectors are padded with zeros up to length `k`.
    pub fn new(k: u32, mut coeffs: Vec<u64>) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter("root order must be >= 1".into()));
        }
        if coeffs.len() > k as usize {
            return Err(Error::InvalidCertificate(format!(
                "{} coefficients exceed degree k - 1 = {}",
                coeffs.len(),
                k - 1
            )));
        }
        coeffs.resize(k as usize, 0);
        Ok(TraceCertificate { k, coeffs })
    }

    pub fn zero(k: u32) -> Self {
        TraceCertificate { k, coeffs: vec![0; k as usize] }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `F(1)`: the number of summands in the construction.
    pub fn f1(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// `F(ω)` in `Q(ζ_k)`.
    pub fn evaluate(&self) -> CycloNum {
        let c: Vec<BigRational> = self.coeffs.iter().map(|&a| ratio(a)).collect();
        CycloNum::from_power_coeffs(self.k, &c)
    }

    /// Coefficient-wise sum; both certificates must share `k`.
    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k != other.k {
            return Err(Error::FieldMismatch(format!("k = {} vs k = {}", self.k, other.k)));
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TraceCertificate { k: self.k, coeffs })
    }

    /// Same roots viewed as a multi-root certificate with one band.
    pub fn to_multiroot(&self) -> MultiRootCertificate {
        let mut roots = Vec::new();
        if self.k >= 2 && self.coeffs[1..].iter().any(|&a| a > 0) {
            let mut c = self.coeffs.clone();
            c[0] = 0;
            roots.push(RootPoly { beta: self.k, coeffs: c });
        }
        MultiRootCertificate { a0: self.coeffs[0], roots }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for TraceCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nz = self.coeffs.iter().copied().enumerate().filter(|(_, a)| *a > 0);
        write!(f, "F(x) = {}", format_poly(nz, "x"))
    }
}

/// `F_i(x) = Σ_{j>=1} c_j x^j` evaluated at a primitive `β`-th root.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootPoly {
    pub beta: u32,
    pub coeffs: Vec<u64>,
}

/// `tr A = a₀ + Σ F_i(ω_i)` with distinct root orders `β_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiRootCertificate {
    pub a0: u64,
    pub roots: Vec<RootPoly>,
}

impl MultiRootCertificate {
    pub fn f1(&self) -> u64 {
        self.a0 + self.roots.iter().flat_map(|r| &r.coeffs).sum::<u64>()
    }

    /// Order of the smallest cyclotomic field holding every root.
    pub fn common_order(&self) -> u32 {
        lcm_all(self.roots.iter().map(|r| r.beta))
    }

    /// `a₀ + Σ F_i(ω_i)` in `Q(ζ_l)`; `l` must be a multiple of every `β_i`.
    pub fn evaluate_in(&self, l: u32) -> Result<CycloNum> {
        let mut acc = CycloNum::from_rational(l, ratio(self.a0));
        for r in &self.roots {
            if r.beta == 0 || !l.is_multiple_of(r.beta) {
                return Err(Error::FieldMismatch(format!("root order {} does not divide {l}", r.beta)));
            }
            let step = (l / r.beta) as i64;
            for (j, &c) in r.coeffs.iter().enumerate() {
                if c > 0 {
                    let term = CycloNum::omega_power(l, j as i64 * step).scale(&ratio(c));
                    acc = &acc + &term;
                }
            }
        }
        Ok(acc)
    }

    fn structural_problem(&self) -> Option<String> {
        let mut seen = BTreeSet::new();
        for r in &self.roots {
            if !seen.insert(r.beta) {
                return Some(format!("duplicate root order {}", r.beta));
            }
            if r.beta < 2 {
                return Some(format!("root order {} must be >= 2", r.beta));
            }
            if r.coeffs.len() > r.beta as usize {
                return Some(format!("degree of F for root order {} exceeds {}", r.beta, r.beta - 1));
            }
            if r.coeffs.first().is_some_and(|&c| c != 0) {
                return Some(format!("F for root order {} has a constant term", r.beta));
            }
            if r.coeffs.iter().all(|&c| c == 0) {
                return Some(format!("F for root order {} has degree < 1", r.beta));
            }
        }
        None
    }

    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Out<'a> {
            a0: u64,
            roots: &'a [RootPoly],
            #[serde(rename = "F1")]
            f1: u64,
        }
        serde_json::to_string(&Out { a0: self.a0, roots: &self.roots, f1: self.f1() }).expect("serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl fmt::Display for MultiRootCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.a0)?;
        for r in &self.roots {
            let nz = r.coeffs.iter().copied().enumerate().filter(|(_, a)| *a > 0);
            write!(f, " + [{}]", format_poly(nz, &format!("w{}", r.beta)))?;
        }
        Ok(())
    }
}

/// Outcome of certificate verification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Invalid(String),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn traces_agree(value: &CycloNum, t: &CycloNum, l: u32) -> Result<bool> {
    let m = lcm_all([l, t.k()]);
    Ok(value.embed(m)? == t.embed(m)?)
}

/// Checks distinct root orders, degree bounds, trace equality in a common
/// cyclotomic field and `F(1) >= r`.
pub fn verify_multiroot(cert: &MultiRootCertificate, t: &CycloNum, r: usize) -> Verdict {
    if let Some(why) = cert.structural_problem() {
        return Verdict::Invalid(why);
    }
    let l = cert.common_order();
    let value = match cert.evaluate_in(l) {
        Ok(v) => v,
        Err(e) => return Verdict::Invalid(e.to_string()),
    };
    match traces_agree(&value, t, l) {
        Ok(true) => {}
        Ok(false) => return Verdict::Invalid(format!("trace mismatch: certificate gives {value}, trace is {t}")),
        Err(e) => return Verdict::Invalid(e.to_string()),
    }
    if (cert.f1() as usize) < r {
        return Verdict::Invalid(format!("rank bound: F(1) = {} < rank {r}", cert.f1()));
    }
    Verdict::Valid
}

/// Signed rational coefficients for linear combinations:
/// `tr A = a₀ + Σ F_i(ω_i)` with `|F| = Σ|c| >= rank A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedCertificate {
    pub a0: BigRational,
    pub roots: Vec<SignedRoot>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedRoot {
    pub beta: u32,
    pub coeffs: Vec<BigRational>,
}

/// One nonzero term `c·ζ_β^power` of a signed certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedTerm {
    pub beta: u32,
    pub power: u32,
    pub coeff: BigRational,
}

impl SignedCertificate {
    /// Single root order `k` with coefficients of `1, ω, …, ω^{k-1}`.
    pub fn single(k: u32, coeffs: &[BigRational]) -> Result<Self> {
        if k < 2 || coeffs.len() > k as usize {
            return Err(Error::InvalidCertificate(format!("{} coefficients for k = {k}", coeffs.len())));
        }
        let a0 = coeffs.first().cloned().unwrap_or_else(BigRational::zero);
        let mut c = vec![BigRational::zero(); k as usize];
        for (j, x) in coeffs.iter().enumerate().skip(1) {
            c[j] = x.clone();
        }
        let roots = if c.iter().all(Zero::is_zero) { vec![] } else { vec![SignedRoot { beta: k, coeffs: c }] };
        Ok(SignedCertificate { a0, roots })
    }

    /// Parses a text polynomial such as `4 - 9/2*w + 25/4*w^2`.
    pub fn parse_single(k: u32, s: &str) -> Result<Self> {
        let mut c = vec![BigRational::zero(); k as usize];
        for (q, j) in crate::scalars::parse_power_terms(s)? {
            if j < 0 || j >= k as i64 {
                return Err(Error::InvalidCertificate(format!("power {j} outside 0..{k}")));
            }
            c[j as usize] += q;
        }
        SignedCertificate::single(k, &c)
    }

    /// Nonzero terms in order: the constant first, then by band and power.
    pub fn terms(&self) -> Vec<SignedTerm> {
        let mut out = Vec::new();
        if !self.a0.is_zero() {
            out.push(SignedTerm { beta: 1, power: 0, coeff: self.a0.clone() });
        }
        for r in &self.roots {
            for (j, c) in r.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    out.push(SignedTerm { beta: r.beta, power: j as u32, coeff: c.clone() });
                }
            }
        }
        out
    }

    /// `|F| = Σ |c|`.
    pub fn modulus(&self) -> BigRational {
        self.terms().iter().map(|t| t.coeff.abs()).sum()
    }

    /// `Min(F) = min |c|` over the stored nonzero coefficients.
    pub fn min_abs(&self) -> Option<BigRational> {
        self.terms().iter().map(|t| t.coeff.abs()).min()
    }

    pub fn common_order(&self) -> u32 {
        lcm_all(self.roots.iter().map(|r| r.beta))
    }

    pub fn evaluate_in(&self, l: u32) -> Result<CycloNum> {
        let mut acc = CycloNum::zero(l);
        for t in self.terms() {
            if !l.is_multiple_of(t.beta) {
                return Err(Error::FieldMismatch(format!("root order {} does not divide {l}", t.beta)));
            }
            let root = CycloNum::omega_power(l, (t.power * (l / t.beta)) as i64);
            acc = &acc + &root.scale(&t.coeff);
        }
        Ok(acc)
    }

    pub fn verify(&self, t: &CycloNum, r: usize) -> Verdict {
        let mut seen = BTreeSet::new();
        for root in &self.roots {
            if !seen.insert(root.beta) {
                return Verdict::Invalid(format!("duplicate root order {}", root.beta));
            }
            if root.beta < 2 || root.coeffs.len() > root.beta as usize {
                return Verdict::Invalid(format!("bad degree for root order {}", root.beta));
            }
            if root.coeffs.first().is_some_and(|c| !c.is_zero()) {
                return Verdict::Invalid(format!("F for root order {} has a constant term", root.beta));
            }
        }
        let l = self.common_order();
        let value = match self.evaluate_in(l) {
            Ok(v) => v,
            Err(e) => return Verdict::Invalid(e.to_string()),
        };
        match traces_agree(&value, t, l) {
            Ok(true) => {}
            Ok(false) => return Verdict::Invalid(format!("trace mismatch: certificate gives {value}, trace is {t}")),
            Err(e) => return Verdict::Invalid(e.to_string()),
        }
        if self.modulus() < ratio(r as u64) {
            return Verdict::Invalid(format!("rank bound: |F| = {} < rank {r}", self.modulus()));
        }
        Verdict::Valid
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "a0": self.a0.to_string(),
            "roots": self.roots.iter().map(|r| serde_json::json!({
                "beta": r.beta,
                "coeffs": r.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
            "modulus": self.modulus().to_string(),
        })
    }
}

impl fmt::Display for SignedCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms()
            .iter()
            .map(|t| match (t.beta, t.power) {
                (1, _) | (_, 0) => format!("({})", t.coeff),
                (b, 1) => format!("({})*w{b}", t.coeff),
                (b, p) => format!("({})*w{b}^{p}", t.coeff),
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Eigenvalue multiplicities of a `(k+1)`-potent matrix: `a_j` is the
/// dimension of the `ω^j`-eigenspace.
pub fn extract_certificate_from_potent<F: Field>(e: &Matrix<F>, k: u32) -> Result<TraceCertificate> {
    if !e.is_kpotent(k as u64 + 1)? {
        return Err(Error::NotPotent { exponent: k + 1 });
    }
    let f = e.field();
    if !f.root_order().is_multiple_of(k) {
        return Err(Error::FieldMismatch(format!(
            "backend root order {} is not a multiple of {k}",
            f.root_order()
        )));
    }
    let step = (f.root_order() / k) as i64;
    let n = e.rows();
    let coeffs = (0..k as i64)
        .map(|j| {
            let shifted = e.add_scalar(&f.neg(&f.omega_power(j * step)))?;
            Ok((n - shifted.rank()) as u64)
        })
        .collect::<Result<Vec<_>>>()?;
    TraceCertificate::new(k, coeffs)
}
