//! Exact arithmetic in the cyclotomic field `Q(ζ_k) = Q[x]/Φ_k(x)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use parking_lot::RwLock;

use super::poly::{self, divmod_monic, mul_int};
use super::text::{self, Term};
use crate::error::{Error, Result};

/// Euler's totient.
pub fn totient(k: u32) -> u32 {
    let mut n = k;
    let mut out = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// The k-th cyclotomic polynomial, lowest degree first.
///
/// Computed by the recursive quotient `(x^k - 1) / ∏_{d | k, d < k} Φ_d(x)`.
pub fn cyclotomic_polynomial(k: u32) -> Vec<BigInt> {
    assert!(k >= 1, "cyclotomic polynomial needs k >= 1");
    static CACHE: OnceLock<RwLock<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().get(&k) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); k as usize + 1];
    num[0] = -BigInt::one();
    num[k as usize] = BigInt::one();
    let mut den = vec![BigInt::one()];
    for d in 1..k {
        if k.is_multiple_of(d) {
            den = mul_int(&den, &cyclotomic_polynomial(d));
        }
    }
    let (q, r) = divmod_monic(&num, &den);
    debug_assert!(r.is_empty(), "cyclotomic division must be exact");
    cache.write().insert(k, q.clone());
    q
}

/// Shared per-field data: Φ_k and the reductions of `x^j` for `0 <= j < 2k`.
#[derive(Debug)]
pub struct CycloCtx {
    k: u32,
    deg: usize,
    phi: Vec<BigInt>,
    powers: Vec<Vec<BigInt>>,
}

impl CycloCtx {
    /// Shared context for `Q(ζ_k)`; cached per `k`.
    pub fn get(k: u32) -> Arc<CycloCtx> {
        assert!(k >= 1, "root order must be at least 1");
        static CTX: OnceLock<RwLock<HashMap<u32, Arc<CycloCtx>>>> = OnceLock::new();
        let map = CTX.get_or_init(Default::default);
        if let Some(c) = map.read().get(&k) {
            return c.clone();
        }
        let phi = cyclotomic_polynomial(k);
        let deg = phi.len() - 1;
        let powers = (0..2 * k as usize)
            .map(|j| {
                let mut mono = vec![BigInt::zero(); j + 1];
                mono[j] = BigInt::one();
                let (_, mut r) = divmod_monic(&mono, &phi);
                r.resize(deg, BigInt::zero());
                r
            })
            .collect();
        let ctx = Arc::new(CycloCtx { k, deg, phi, powers });
        map.write().entry(k).or_insert(ctx).clone()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Dimension φ(k) of the field over Q.
    pub fn degree(&self) -> usize {
        self.deg
    }

    pub fn phi(&self) -> &[BigInt] {
        &self.phi
    }

    /// Canonical coordinates of `ζ^j` for `0 <= j < k`.
    pub fn power_coords(&self, j: usize) -> &[BigInt] {
        &self.powers[j]
    }
}

/// An element of `Q(ζ_k)` in the power basis `1, ζ, …, ζ^{φ(k)-1}`.
#[derive(Clone)]
pub struct CycloNum {
    ctx: Arc<CycloCtx>,
    coeffs: Vec<BigRational>,
}

impl CycloNum {
    pub fn zero(k: u32) -> Self {
        let ctx = CycloCtx::get(k);
        let coeffs = vec![BigRational::zero(); ctx.deg];
        CycloNum { ctx, coeffs }
    }

    pub fn one(k: u32) -> Self {
        Self::from_rational(k, BigRational::one())
    }

    pub fn from_i64(k: u32, n: i64) -> Self {
        Self::from_rational(k, BigRational::from_integer(n.into()))
    }

    pub fn from_rational(k: u32, q: BigRational) -> Self {
        let mut out = Self::zero(k);
        out.coeffs[0] = q;
        out
    }

    /// Builds an element from any coefficient vector in the redundant basis
    /// `1, ζ, ζ^2, …`, reducing modulo Φ_k.
    pub fn from_power_coeffs(k: u32, coeffs: &[BigRational]) -> Self {
        let mut out = Self::zero(k);
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(j as i64, c);
            }
        }
        out
    }

    /// Canonical coordinates; must have length φ(k).
    pub fn from_canonical(k: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        let ctx = CycloCtx::get(k);
        if coeffs.len() != ctx.deg {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates for Q(zeta_{k}), got {}",
                ctx.deg,
                coeffs.len()
            )));
        }
        Ok(CycloNum { ctx, coeffs })
    }

    /// `ζ^j`, reduced; `j` may be negative.
    pub fn omega_power(k: u32, j: i64) -> Self {
        let mut out = Self::zero(k);
        out.add_scaled_power(j, &BigRational::one());
        out
    }

    fn add_scaled_power(&mut self, j: i64, c: &BigRational) {
        let k = self.ctx.k as i64;
        let j = j.rem_euclid(k) as usize;
        for (dst, p) in self.coeffs.iter_mut().zip(&self.ctx.powers[j]) {
            if !p.is_zero() {
                *dst += c * BigRational::from_integer(p.clone());
            }
        }
    }

    pub fn k(&self) -> u32 {
        self.ctx.k
    }

    pub fn ctx(&self) -> &Arc<CycloCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// Returns the rational value if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coeffs[0])
    }

    /// Canonical coordinates as integers, if they all are.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    fn check_same(&self, other: &Self) {
        assert!(
            self.ctx.k == other.ctx.k,
            "mixing Q(zeta_{}) and Q(zeta_{})",
            self.ctx.k,
            other.ctx.k
        );
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CycloNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse by extended Euclid against Φ_k.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.k(), q.recip()));
        }
        let modulus: Vec<BigRational> = self
            .ctx
            .phi
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = poly::rational::inverse_mod(&self.coeffs, &modulus)
            .expect("Φ_k is irreducible, so every nonzero element is invertible");
        let mut coeffs = inv;
        coeffs.resize(self.ctx.deg, BigRational::zero());
        Ok(CycloNum {
            ctx: self.ctx.clone(),
            coeffs,
        })
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.k());
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(-(j as i64), c);
            }
        }
        out
    }

    /// Image under `ζ_k ↦ ζ_L^{L/k}`; requires `k | L`.
    pub fn embed(&self, l: u32) -> Result<Self> {
        let k = self.k();
        if !l.is_multiple_of(k) {
            return Err(Error::FieldMismatch(format!(
                "cannot embed Q(zeta_{k}) into Q(zeta_{l})"
            )));
        }
        let step = (l / k) as i64;
        let mut out = Self::zero(l);
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled_power(j as i64 * step, c);
            }
        }
        Ok(out)
    }

    /// Numerical value with `ζ = exp(2πi/k)`.
    pub fn to_complex(&self) -> Complex64 {
        let k = self.k() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / k;
                Complex64::from_polar(c.to_f64().unwrap_or(f64::NAN), theta)
            })
            .sum()
    }

    /// Parses the text syntax `c0 + c1*w + c2*w^2 + …`.
    pub fn parse(k: u32, s: &str) -> Result<Self> {
        let terms = text::parse_terms(s)?;
        let mut out = Self::zero(k);
        for Term { coeff, power } in terms {
            out.add_scaled_power(power, &coeff);
        }
        Ok(out)
    }
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.k == other.ctx.k && self.coeffs == other.coeffs
    }
}

impl Eq for CycloNum {}

impl std::hash::Hash for CycloNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ctx.k.hash(state);
        self.coeffs.hash(state);
    }
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigRational, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| (c.clone(), j as i64))
            .collect();
        f.write_str(&text::format_terms(&terms))
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [k={}]", self, self.ctx.k)
    }
}

impl<'a> Add<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn add(self, rhs: &CycloNum) -> CycloNum {
        self.check_same(rhs);
        CycloNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<'a> Sub<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn sub(self, rhs: &CycloNum) -> CycloNum {
        self.check_same(rhs);
        CycloNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<'a> Mul<&'a CycloNum> for &'a CycloNum {
    type Output = CycloNum;
    fn mul(self, rhs: &CycloNum) -> CycloNum {
        self.check_same(rhs);
        let ctx = &self.ctx;
        let d = ctx.deg;
        if let Some(q) = self.as_rational() {
            return rhs.scale(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale(q);
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut coeffs: Vec<BigRational> = prod[..d].to_vec();
        for (e, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (dst, p) in coeffs.iter_mut().zip(&ctx.powers[e]) {
                if !p.is_zero() {
                    *dst += c * BigRational::from_integer(p.clone());
                }
            }
        }
        CycloNum {
            ctx: ctx.clone(),
            coeffs,
        }
    }
}

impl Neg for &CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        CycloNum {
            ctx: self.ctx.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for CycloNum {
            type Output = CycloNum;
            fn $m(self, rhs: CycloNum) -> CycloNum {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycloNum {
    type Output = CycloNum;
    fn neg(self) -> CycloNum {
        -&self
    }
}

/// Least common multiple of root orders, used to find a common field.
pub fn lcm_all(orders: impl IntoIterator<Item = u32>) -> u32 {
    orders.into_iter().fold(1u32, |acc, b| acc.lcm(&b))
}
