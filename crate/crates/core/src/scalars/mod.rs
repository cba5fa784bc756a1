//! Scalar backends: exact `Q(ζ_k)`, tolerance-based complex floats and,
//! behind the `prime-field` feature, `F_p` with `k | p - 1`.

mod cyclo;
mod float;
pub mod poly;
#[cfg(feature = "prime-field")]
mod prime;
mod text;

use std::fmt::Debug;
use std::sync::Arc;

use num_rational::BigRational;

pub use cyclo::{cyclotomic_polynomial, lcm_all, totient, CycloCtx, CycloNum};
pub use float::{ComplexField, FloatComplex, DEFAULT_EPS};
#[cfg(feature = "prime-field")]
pub use prime::PrimeField;

use crate::error::{Error, Result};

/// Terms `c·w^e` of a text polynomial, unreduced and in source order.
pub fn parse_power_terms(s: &str) -> Result<Vec<(BigRational, i64)>> {
    Ok(text::parse_terms(s)?.into_iter().map(|t| (t.coeff, t.power)).collect())
}

/// A field containing a distinguished primitive k-th root of unity ω.
///
/// Elements do not carry their field; every operation goes through the
/// backend handle so that float tolerance and root order are fixed per
/// backend instance.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + Send + Sync + 'static;

    /// Order k of the distinguished root ω.
    fn root_order(&self) -> u32;
    /// Whether equality and rank are exact.
    fn is_exact(&self) -> bool;
    fn name(&self) -> &'static str;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem>;
    /// Maps an element of `Q(ζ_m)` with `m | k`, sending ζ_m to ω^{k/m}.
    fn from_cyclo(&self, c: &CycloNum) -> Result<Self::Elem>;
    /// Exact cyclotomic value, when the backend can produce one.
    fn to_cyclo(&self, a: &Self::Elem) -> Option<CycloNum>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn equal(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn conj(&self, a: &Self::Elem) -> Self::Elem;
    /// ω^j; depends only on `j mod k`.
    fn omega_power(&self, j: i64) -> Self::Elem;

    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn omega(&self) -> Self::Elem {
        self.omega_power(1)
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Pivot preference in elimination. Exact backends only need "nonzero".
    fn magnitude(&self, a: &Self::Elem) -> f64 {
        if self.is_zero(a) {
            0.0
        } else {
            1.0
        }
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.equal(a, &self.one())
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The exact backend `Q(ζ_k)`.
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    ctx: Arc<CycloCtx>,
}

impl Cyclotomic {
    pub fn new(k: u32) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter("root order must be >= 1".into()));
        }
        Ok(Cyclotomic {
            ctx: CycloCtx::get(k),
        })
    }

    pub fn ctx(&self) -> &Arc<CycloCtx> {
        &self.ctx
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.k() == other.ctx.k()
    }
}

impl Field for Cyclotomic {
    type Elem = CycloNum;

    fn root_order(&self) -> u32 {
        self.ctx.k()
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn name(&self) -> &'static str {
        "exact"
    }
    fn zero(&self) -> CycloNum {
        CycloNum::zero(self.ctx.k())
    }
    fn one(&self) -> CycloNum {
        CycloNum::one(self.ctx.k())
    }
    fn from_i64(&self, n: i64) -> CycloNum {
        CycloNum::from_i64(self.ctx.k(), n)
    }
    fn from_rational(&self, q: &BigRational) -> Result<CycloNum> {
        Ok(CycloNum::from_rational(self.ctx.k(), q.clone()))
    }
    fn from_cyclo(&self, c: &CycloNum) -> Result<CycloNum> {
        if c.k() == self.ctx.k() {
            Ok(c.clone())
        } else {
            c.embed(self.ctx.k())
        }
    }
    fn to_cyclo(&self, a: &CycloNum) -> Option<CycloNum> {
        Some(a.clone())
    }
    fn add(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        a + b
    }
    fn sub(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        a - b
    }
    fn mul(&self, a: &CycloNum, b: &CycloNum) -> CycloNum {
        a * b
    }
    fn neg(&self, a: &CycloNum) -> CycloNum {
        -a
    }
    fn inv(&self, a: &CycloNum) -> Result<CycloNum> {
        a.inv()
    }
    fn is_zero(&self, a: &CycloNum) -> bool {
        a.is_zero()
    }
    fn equal(&self, a: &CycloNum, b: &CycloNum) -> bool {
        a == b
    }
    fn conj(&self, a: &CycloNum) -> CycloNum {
        a.conj()
    }
    fn omega_power(&self, j: i64) -> CycloNum {
        CycloNum::omega_power(self.ctx.k(), j)
    }
    fn format(&self, a: &CycloNum) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<CycloNum> {
        CycloNum::parse(self.ctx.k(), s)
    }
}
