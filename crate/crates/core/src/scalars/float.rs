//! Approximate complex backend. Equality is `|a - b| <= ε·max(1, |a|, |b|)`.

use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::text::{parse_units, Unit};
use super::{CycloNum, Field};
use crate::error::{Error, Result};

pub const DEFAULT_EPS: f64 = 1e-9;

#[derive(Clone, Copy, PartialEq)]
pub struct FloatComplex(pub Complex64);

impl fmt::Debug for FloatComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_complex(self.0))
    }
}

fn format_complex(z: Complex64) -> String {
    let re = if z.re == 0.0 { 0.0 } else { z.re };
    if z.im == 0.0 {
        return format!("{re:?}");
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{re:?} {sign} {:?}*i", z.im.abs())
}

/// Complex floats with ω = exp(2πi/k) and a fixed tolerance ε.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexField {
    k: u32,
    eps: f64,
}

impl ComplexField {
    pub fn new(k: u32, eps: f64) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidParameter("root order must be >= 1".into()));
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidParameter(format!("tolerance must be positive, got {eps}")));
        }
        Ok(ComplexField { k, eps })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }
}

impl Field for ComplexField {
    type Elem = FloatComplex;

    fn root_order(&self) -> u32 {
        self.k
    }
    fn is_exact(&self) -> bool {
        false
    }
    fn name(&self) -> &'static str {
        "float"
    }
    fn zero(&self) -> FloatComplex {
        FloatComplex(Complex64::zero())
    }
    fn one(&self) -> FloatComplex {
        FloatComplex(Complex64::new(1.0, 0.0))
    }
    fn from_i64(&self, n: i64) -> FloatComplex {
        FloatComplex(Complex64::new(n as f64, 0.0))
    }
    fn from_rational(&self, q: &BigRational) -> Result<FloatComplex> {
        Ok(FloatComplex(Complex64::new(q.to_f64().unwrap_or(f64::NAN), 0.0)))
    }
    fn from_cyclo(&self, c: &CycloNum) -> Result<FloatComplex> {
        if !self.k.is_multiple_of(c.k()) {
            return Err(Error::FieldMismatch(format!(
                "Q(zeta_{}) does not embed with root order {}",
                c.k(),
                self.k
            )));
        }
        Ok(FloatComplex(c.to_complex()))
    }
    fn to_cyclo(&self, _a: &FloatComplex) -> Option<CycloNum> {
        None
    }
    fn add(&self, a: &FloatComplex, b: &FloatComplex) -> FloatComplex {
        FloatComplex(a.0 + b.0)
    }
    fn sub(&self, a: &FloatComplex, b: &FloatComplex) -> FloatComplex {
        FloatComplex(a.0 - b.0)
    }
    fn mul(&self, a: &FloatComplex, b: &FloatComplex) -> FloatComplex {
        FloatComplex(a.0 * b.0)
    }
    fn neg(&self, a: &FloatComplex) -> FloatComplex {
        FloatComplex(-a.0)
    }
    fn inv(&self, a: &FloatComplex) -> Result<FloatComplex> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(FloatComplex(a.0.inv()))
    }
    fn is_zero(&self, a: &FloatComplex) -> bool {
        a.0.norm() <= self.eps
    }
    fn magnitude(&self, a: &FloatComplex) -> f64 {
        a.0.norm()
    }
    fn equal(&self, a: &FloatComplex, b: &FloatComplex) -> bool {
        let scale = 1f64.max(a.0.norm()).max(b.0.norm());
        (a.0 - b.0).norm() <= self.eps * scale
    }
    fn conj(&self, a: &FloatComplex) -> FloatComplex {
        FloatComplex(a.0.conj())
    }
    fn omega_power(&self, j: i64) -> FloatComplex {
        let j = j.rem_euclid(self.k as i64);
        let theta = 2.0 * std::f64::consts::PI * j as f64 / self.k as f64;
        FloatComplex(Complex64::from_polar(1.0, theta))
    }
    fn format(&self, a: &FloatComplex) -> String {
        format_complex(a.0)
    }

    /// Accepts the cyclotomic syntax (evaluated numerically) and `a + b*i`.
    fn parse(&self, s: &str) -> Result<FloatComplex> {
        let mut z = Complex64::zero();
        for (c, unit) in parse_units(s, true)? {
            let c = c.to_f64().unwrap_or(f64::NAN);
            z += match unit {
                Unit::Root(j) => c * self.omega_power(j).0,
                Unit::Imag => Complex64::new(0.0, c),
            };
        }
        Ok(FloatComplex(z))
    }
}
