//! `F_p` with a primitive k-th root of unity, for `k | p - 1` and `p > 3`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::text::parse_terms;
use super::{CycloNum, Field};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct PrimeField {
    p: u64,
    k: u32,
    omega: u64,
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl PrimeField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) || p <= 3 {
            return Err(Error::InvalidParameter(format!("p = {p} must be a prime > 3")));
        }
        if k < 1 || (p - 1) % k as u64 != 0 {
            return Err(Error::InvalidParameter(format!("k = {k} must divide p - 1 = {}", p - 1)));
        }
        let factors = prime_factors(k as u64);
        let omega = (2..p)
            .map(|g| pow_mod(g, (p - 1) / k as u64, p))
            .find(|&h| factors.iter().all(|q| pow_mod(h, k as u64 / q, p) != 1))
            .expect("F_p^* is cyclic, so an element of order k exists");
        Ok(PrimeField { p, k, omega })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn reduce_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn root_order(&self) -> u32 {
        self.k
    }
    fn is_exact(&self) -> bool {
        true
    }
    fn name(&self) -> &'static str {
        "prime"
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64> {
        let den = self.reduce_int(q.denom());
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(mul_mod(self.reduce_int(q.numer()), self.inv(&den)?, self.p))
    }
    fn from_cyclo(&self, c: &CycloNum) -> Result<u64> {
        if self.k % c.k() != 0 {
            return Err(Error::FieldMismatch(format!(
                "Q(zeta_{}) does not map into F_{} with root order {}",
                c.k(),
                self.p,
                self.k
            )));
        }
        let step = (self.k / c.k()) as i64;
        let mut acc = 0;
        for (j, q) in c.coeffs().iter().enumerate() {
            if !q.is_zero() {
                let term = mul_mod(self.from_rational(q)?, self.omega_power(j as i64 * step), self.p);
                acc = (acc + term) % self.p;
            }
        }
        Ok(acc)
    }
    fn to_cyclo(&self, _a: &u64) -> Option<CycloNum> {
        None
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn inv(&self, a: &u64) -> Result<u64> {
        if *a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(pow_mod(*a, self.p - 2, self.p))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn equal(&self, a: &u64, b: &u64) -> bool {
        a == b
    }
    fn conj(&self, a: &u64) -> u64 {
        *a
    }
    fn omega_power(&self, j: i64) -> u64 {
        pow_mod(self.omega, j.rem_euclid(self.k as i64) as u64, self.p)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let mut acc = 0;
        for t in parse_terms(s)? {
            let c = self.from_rational(&t.coeff)?;
            acc = self.add(&acc, &mul_mod(c, self.omega_power(t.power), self.p));
        }
        Ok(acc)
    }
}
