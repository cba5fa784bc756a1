//! Dense univariate polynomials, coefficients stored lowest degree first.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Strips trailing zero coefficients in place.
pub(crate) fn trim<T: Zero>(p: &mut Vec<T>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree<T: Zero>(p: &[T]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

/// Exact division of integer polynomials by a monic divisor.
///
/// Returns `(quotient, remainder)`.
pub fn divmod_monic(num: &[BigInt], den: &[BigInt]) -> (Vec<BigInt>, Vec<BigInt>) {
    let dd = degree(den).expect("divisor must be nonzero");
    assert!(den[dd].is_one(), "divisor must be monic");
    let mut rem: Vec<BigInt> = num.to_vec();
    trim(&mut rem);
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (dd..rem.len()).rev() {
        let c = rem[i].clone();
        if c.is_zero() {
            continue;
        }
        quot[i - dd] = c.clone();
        for (j, d) in den.iter().enumerate().take(dd + 1) {
            rem[i - dd + j] -= &c * d;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Polynomials over Q, used by the extended Euclidean inversion.
pub(crate) mod rational {
    use super::*;

    pub(crate) type QPoly = Vec<BigRational>;

    pub(crate) fn sub(a: &[BigRational], b: &[BigRational]) -> QPoly {
        let n = a.len().max(b.len());
        let mut out: QPoly = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                match b.get(i) {
                    Some(y) => x - y,
                    None => x,
                }
            })
            .collect();
        trim(&mut out);
        out
    }

    pub(crate) fn mul(a: &[BigRational], b: &[BigRational]) -> QPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    pub(crate) fn divmod(num: &[BigRational], den: &[BigRational]) -> (QPoly, QPoly) {
        let dd = degree(den).expect("divisor must be nonzero");
        let lead = den[dd].clone();
        let mut rem: QPoly = num.to_vec();
        trim(&mut rem);
        if rem.len() <= dd {
            return (Vec::new(), rem);
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] / &lead;
            for (j, d) in den.iter().enumerate().take(dd + 1) {
                let delta = &c * d;
                rem[i - dd + j] -= delta;
            }
            quot[i - dd] = c;
        }
        trim(&mut rem);
        trim(&mut quot);
        (quot, rem)
    }

    /// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
    pub(crate) fn inverse_mod(a: &[BigRational], m: &[BigRational]) -> Option<QPoly> {
        // Invariant: s_i * a ≡ r_i (mod m).
        let (mut r0, mut r1) = (m.to_vec(), a.to_vec());
        trim(&mut r1);
        let (mut s0, mut s1): (QPoly, QPoly) = (Vec::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = divmod(&r0, &r1);
            let s = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        let inv: QPoly = s0.iter().map(|x| x / &c).collect();
        let (_, out) = divmod(&inv, m);
        Some(out)
    }
}

/// Formats an integer polynomial in `x`, highest degree first.
pub fn format_int_poly(p: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
