//! Text syntax for scalars: `c0 + c1*w + c2*w^2 + …`.
//!
//! Coefficients are integers, `p/q` rationals or decimals (read exactly).
//! The float backend additionally accepts the imaginary unit `i`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Unit {
    /// `w^e`; `e = 0` is a plain rational term.
    Root(i64),
    Imag,
}

#[derive(Debug, Clone)]
pub(crate) struct Term {
    pub coeff: BigRational,
    pub power: i64,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!(
            "{what} at byte {} in {:?}",
            self.pos,
            String::from_utf8_lossy(self.src)
        ))
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    /// `digits [. digits] [e [+-] digits] [/ digits]`, read exactly.
    fn number(&mut self) -> Result<BigRational> {
        self.skip_ws();
        let int_part = self.digits().unwrap_or("");
        let mut frac_part = "";
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            frac_part = self.digits().unwrap_or("");
        }
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(self.err("expected a number"));
        }
        let mantissa: BigInt = format!("{int_part}{frac_part}")
            .parse()
            .map_err(|_| self.err("bad number"))?;
        let mut exp: i64 = -(frac_part.len() as i64);
        if matches!(self.src.get(self.pos), Some(b'e') | Some(b'E')) {
            self.pos += 1;
            let neg = match self.src.get(self.pos) {
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                _ => false,
            };
            let e: i64 = self
                .digits()
                .ok_or_else(|| self.err("expected exponent digits"))?
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            exp += if neg { -e } else { e };
        }
        let ten = BigInt::from(10);
        let mut value = BigRational::from_integer(mantissa);
        if exp > 0 {
            value *= BigRational::from_integer(num_traits::pow(ten, exp as usize));
        } else if exp < 0 {
            value /= BigRational::from_integer(num_traits::pow(ten, (-exp) as usize));
        }
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den: BigInt = self
                .digits()
                .ok_or_else(|| self.err("expected denominator"))?
                .parse()
                .map_err(|_| self.err("bad denominator"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            value /= BigRational::from_integer(den);
        }
        Ok(value)
    }

    fn unit(&mut self, allow_imag: bool) -> Result<Option<Unit>> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some(b'-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    self.skip_ws();
                    let e: i64 = self
                        .digits()
                        .ok_or_else(|| self.err("expected exponent"))?
                        .parse()
                        .map_err(|_| self.err("exponent too large"))?;
                    Ok(Some(Unit::Root(if neg { -e } else { e })))
                } else {
                    Ok(Some(Unit::Root(1)))
                }
            }
            Some(b'i') if allow_imag => {
                self.pos += 1;
                Ok(Some(Unit::Imag))
            }
            _ => Ok(None),
        }
    }
}

/// Parses into `(coefficient, unit)` pairs.
pub(crate) fn parse_units(s: &str, allow_imag: bool) -> Result<Vec<(BigRational, Unit)>> {
    let mut lx = Lexer {
        src: s.as_bytes(),
        pos: 0,
    };
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let mut sign = BigRational::one();
        match lx.peek() {
            None if first => return Err(lx.err("empty scalar")),
            None => break,
            Some(b'+') => {
                lx.bump();
            }
            Some(b'-') => {
                lx.bump();
                sign = -sign;
            }
            Some(_) if first => {}
            Some(_) => return Err(lx.err("expected '+' or '-'")),
        }
        first = false;
        let (coeff, had_number) = match lx.peek() {
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let c = lx.number()?;
                if lx.peek() == Some(b'*') {
                    lx.bump();
                    if lx.peek().is_none() {
                        return Err(lx.err("dangling '*'"));
                    }
                }
                (c, true)
            }
            _ => (BigRational::one(), false),
        };
        let unit = match lx.unit(allow_imag)? {
            Some(u) => u,
            None if had_number => Unit::Root(0),
            None => return Err(lx.err("expected a coefficient or 'w'")),
        };
        // Trailing `*coeff` after a unit, e.g. `w*3`.
        let coeff = if lx.peek() == Some(b'*') {
            lx.bump();
            coeff * lx.number()?
        } else {
            coeff
        };
        out.push((sign * coeff, unit));
    }
    Ok(out)
}

pub(crate) fn parse_terms(s: &str) -> Result<Vec<Term>> {
    parse_units(s, false)?
        .into_iter()
        .map(|(coeff, unit)| match unit {
            Unit::Root(power) => Ok(Term { coeff, power }),
            Unit::Imag => Err(Error::Parse("imaginary unit not allowed".into())),
        })
        .collect()
}

/// Canonical rendering of `Σ c_j w^j` for the given nonzero terms.
pub(crate) fn format_terms(terms: &[(BigRational, i64)]) -> String {
    let mut out = String::new();
    for (c, j) in terms {
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let unit = match j {
            0 => String::new(),
            1 => "w".to_string(),
            _ => format!("w^{j}"),
        };
        if unit.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag.is_one() {
            out.push_str(&unit);
        } else {
            out.push_str(&format!("{mag}*{unit}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parses_mixed_terms() {
        let t = parse_terms(" 4 - 9/2*w + 25/4 * w^2 ").unwrap();
        let got: Vec<_> = t.iter().map(|t| (t.coeff.clone(), t.power)).collect();
        assert_eq!(got, vec![(q(4, 1), 0), (q(-9, 2), 1), (q(25, 4), 2)]);
    }

    #[test]
    fn parses_bare_units_and_decimals() {
        let t = parse_terms("-w^3 + w + 0.25 + 1e1").unwrap();
        let got: Vec<_> = t.iter().map(|t| (t.coeff.clone(), t.power)).collect();
        assert_eq!(got, vec![(q(-1, 1), 3), (q(1, 1), 1), (q(1, 4), 0), (q(10, 1), 0)]);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_terms("").is_err());
        assert!(parse_terms("3 +").is_err());
        assert!(parse_terms("x").is_err());
        assert!(parse_terms("1/0").is_err());
        assert!(parse_terms("2 3").is_err());
        assert!(parse_terms("i").is_err());
    }

    #[test]
    fn formats_canonically() {
        let s = format_terms(&[(q(4, 1), 0), (q(-9, 2), 1), (q(1, 1), 2)]);
        assert_eq!(s, "4 - 9/2*w + w^2");
        assert_eq!(format_terms(&[]), "0");
        assert_eq!(format_terms(&[(q(-1, 1), 1)]), "-w");
    }
}
