//! Exact rational scalars and the model parameter set.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Arbitrary-precision rational in canonical form (coprime, positive denominator).
pub type Rational = num_rational::BigRational;

/// `n/d` as a [`Rational`]. Panics on `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn from_usize(n: usize) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Serializes as `"num/den"`, including integers (`"7/1"`).
pub fn to_exact_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// True if `r` is an integer `<= 0`.
pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// `r` as an `i64` when it is an integer that fits.
pub fn as_integer(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

/// Representative of `r` modulo 2, in `[0, 2)`.
pub fn mod_two(r: &Rational) -> Rational {
    let two = int(2);
    let q = (r / &two).floor();
    r - q * two
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p/q"`, `"p"`, or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let bad = || ParseRationalError::Invalid(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.to_string()));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = whole.trim_start().starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let w = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(whole_digits).map_err(|_| bad())?
        };
        let f = BigInt::from_str(frac).map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let mut value = Rational::new(w * &scale + f, scale);
        if negative {
            value = -value;
        }
        return Ok(value);
    }
    BigInt::from_str(s)
        .map(Rational::from_integer)
        .map_err(|_| bad())
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamsError {
    #[error("k must be a positive rational p/q (got {0})")]
    BadK(String),
    #[error("alpha must exceed -1 (got {0})")]
    AlphaOutOfRange(String),
    #[error("beta must exceed -1 (got {0})")]
    BetaOutOfRange(String),
    #[error("omega must be positive (got {0})")]
    OmegaOutOfRange(String),
}

/// Model parameters: `k = p/q` in lowest terms, `alpha`, `beta`, `omega`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    p: u64,
    q: u64,
    #[serde(with = "exact_serde")]
    alpha: Rational,
    #[serde(with = "exact_serde")]
    beta: Rational,
    #[serde(with = "exact_serde")]
    omega: Rational,
}

impl Params {
    pub fn new(
        k: Rational,
        alpha: Rational,
        beta: Rational,
        omega: Rational,
    ) -> Result<Self, ParamsError> {
        if !k.is_positive() {
            return Err(ParamsError::BadK(to_exact_string(&k)));
        }
        let (p, q) = match (k.numer().to_u64(), k.denom().to_u64()) {
            (Some(p), Some(q)) => (p, q),
            _ => return Err(ParamsError::BadK(to_exact_string(&k))),
        };
        let minus_one = -Rational::one();
        if alpha <= minus_one {
            return Err(ParamsError::AlphaOutOfRange(to_exact_string(&alpha)));
        }
        if beta <= minus_one {
            return Err(ParamsError::BetaOutOfRange(to_exact_string(&beta)));
        }
        if !omega.is_positive() {
            return Err(ParamsError::OmegaOutOfRange(to_exact_string(&omega)));
        }
        debug_assert_eq!(p.gcd(&q), 1);
        Ok(Params {
            p,
            q,
            alpha,
            beta,
            omega,
        })
    }

    /// Shorthand used heavily in tests: `k = p/q` with small-integer pieces.
    pub fn from_parts(p: i64, q: i64, alpha: Rational, beta: Rational, omega: Rational) -> Self {
        Self::new(rat(p, q), alpha, beta, omega).expect("valid parameters")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn k(&self) -> Rational {
        Rational::new(BigInt::from(self.p), BigInt::from(self.q))
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }

    pub fn omega(&self) -> &Rational {
        &self.omega
    }

    /// `(alpha + beta + 1) / 2`, the offset in every `|a_n|`.
    pub fn half_sum(&self) -> Rational {
        (&self.alpha + &self.beta + Rational::one()) / int(2)
    }

    /// Compact tag used in check identifiers.
    pub fn tag(&self) -> String {
        format!(
            "k={}/{},alpha={},beta={},omega={}",
            self.p,
            self.q,
            to_exact_string(&self.alpha),
            to_exact_string(&self.beta),
            to_exact_string(&self.omega)
        )
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

/// Serde adapter that writes rationals as `"num/den"` strings.
pub mod exact_serde {
    use super::{parse_rational, to_exact_string, Rational};
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&to_exact_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("3/2").unwrap(), rat(3, 2));
        assert_eq!(parse_rational("-6/4").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("5").unwrap(), int(5));
        assert_eq!(parse_rational("-0.25").unwrap(), rat(-1, 4));
        assert_eq!(parse_rational("2.5").unwrap(), rat(5, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn exact_string_always_has_denominator() {
        assert_eq!(to_exact_string(&int(7)), "7/1");
        assert_eq!(to_exact_string(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn params_validation() {
        assert!(Params::new(int(0), int(0), int(0), int(1)).is_err());
        assert!(Params::new(int(-1), int(0), int(0), int(1)).is_err());
        assert!(Params::new(int(1), int(-1), int(0), int(1)).is_err());
        assert!(Params::new(int(1), int(0), rat(-3, 2), int(1)).is_err());
        assert!(Params::new(int(1), int(0), int(0), int(0)).is_err());
        let p = Params::new(rat(6, 4), rat(1, 2), int(0), int(1)).unwrap();
        assert_eq!((p.p(), p.q()), (3, 2));
    }

    #[test]
    fn mod_two_representative() {
        assert_eq!(mod_two(&rat(7, 2)), rat(3, 2));
        assert_eq!(mod_two(&rat(-1, 2)), rat(3, 2));
        assert_eq!(mod_two(&int(4)), int(0));
    }
}
