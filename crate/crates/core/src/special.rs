//! Shifted factorials and terminating Gauss hypergeometric series.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Poly;
use crate::rational::{as_integer, from_usize, is_nonpositive_integer, to_exact_string, Rational};

/// `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut t = a.clone();
    for _ in 0..n {
        if t.is_zero() {
            return Rational::zero();
        }
        acc *= &t;
        t += Rational::one();
    }
    acc
}

pub fn factorial(n: usize) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Binomial coefficient `C(x, j)` for rational `x`.
pub fn binomial(x: &Rational, j: usize) -> Rational {
    let mut acc = Rational::one();
    for i in 0..j {
        acc *= x - from_usize(i);
    }
    acc / factorial(j)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergeometricError {
    #[error("series does not terminate: neither numerator parameter ({a}, {b}) is a nonpositive integer")]
    NonTerminating { a: String, b: String },
    #[error("denominator parameter {c} hits a pole at term {j} before termination")]
    PoleInC { c: String, j: usize },
}

/// `2F1(a, b; c; z)` for a series that terminates, with `z` itself a polynomial.
pub fn hyp2f1_terminating(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    z: &Poly,
) -> Result<Poly, HypergeometricError> {
    let terms = [a, b]
        .iter()
        .filter(|v| is_nonpositive_integer(v))
        .filter_map(|v| as_integer(v))
        .map(|v| (-v) as usize)
        .min()
        .ok_or_else(|| HypergeometricError::NonTerminating {
            a: to_exact_string(a),
            b: to_exact_string(b),
        })?;
    let mut out = Poly::zero();
    let mut coeff = Rational::one();
    let mut zpow = Poly::one();
    for j in 0..=terms {
        if j > 0 {
            let jm = from_usize(j - 1);
            let cj = c + &jm;
            if cj.is_zero() {
                return Err(HypergeometricError::PoleInC {
                    c: to_exact_string(c),
                    j,
                });
            }
            coeff = coeff * (a + &jm) * (b + &jm) / (cj * from_usize(j));
            zpow = &zpow * z;
        }
        out = &out + &zpow.scale(&coeff);
    }
    Ok(out)
}
