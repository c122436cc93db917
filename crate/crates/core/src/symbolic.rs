//! Exact linear combinations of Beta/Gamma values with rational coefficients.
//!
//! A [`SymbolicAmount`] is a sum `sum_i c_i * M_i`, where each `M_i` is a
//! product of integer powers of Beta and Gamma values at rational arguments.
//! Reduction moves every argument into the window `(0, 1]` using
//! `B(a+1,b) = a/(a+b) B(a,b)`, `B(a,b+1) = b/(a+b) B(a,b)` and
//! `Gamma(z+1) = z Gamma(z)`, and drops `Gamma(1) = 1`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::{int, is_nonpositive_integer, to_exact_string, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymbolicError {
    #[error("{0} has a pole at argument {1}")]
    Pole(&'static str, String),
}

/// A single transcendental factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Transcendental {
    Beta(Rational, Rational),
    Gamma(Rational),
}

impl fmt::Display for Transcendental {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transcendental::Beta(a, b) => write!(f, "B({a},{b})"),
            Transcendental::Gamma(z) => write!(f, "Gamma({z})"),
        }
    }
}

/// Product of powers of transcendental factors; empty means the unit symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(BTreeMap<Transcendental, i32>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial::default()
    }

    pub fn single(t: Transcendental, power: i32) -> Self {
        let mut m = Monomial::default();
        m.push(t, power);
        m
    }

    fn push(&mut self, t: Transcendental, power: i32) {
        let e = self.0.entry(t.clone()).or_insert(0);
        *e += power;
        if *e == 0 {
            self.0.remove(&t);
        }
    }

    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Transcendental, i32)> {
        self.0.iter().map(|(t, e)| (t, *e))
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (t, e) in &other.0 {
            out.push(t.clone(), *e);
        }
        out
    }

    fn recip(&self) -> Monomial {
        Monomial(self.0.iter().map(|(t, e)| (t.clone(), -e)).collect())
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(t, e)| if *e == 1 { t.to_string() } else { format!("{t}^{e}") })
            .collect();
        f.write_str(&parts.join("*"))
    }
}

fn rpow(c: &Rational, e: i32) -> Rational {
    let base = if e < 0 { c.recip() } else { c.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Reduces one factor to the canonical window, returning `(scale, canonical)`.
fn reduce_factor(t: &Transcendental) -> Result<(Rational, Option<Transcendental>), SymbolicError> {
    let one = Rational::one();
    match t {
        Transcendental::Gamma(z) => {
            if is_nonpositive_integer(z) {
                return Err(SymbolicError::Pole("Gamma", to_exact_string(z)));
            }
            let mut z = z.clone();
            let mut scale = Rational::one();
            while z > one {
                z -= &one;
                scale *= &z;
            }
            while !z.is_positive() {
                scale /= &z;
                z += &one;
            }
            Ok((scale, if z.is_one() { None } else { Some(Transcendental::Gamma(z)) }))
        }
        Transcendental::Beta(a, b) => {
            if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
                return Err(SymbolicError::Pole(
                    "Beta",
                    format!("({}, {})", to_exact_string(a), to_exact_string(b)),
                ));
            }
            let (mut a, mut b) = (a.clone(), b.clone());
            let mut scale = Rational::one();
            while a > one {
                a -= &one;
                scale = scale * &a / (&a + &b);
            }
            while b > one {
                b -= &one;
                scale = scale * &b / (&a + &b);
            }
            while !a.is_positive() {
                scale = scale * (&a + &b) / &a;
                a += &one;
            }
            while !b.is_positive() {
                scale = scale * (&a + &b) / &b;
                b += &one;
            }
            Ok((scale, Some(Transcendental::Beta(a, b))))
        }
    }
}

fn reduce_monomial(m: &Monomial) -> Result<(Rational, Monomial), SymbolicError> {
    let mut scale = Rational::one();
    let mut out = Monomial::unit();
    for (t, e) in m.factors() {
        let (s, canon) = reduce_factor(t)?;
        scale *= rpow(&s, e);
        if let Some(c) = canon {
            out.push(c, e);
        }
    }
    Ok((scale, out))
}

/// Exact symbolic amount. All public constructors and arithmetic return
/// reduced values; [`SymbolicAmount::from_raw`] builds unreduced ones.
#[derive(Clone, Debug, Default, Hash)]
pub struct SymbolicAmount {
    terms: BTreeMap<Monomial, Rational>,
}

impl SymbolicAmount {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn rational(c: Rational) -> Self {
        Self::from_raw([(Monomial::unit(), c)]).reduce()
    }

    /// Unreduced amount from raw terms.
    pub fn from_raw(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = SymbolicAmount::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn beta(a: Rational, b: Rational) -> Result<Self, SymbolicError> {
        Self::from_raw([(Monomial::single(Transcendental::Beta(a, b), 1), Rational::one())])
            .try_reduce()
    }

    pub fn gamma(z: Rational) -> Result<Self, SymbolicError> {
        Self::from_raw([(Monomial::single(Transcendental::Gamma(z), 1), Rational::one())])
            .try_reduce()
    }

    /// `B((alpha+1)/2, (beta+1)/2)`.
    pub fn beta_even(alpha: &Rational, beta: &Rational) -> Self {
        let two = int(2);
        Self::beta((alpha + int(1)) / &two, (beta + int(1)) / &two).expect("alpha, beta > -1")
    }

    /// `B((alpha+2)/2, (beta+1)/2)`.
    pub fn beta_odd(alpha: &Rational, beta: &Rational) -> Self {
        let two = int(2);
        Self::beta((alpha + int(2)) / &two, (beta + int(1)) / &two).expect("alpha, beta > -1")
    }

    /// `Gamma(gamma + 1)`, the radial normalization symbol.
    pub fn gamma_rad(gamma: &Rational) -> Self {
        Self::gamma(gamma + int(1)).expect("gamma > -1")
    }

    pub fn try_reduce(&self) -> Result<Self, SymbolicError> {
        let mut out = SymbolicAmount::zero();
        for (m, c) in &self.terms {
            let (s, canon) = reduce_monomial(m)?;
            out.add_term(canon, c * s);
        }
        Ok(out)
    }

    /// Canonical form. Panics only if a raw term sits on a pole.
    pub fn reduce(&self) -> Self {
        self.try_reduce().expect("symbolic amount on a pole")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The rational value, if the amount has only a unit term.
    pub fn as_rational(&self) -> Option<Rational> {
        let r = self.reduce();
        match r.terms.len() {
            0 => Some(Rational::zero()),
            1 => r.terms.get(&Monomial::unit()).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        SymbolicAmount {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out.reduce()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = SymbolicAmount::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out.reduce()
    }

    /// Reciprocal of a single-term amount.
    pub fn recip(&self) -> Option<Self> {
        let r = self.reduce();
        if r.terms.len() != 1 {
            return None;
        }
        let (m, c) = r.terms.iter().next()?;
        Some(Self::from_raw([(m.recip(), c.recip())]))
    }

    /// `r` with `self = r * other`, if such a rational exists.
    pub fn ratio_to(&self, other: &Self) -> Option<Rational> {
        let a = self.reduce();
        let b = other.reduce();
        if b.is_zero() {
            return None;
        }
        if a.is_zero() {
            return Some(Rational::zero());
        }
        if a.terms.len() != b.terms.len() {
            return None;
        }
        let (m0, c0) = b.terms.iter().next()?;
        let r = a.coefficient(m0) / c0;
        (a == b.scale(&r)).then_some(r)
    }

    /// Floating-point value; used only for sampling and cross-checks.
    pub fn to_f64(&self) -> f64 {
        use statrs::function::gamma::ln_gamma;
        let f = |x: &Rational| crate::rational::to_f64(x);
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut log = 0.0;
                for (t, e) in m.factors() {
                    let l = match t {
                        Transcendental::Gamma(z) => ln_gamma(f(z)),
                        Transcendental::Beta(a, b) => {
                            ln_gamma(f(a)) + ln_gamma(f(b)) - ln_gamma(f(a) + f(b))
                        }
                    };
                    log += e as f64 * l;
                }
                f(c) * log.exp()
            })
            .sum()
    }
}

impl PartialEq for SymbolicAmount {
    fn eq(&self, other: &Self) -> bool {
        self.reduce().terms == other.reduce().terms
    }
}

impl Eq for SymbolicAmount {}

impl fmt::Display for SymbolicAmount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                if m.is_unit() {
                    to_exact_string(c)
                } else {
                    format!("({})*{}", to_exact_string(c), m)
                }
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    #[test]
    fn beta_shift_reduces_to_even_base() {
        let (al, be) = (rat(1, 3), rat(2, 5));
        let two = int(2);
        let shifted = SymbolicAmount::beta((&al + int(3)) / &two, (&be + int(1)) / &two).unwrap();
        let expected = SymbolicAmount::beta_even(&al, &be).scale(&((&al + int(1)) / (&al + &be + int(2))));
        assert_eq!(shifted, expected);
    }

    #[test]
    fn gamma_shift() {
        let g = rat(3, 7);
        let lhs = SymbolicAmount::gamma(&g + int(2)).unwrap();
        let rhs = SymbolicAmount::gamma_rad(&g).scale(&(&g + int(1)));
        assert_eq!(lhs, rhs);
        assert_eq!(SymbolicAmount::gamma(int(4)).unwrap().as_rational(), Some(int(6)));
    }

    #[test]
    fn cancellation_gives_zero() {
        let b = SymbolicAmount::beta_even(&int(0), &int(0));
        assert!(b.sub(&b).is_zero());
    }

    #[test]
    fn ratios_and_reciprocals() {
        let b = SymbolicAmount::beta_even(&rat(1, 2), &rat(5, 2));
        assert_eq!(b.scale(&rat(3, 4)).ratio_to(&b), Some(rat(3, 4)));
        let inv = b.recip().unwrap();
        assert_eq!(b.mul(&inv).as_rational(), Some(int(1)));
        let g = SymbolicAmount::gamma_rad(&rat(1, 2));
        assert_eq!(b.ratio_to(&g), None);
    }

    #[test]
    fn float_value_of_beta_even_at_origin_is_pi() {
        let b = SymbolicAmount::beta_even(&int(0), &int(0));
        assert!((b.to_f64() - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn poles_are_errors() {
        assert!(SymbolicAmount::gamma(int(0)).is_err());
        assert!(SymbolicAmount::beta(int(-1), rat(1, 2)).is_err());
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent(
            an in 1i64..40, ad in 1i64..6, bn in 1i64..40, bd in 1i64..6,
            zn in 1i64..40, zd in 1i64..6, c in -9i64..9, e in -2i32..3,
        ) {
            let mut m = Monomial::single(Transcendental::Beta(rat(an, ad), rat(bn, bd)), 1);
            m.push(Transcendental::Gamma(rat(zn, zd)), e);
            let raw = SymbolicAmount::from_raw([(m, int(c))]);
            let once = raw.reduce();
            let twice = once.reduce();
            prop_assert_eq!(once.terms.clone(), twice.terms.clone());
            prop_assert!(raw == once);
        }
    }
}
