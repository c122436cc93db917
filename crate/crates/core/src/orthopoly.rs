//! Little -1 Jacobi polynomials, generalized Laguerre polynomials, radial
//! basis functions, weights, moments, inner products and norms.

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::angular::{half_sum, q_tilde};
use crate::linalg::solve;
use crate::poly::{Poly, XPoly, YPoly};
use crate::rational::{as_integer, from_usize, int, mod_two, to_exact_string, Rational};
use crate::special::{binomial, factorial, hyp2f1_terminating, pochhammer};
use crate::symbolic::SymbolicAmount;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrthopolyError {
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("radial exponents {0} and {1} do not differ by an even integer")]
    GammaMismatch(String, String),
    #[error("eigenproblem is degenerate at degree {0}")]
    Degenerate(usize),
}

fn check_angular(alpha: &Rational, beta: &Rational) -> Result<(), OrthopolyError> {
    let m1 = -Rational::one();
    if alpha <= &m1 || beta <= &m1 {
        return Err(OrthopolyError::ParameterOutOfRange(format!(
            "alpha={}, beta={} (both must exceed -1)",
            to_exact_string(alpha),
            to_exact_string(beta)
        )));
    }
    Ok(())
}

/// Eigenvalue `a_n` of `Q~` on `P_n`.
pub fn angular_eigenvalue(n: usize, alpha: &Rational, beta: &Rational) -> Rational {
    let v = from_usize(n) + half_sum(alpha, beta);
    if n % 2 == 0 {
        -v
    } else {
        v
    }
}

/// Monic `P_n` from the eigenproblem of `Q~` on monomials of degree `<= n`.
///
/// `Q~` is upper triangular on the monomial basis, so the eigenvector with
/// eigenvalue `M[n][n]` follows from back-substitution.
pub fn little_jacobi(n: usize, alpha: &Rational, beta: &Rational) -> Result<XPoly, OrthopolyError> {
    check_angular(alpha, beta)?;
    let cols: Vec<XPoly> = (0..=n)
        .map(|j| q_tilde(&Poly::monomial(Rational::one(), j), alpha, beta))
        .collect();
    let eig = cols[n].coeff(n);
    let mut c = vec![Rational::zero(); n + 1];
    c[n] = Rational::one();
    for j in (0..n).rev() {
        let denom = &eig - cols[j].coeff(j);
        if denom.is_zero() {
            return Err(OrthopolyError::Degenerate(j));
        }
        let mut acc = Rational::zero();
        for (i, ci) in c.iter().enumerate().skip(j + 1) {
            acc += cols[i].coeff(j) * ci;
        }
        c[j] = acc / denom;
    }
    Ok(Poly::from_coeffs(c))
}

/// Monic `P_n` by Gram-Schmidt against the weight moments (independent oracle).
pub fn little_jacobi_by_moments(
    n: usize,
    alpha: &Rational,
    beta: &Rational,
) -> Result<XPoly, OrthopolyError> {
    check_angular(alpha, beta)?;
    if n == 0 {
        return Ok(Poly::one());
    }
    let mu: Vec<Rational> = (0..2 * n).map(|j| moment_ratio(j, alpha, beta)).collect();
    let a: Vec<Vec<Rational>> = (0..n)
        .map(|i| (0..n).map(|j| mu[i + j].clone()).collect())
        .collect();
    let b: Vec<Rational> = (0..n).map(|i| -mu[i + n].clone()).collect();
    let mut c = solve(a, b).ok_or(OrthopolyError::Degenerate(n))?;
    c.push(Rational::one());
    Ok(Poly::from_coeffs(c))
}

/// `chi_n` exactly as printed for the hypergeometric representation.
pub fn chi_printed(n: usize, alpha: &Rational, beta: &Rational) -> Rational {
    let two = int(2);
    let h = if n % 2 == 0 { n / 2 } else { (n + 1) / 2 };
    let sign = if h % 2 == 0 { int(1) } else { int(-1) };
    let num = pochhammer(&((alpha + int(1)) / &two), h);
    let den = pochhammer(&(from_usize(h) + alpha / &two + beta / &two + int(1)), h);
    sign * num / den
}

/// `P_n` assembled from the printed terminating-series representation.
pub fn little_jacobi_hypergeometric(n: usize, alpha: &Rational, beta: &Rational) -> XPoly {
    let two = int(2);
    let nn = from_usize(n);
    let x2 = Poly::from_i64(&[0, 0, 1]);
    let c1 = (alpha + int(1)) / &two;
    let c3 = (alpha + int(3)) / &two;
    let chi = chi_printed(n, alpha, beta);
    let f = |a: Rational, b: Rational, c: &Rational| {
        hyp2f1_terminating(&a, &b, c, &x2).expect("terminating by construction")
    };
    let body = if n % 2 == 0 {
        let b = (&nn + alpha + beta + &two) / &two;
        let first = f(-&nn / &two, b.clone(), &c1);
        let second = if n == 0 {
            Poly::zero()
        } else {
            f(int(1) - &nn / &two, b, &c3)
        };
        &first + &second.shift_up().scale(&(&nn / (alpha + int(1))))
    } else {
        let a = (int(1) - &nn) / &two;
        let first = f(a.clone(), (&nn + alpha + beta + int(1)) / &two, &c1);
        let second = f(a, (&nn + alpha + beta + int(3)) / &two, &c3);
        &first - &second.shift_up().scale(&((alpha + beta + int(1)) / (alpha + int(1))))
    };
    body.scale(&chi)
}

/// `mu_j / mu_0` for the weight `|x|^alpha (1-x^2)^((beta-1)/2) (1+x)`.
pub fn moment_ratio(j: usize, alpha: &Rational, beta: &Rational) -> Rational {
    let e = if j % 2 == 0 { j } else { j + 1 };
    let a = (alpha + int(1)) / int(2);
    let ab = (alpha + beta + int(2)) / int(2);
    pochhammer(&a, e / 2) / pochhammer(&ab, e / 2)
}

/// `mu_j = int_{-1}^{1} x^j |x|^alpha (1-x^2)^((beta-1)/2) (1+x) dx`.
///
/// Only the even power among `x^j` and `x^(j+1)` survives, giving
/// `B((alpha+e+1)/2, (beta+1)/2)` with `e` that even power.
pub fn weight_moment(j: usize, alpha: &Rational, beta: &Rational) -> Result<SymbolicAmount, OrthopolyError> {
    check_angular(alpha, beta)?;
    let e = if j % 2 == 0 { j } else { j + 1 };
    let two = int(2);
    Ok(
        SymbolicAmount::beta((alpha + from_usize(e) + int(1)) / &two, (beta + int(1)) / &two)
            .expect("arguments positive"),
    )
}

/// Weighted pairing of two angular polynomials.
pub fn angular_inner(
    f: &XPoly,
    g: &XPoly,
    alpha: &Rational,
    beta: &Rational,
) -> Result<SymbolicAmount, OrthopolyError> {
    check_angular(alpha, beta)?;
    let prod = f * g;
    let mut total = Rational::zero();
    for (j, c) in prod.coeffs().iter().enumerate() {
        if !c.is_zero() {
            total += c * moment_ratio(j, alpha, beta);
        }
    }
    let mu0 = weight_moment(0, alpha, beta)?;
    let direct = prod
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .try_fold(SymbolicAmount::zero(), |acc, (j, c)| {
            weight_moment(j, alpha, beta).map(|m| acc.add(&m.scale(c)))
        })?;
    debug_assert_eq!(direct, mu0.scale(&total));
    Ok(direct)
}

/// `h_n / h_0` with `h_n = <P_n, P_n>`.
pub fn norm_ratio(n: usize, alpha: &Rational, beta: &Rational) -> Result<Rational, OrthopolyError> {
    let p = little_jacobi(n, alpha, beta)?;
    let hn = angular_inner(&p, &p, alpha, beta)?;
    let h0 = angular_inner(&Poly::one(), &Poly::one(), alpha, beta)?;
    Ok(hn.ratio_to(&h0).expect("same Beta base"))
}

/// `(N_0 / N_n)^2` from the closed-form normalization constants.
pub fn norm_ratio_closed_form(n: usize, alpha: &Rational, beta: &Rational) -> Rational {
    let two = int(2);
    let s1 = alpha / &two + beta / &two + int(1);
    let ha = alpha / &two + Rational::new(1.into(), 2.into());
    let hb = beta / &two + Rational::new(1.into(), 2.into());
    let (f, s, ab) = if n % 2 == 0 {
        (n / 2, n / 2, n / 2)
    } else {
        ((n - 1) / 2, (n - 1) / 2, (n + 1) / 2)
    };
    let d = factorial(f) * pochhammer(&s1, s) * pochhammer(&ha, ab) * pochhammer(&hb, ab);
    let top = pochhammer(&s1, n);
    d / (&top * &top)
}

/// `N_0` as printed, squared: `Gamma(a/2+b/2+1) / (Gamma(a/2+1) Gamma(b/2+1))`.
pub fn n0_squared_printed(alpha: &Rational, beta: &Rational) -> SymbolicAmount {
    let two = int(2);
    let g = |z: Rational| SymbolicAmount::gamma(z).expect("positive argument");
    let num = g(alpha / &two + beta / &two + int(1));
    let den = g(alpha / &two + int(1)).mul(&g(beta / &two + int(1)));
    num.mul(&den.recip().expect("single term"))
}

/// `N_0^2 = 1 / BetaEven`, the value giving a unit-norm ground state.
pub fn n0_squared(alpha: &Rational, beta: &Rational) -> SymbolicAmount {
    SymbolicAmount::beta_even(alpha, beta)
        .recip()
        .expect("single term")
}

/// One angular eigenmode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AngularMode {
    pub n: usize,
    pub poly: XPoly,
    pub eigenvalue: Rational,
    pub norm_ratio: Rational,
}

impl AngularMode {
    pub fn new(n: usize, alpha: &Rational, beta: &Rational) -> Result<Self, OrthopolyError> {
        Ok(AngularMode {
            n,
            poly: little_jacobi(n, alpha, beta)?,
            eigenvalue: angular_eigenvalue(n, alpha, beta),
            norm_ratio: norm_ratio(n, alpha, beta)?,
        })
    }
}

/// Generalized Laguerre polynomial `L_m^gamma(y)` from its terminating series.
pub fn laguerre(m: usize, gamma: &Rational) -> Result<YPoly, OrthopolyError> {
    if gamma <= &-Rational::one() {
        return Err(OrthopolyError::ParameterOutOfRange(format!(
            "gamma={} (must exceed -1)",
            to_exact_string(gamma)
        )));
    }
    Ok(laguerre_unchecked(m, gamma))
}

pub(crate) fn laguerre_unchecked(m: usize, gamma: &Rational) -> YPoly {
    let top = from_usize(m) + gamma;
    Poly::from_coeffs(
        (0..=m)
            .map(|j| {
                let sign = if j % 2 == 0 { int(1) } else { int(-1) };
                sign * binomial(&top, m - j) / factorial(j)
            })
            .collect(),
    )
}

/// `y^(gamma/2) e^(-y/2) poly(y)`, kept with `poly(0) != 0` unless zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RadialFunction {
    gamma: Rational,
    poly: YPoly,
}

impl RadialFunction {
    pub fn new(gamma: Rational, poly: YPoly) -> Self {
        let mut f = RadialFunction { gamma, poly };
        f.canonicalize();
        f
    }

    fn canonicalize(&mut self) {
        if self.poly.is_zero() {
            self.gamma = Rational::zero();
            return;
        }
        while self.poly.coeff(0).is_zero() {
            self.poly = self.poly.divide_by_var_exact().expect("constant term is zero");
            self.gamma += int(2);
        }
    }

    pub fn zero() -> Self {
        RadialFunction {
            gamma: Rational::zero(),
            poly: Poly::zero(),
        }
    }

    /// `Y_m^gamma = y^(gamma/2) e^(-y/2) L_m^gamma(y)`.
    pub fn basis(m: usize, gamma: &Rational) -> Self {
        Self::new(gamma.clone(), laguerre_unchecked(m, gamma))
    }

    pub fn gamma(&self) -> &Rational {
        &self.gamma
    }

    pub fn poly(&self) -> &YPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// Class of `gamma` modulo 2; sums are only closed within a class.
    pub fn class(&self) -> Rational {
        mod_two(&self.gamma)
    }

    /// Polynomial part relative to the prefactor `y^(target/2)`, if the
    /// function lies in that family.
    pub fn poly_at(&self, target: &Rational) -> Option<YPoly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let shift = as_integer(&((&self.gamma - target) / int(2)))?;
        if shift < 0 {
            return None;
        }
        Some(&self.poly * &Poly::monomial(Rational::one(), shift as usize))
    }

    pub fn try_add(&self, other: &Self) -> Option<Self> {
        if self.is_zero() {
            return Some(other.clone());
        }
        if other.is_zero() {
            return Some(self.clone());
        }
        let low = if self.gamma <= other.gamma { &self.gamma } else { &other.gamma };
        let a = self.poly_at(low)?;
        let b = other.poly_at(low)?;
        Some(Self::new(low.clone(), &a + &b))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.gamma.clone(), self.poly.scale(c))
    }

    /// `d/dy`: exponent drops by 2, polynomial becomes
    /// `(gamma/2) p - (y/2) p + y p'`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let half = Rational::new(1.into(), 2.into());
        let p = &self.poly;
        let q = &(&p.scale(&(&self.gamma * &half)) - &p.shift_up().scale(&half))
            + &p.derivative().shift_up();
        Self::new(&self.gamma - int(2), q)
    }

    pub fn mul_y(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(&self.gamma + int(2), self.poly.clone())
    }

    pub fn div_y(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::new(&self.gamma - int(2), self.poly.clone())
    }

    pub fn eval_f64(&self, y: f64) -> f64 {
        let g = crate::rational::to_f64(&self.gamma);
        y.powf(g / 2.0) * (-y / 2.0).exp() * self.poly.eval_f64(y)
    }
}

/// `int_0^inf f g dy` as a rational multiple of `Gamma(gamma + 1)`, where
/// `gamma` is the smaller exponent after alignment.
pub fn radial_inner(f: &RadialFunction, g: &RadialFunction) -> Result<SymbolicAmount, OrthopolyError> {
    if f.is_zero() || g.is_zero() {
        return Ok(SymbolicAmount::zero());
    }
    if f.class() != g.class() {
        return Err(OrthopolyError::GammaMismatch(
            to_exact_string(f.gamma()),
            to_exact_string(g.gamma()),
        ));
    }
    let low = if f.gamma() <= g.gamma() { f.gamma() } else { g.gamma() };
    if low <= &-Rational::one() {
        return Err(OrthopolyError::ParameterOutOfRange(format!(
            "gamma={} (integral diverges)",
            to_exact_string(low)
        )));
    }
    let prod = &f.poly_at(low).expect("same class") * &g.poly_at(low).expect("same class");
    let base = low + int(1);
    let mut total = Rational::zero();
    for (j, c) in prod.coeffs().iter().enumerate() {
        total += c * pochhammer(&base, j);
    }
    Ok(SymbolicAmount::gamma_rad(low).scale(&total))
}

/// `M_{m,n}^2 = 2 omega m! / Gamma(m + gamma + 1)` with `gamma = k|a_n|`.
pub fn radial_norm_constant(m: usize, gamma: &Rational, omega: &Rational) -> SymbolicAmount {
    let c = int(2) * omega * factorial(m) / pochhammer(&(gamma + int(1)), m);
    SymbolicAmount::gamma_rad(gamma)
        .recip()
        .expect("single term")
        .scale(&c)
}

/// Sign-aware helper: `true` if every coefficient of the amount is positive.
pub fn is_positive_amount(a: &SymbolicAmount) -> bool {
    !a.is_zero() && a.terms().all(|(_, c)| c.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn low_degree_polynomials() {
        let (al, be) = (rat(1, 3), rat(3, 4));
        assert_eq!(little_jacobi(0, &al, &be).unwrap(), Poly::one());
        let p1 = little_jacobi(1, &al, &be).unwrap();
        let c = -(&al + int(1)) / (&al + &be + int(2));
        assert_eq!(p1, Poly::from_coeffs(vec![c, int(1)]));
        let z = int(0);
        assert_eq!(
            little_jacobi(2, &z, &z).unwrap(),
            Poly::from_coeffs(vec![rat(-1, 4), rat(-1, 2), int(1)])
        );
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(little_jacobi(2, &int(-1), &int(0)).is_err());
        assert!(laguerre(1, &int(-2)).is_err());
    }

    #[test]
    fn moments() {
        let (al, be) = (rat(1, 2), rat(5, 2));
        let b = SymbolicAmount::beta_even(&al, &be);
        assert_eq!(weight_moment(0, &al, &be).unwrap(), b);
        assert_eq!(
            weight_moment(1, &al, &be).unwrap(),
            b.scale(&((&al + int(1)) / (&al + &be + int(2))))
        );
    }

    #[test]
    fn norm_ratio_spot_values() {
        let z = int(0);
        assert_eq!(norm_ratio(0, &z, &z).unwrap(), int(1));
        assert_eq!(norm_ratio(1, &z, &z).unwrap(), rat(1, 4));
        assert_eq!(norm_ratio(2, &z, &z).unwrap(), rat(1, 16));
        assert_eq!(norm_ratio_closed_form(1, &z, &z), rat(1, 4));
        let (al, be) = (rat(1, 2), rat(5, 2));
        assert_eq!(norm_ratio(1, &al, &be).unwrap(), rat(21, 100));
        assert_eq!(norm_ratio(2, &al, &be).unwrap(), rat(3, 70));
    }

    #[test]
    fn laguerre_examples() {
        let g = rat(2, 3);
        assert_eq!(laguerre(0, &g).unwrap(), Poly::one());
        assert_eq!(
            laguerre(1, &g).unwrap(),
            Poly::from_coeffs(vec![&g + int(1), int(-1)])
        );
        assert_eq!(
            laguerre(2, &int(0)).unwrap(),
            Poly::from_coeffs(vec![int(1), int(-2), rat(1, 2)])
        );
    }

    #[test]
    fn radial_pairings() {
        let g = rat(5, 3);
        let y0 = RadialFunction::basis(0, &g);
        let y1 = RadialFunction::basis(1, &g);
        assert_eq!(radial_inner(&y0, &y0).unwrap(), SymbolicAmount::gamma_rad(&g));
        assert!(radial_inner(&y0, &y1).unwrap().is_zero());
        let other = RadialFunction::basis(0, &rat(1, 3));
        assert!(matches!(
            radial_inner(&y0, &other),
            Err(OrthopolyError::GammaMismatch(..))
        ));
    }

    #[test]
    fn radial_norm_at_m0() {
        let g = rat(7, 2);
        let w = rat(3, 2);
        let expected = SymbolicAmount::gamma_rad(&g).recip().unwrap().scale(&(int(2) * &w));
        assert_eq!(radial_norm_constant(0, &g, &w), expected);
    }

    #[test]
    fn derivative_matches_float_difference() {
        let f = RadialFunction::basis(3, &rat(3, 2));
        let d = f.derivative();
        let y = 1.3;
        let h = 1e-5;
        let fd = (f.eval_f64(y + h) - f.eval_f64(y - h)) / (2.0 * h);
        assert!((fd - d.eval_f64(y)).abs() < 1e-7);
    }

    #[test]
    fn canonical_form_absorbs_powers_of_y() {
        let f = RadialFunction::new(int(1), Poly::from_i64(&[0, 0, 3]));
        assert_eq!(f.gamma(), &int(5));
        assert_eq!(f.poly(), &Poly::constant(int(3)));
    }
}
