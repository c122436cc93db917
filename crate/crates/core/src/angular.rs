//! Gauged angular operators acting on polynomials in `x = sin(phi)`.
//!
//! `R` is the reflection `x -> -x`. The operators here are the polynomial
//! realizations of the supercharge and of the two angular ladder operators.

use num_traits::One;

use crate::poly::{Poly, XPoly};
use crate::rational::{int, Rational};

/// `(alpha + beta + 1) / 2`.
pub fn half_sum(alpha: &Rational, beta: &Rational) -> Rational {
    (alpha + beta + Rational::one()) / int(2)
}

/// `Q~ f = (1-x) d/dx (R f) - alpha/(2x) (1-R) f - (alpha+beta+1)/2 R f`.
pub fn q_tilde(f: &XPoly, alpha: &Rational, beta: &Rational) -> XPoly {
    let rf = f.reflect();
    let one_minus_x = Poly::from_i64(&[1, -1]);
    let kinetic = &one_minus_x * &rf.derivative();
    let odd = (f - &rf)
        .divide_by_var_exact()
        .expect("(1 - R) f is odd, hence divisible by x");
    let centrifugal = odd.scale(&(alpha / int(2)));
    let shift = rf.scale(&half_sum(alpha, beta));
    &(&kinetic - &centrifugal) - &shift
}

/// `(x + s (1-x) R) g` with `s = +1` or `-1`.
fn mixed_reflection(g: &XPoly, s: i64) -> XPoly {
    let one_minus_x = Poly::from_i64(&[1, -1]);
    let refl = (&one_minus_x * &g.reflect()).scale(&int(s));
    &g.shift_up() + &refl
}

/// `J+ = (x + (1-x)R)(2Q~ + 1) + alpha + beta`.
pub fn j_plus(f: &XPoly, alpha: &Rational, beta: &Rational) -> XPoly {
    let g = &q_tilde(f, alpha, beta).scale(&int(2)) + f;
    &mixed_reflection(&g, 1) + &f.scale(&(alpha + beta))
}

/// `J- = (x - (1-x)R)(2Q~ - 1) + alpha - beta`.
pub fn j_minus(f: &XPoly, alpha: &Rational, beta: &Rational) -> XPoly {
    let g = &q_tilde(f, alpha, beta).scale(&int(2)) - f;
    &mixed_reflection(&g, -1) + &f.scale(&(alpha - beta))
}
