//! Sparse polynomials in two commuting variables, used for the structure
//! relations in `H` and `Q`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::Poly;
use crate::rational::Rational;

/// `sum c_{ij} X^i Y^j`, keyed by `(i, j)`; zero terms are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<(usize, usize), Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiTerm {
    pub h: usize,
    pub q: usize,
    #[serde(with = "crate::rational::exact_serde")]
    pub coeff: Rational,
}

impl BiPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(c, 0, 0)
    }

    pub fn term(c: Rational, i: usize, j: usize) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    /// `c + a X + b Y`.
    pub fn linear(c: Rational, a: Rational, b: Rational) -> Self {
        let mut p = Self::constant(c);
        p.add_term(1, 0, a);
        p.add_term(0, 1, b);
        p
    }

    /// `f(X) g(Y)`.
    pub fn from_product(f: &Poly, g: &Poly) -> Self {
        let mut p = Self::zero();
        for (i, a) in f.coeffs().iter().enumerate() {
            for (j, b) in g.coeffs().iter().enumerate() {
                p.add_term(i, j, a * b);
            }
        }
        p
    }

    fn add_term(&mut self, i: usize, j: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.terms.iter()
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_y(&self) -> Option<usize> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        for (&(i, j), v) in &self.terms {
            out.add_term(i, j, v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), v) in &other.terms {
            out.add_term(i, j, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &other.terms {
                out.add_term(i + k, j + l, a * b);
            }
        }
        out
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let mut total = Rational::zero();
        for (&(i, j), c) in &self.terms {
            total += c * pow(x, i) * pow(y, j);
        }
        total
    }

    /// `self(X -> sx, Y -> sy)`.
    pub fn substitute(&self, sx: &BiPoly, sy: &BiPoly) -> BiPoly {
        let dx = self.degree_x().unwrap_or(0);
        let dy = self.degree_y().unwrap_or(0);
        let px = powers(sx, dx);
        let py = powers(sy, dy);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&px[i].mul(&py[j]).scale(c));
        }
        out
    }

    pub fn to_terms(&self) -> Vec<BiTerm> {
        self.terms
            .iter()
            .rev()
            .map(|(&(h, q), c)| BiTerm { h, q, coeff: c.clone() })
            .collect()
    }

    /// Renders with the given variable names, highest powers first.
    pub fn to_string_in(&self, x: &str, y: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (idx, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            let neg = c < &Rational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            if !mag.is_one() || (i == 0 && j == 0) {
                factors.push(mag.to_string());
            }
            for (v, e) in [(x, i), (y, j)] {
                match e {
                    0 => {}
                    1 => factors.push(v.to_string()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("H", "Q"))
    }
}

fn pow(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn powers(p: &BiPoly, max: usize) -> Vec<BiPoly> {
    let mut out = vec![BiPoly::constant(Rational::one())];
    for i in 0..max {
        let next = out[i].mul(p);
        out.push(next);
    }
    out
}

/// Lagrange basis polynomials on distinct nodes.
pub fn lagrange_basis(nodes: &[Rational]) -> Vec<Poly> {
    nodes
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut num = Poly::one();
            let mut den = Rational::one();
            for (j, xj) in nodes.iter().enumerate() {
                if i != j {
                    num = &num * &Poly::from_coeffs(vec![-xj.clone(), Rational::one()]);
                    den *= xi - xj;
                }
            }
            num.scale(&den.recip())
        })
        .collect()
}

/// Tensor-product interpolant through `values[i][j]` at `(xs[i], ys[j])`.
pub fn interpolate_grid(xs: &[Rational], ys: &[Rational], values: &[Vec<Rational>]) -> BiPoly {
    let lx = lagrange_basis(xs);
    let ly = lagrange_basis(ys);
    // Collapse the x direction first: for each y node, a univariate in X.
    let mut out = BiPoly::zero();
    for (j, lyj) in ly.iter().enumerate() {
        let mut fx = Poly::zero();
        for (i, lxi) in lx.iter().enumerate() {
            fx = &fx + &lxi.scale(&values[i][j]);
        }
        out = out.add(&BiPoly::from_product(&fx, lyj));
    }
    out
}
