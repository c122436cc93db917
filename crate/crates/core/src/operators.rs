//! Exact operator framework: wave vectors in the separated eigenbasis and
//! composable linear operators acting on them.
//!
//! A [`WaveVector`] stores, for each angular index `n`, the radial factor that
//! multiplies the gauged angular mode `P_n`. Basis states are
//! `Y_m^{k|a_n|}(y) P_n(x)`. Angular operators act through the exact
//! polynomial action on `P_n` followed by re-expansion in the `P` basis;
//! `Q`-dependent radial coefficients act per sector through `Q -> a_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::RwLock;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::angular::{j_minus, j_plus, q_tilde};
use crate::orthopoly::{angular_eigenvalue, laguerre_unchecked, little_jacobi, RadialFunction};
use crate::poly::{Poly, XPoly};
use crate::rational::{from_usize, int, to_exact_string, Params, Rational};
use crate::special::factorial;
use crate::spectrum::{energy, radial_exponent};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OpError {
    #[error("radial operator {0} cannot act on an angular polynomial")]
    RadialOnAngular(String),
    #[error("angular operator {0} cannot act on a bare radial function")]
    AngularOnRadial(String),
    #[error("sector n={n}: radial factor y^({gamma}/2) lies outside the basis family y^({basis}/2); a 1/y term did not cancel")]
    NotDivisible {
        n: usize,
        gamma: String,
        basis: String,
    },
}

/// Parameters plus lazily built, cached angular data.
#[derive(Debug)]
pub struct Model {
    params: Params,
    polys: RwLock<Vec<XPoly>>,
    actions: RwLock<HashMap<(AngularPrim, usize), Vec<(usize, Rational)>>>,
}

impl Clone for Model {
    fn clone(&self) -> Self {
        Model::new(self.params.clone())
    }
}

impl Model {
    pub fn new(params: Params) -> Self {
        Model {
            params,
            polys: RwLock::new(vec![Poly::one()]),
            actions: RwLock::new(HashMap::new()),
        }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    /// Monic `P_n`.
    pub fn p(&self, n: usize) -> XPoly {
        if let Some(p) = self.polys.read().expect("lock").get(n) {
            return p.clone();
        }
        let mut polys = self.polys.write().expect("lock");
        while polys.len() <= n {
            let d = polys.len();
            polys.push(
                little_jacobi(d, self.params.alpha(), self.params.beta())
                    .expect("validated parameters"),
            );
        }
        polys[n].clone()
    }

    pub fn eigenvalue(&self, n: usize) -> Rational {
        angular_eigenvalue(n, self.params.alpha(), self.params.beta())
    }

    /// `k |a_n|`.
    pub fn gamma(&self, n: usize) -> Rational {
        radial_exponent(n, &self.params)
    }

    pub fn energy(&self, m: usize, n: usize) -> Rational {
        energy(m, n, &self.params)
    }

    /// Expands a polynomial in the monic `P` basis.
    pub fn decompose_angular(&self, f: &XPoly) -> Vec<(usize, Rational)> {
        let mut rest = f.clone();
        let mut out = Vec::new();
        while let Some(d) = rest.degree() {
            let c = rest.coeff(d);
            rest = &rest - &self.p(d).scale(&c);
            out.push((d, c));
        }
        out.reverse();
        out
    }

    fn angular_action(&self, prim: AngularPrim, n: usize) -> Vec<(usize, Rational)> {
        if let Some(v) = self.actions.read().expect("lock").get(&(prim, n)) {
            return v.clone();
        }
        let image = prim.apply_poly(&self.p(n), self.params.alpha(), self.params.beta());
        let v = self.decompose_angular(&image);
        self.actions
            .write()
            .expect("lock")
            .insert((prim, n), v.clone());
        v
    }

    /// Basis state `Y_m^{k|a_n|} P_n`.
    pub fn basis(&self, m: usize, n: usize) -> WaveVector {
        WaveVector::from_sector(n, RadialFunction::basis(m, &self.gamma(n)))
    }
}

/// Finite combination of separated states, keyed by angular index and by
/// the class of the radial exponent modulo 2.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WaveVector {
    sectors: BTreeMap<usize, BTreeMap<Rational, RadialFunction>>,
}

impl WaveVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_sector(n: usize, f: RadialFunction) -> Self {
        let mut v = Self::zero();
        v.add_radial(n, f);
        v
    }

    pub fn add_radial(&mut self, n: usize, f: RadialFunction) {
        if f.is_zero() {
            return;
        }
        let sector = self.sectors.entry(n).or_default();
        let class = f.class();
        let merged = match sector.remove(&class) {
            Some(g) => g.try_add(&f).expect("same class"),
            None => f,
        };
        if !merged.is_zero() {
            sector.insert(class, merged);
        }
        if sector.is_empty() {
            self.sectors.remove(&n);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.sectors.is_empty()
    }

    pub fn sectors(&self) -> impl Iterator<Item = (usize, &RadialFunction)> {
        self.sectors
            .iter()
            .flat_map(|(n, s)| s.values().map(move |f| (*n, f)))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero();
        if c.is_zero() {
            return out;
        }
        for (n, f) in self.sectors() {
            out.add_radial(n, f.scale(c));
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (n, f) in other.sectors() {
            out.add_radial(n, f.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    fn map_radial(&self, f: impl Fn(&RadialFunction) -> RadialFunction) -> Self {
        let mut out = Self::zero();
        for (n, g) in self.sectors() {
            out.add_radial(n, f(g));
        }
        out
    }

    /// Coefficients in the basis `Y_m^{k|a_n|} P_n`. Fails if some sector
    /// holds a radial factor outside the family of its basis exponent.
    pub fn decompose(&self, model: &Model) -> Result<BTreeMap<(usize, usize), Rational>, OpError> {
        let mut out = BTreeMap::new();
        for (n, f) in self.sectors() {
            let g = model.gamma(n);
            let mut rest = f.poly_at(&g).ok_or_else(|| OpError::NotDivisible {
                n,
                gamma: to_exact_string(f.gamma()),
                basis: to_exact_string(&g),
            })?;
            while let Some(d) = rest.degree() {
                let lead = if d % 2 == 0 { int(1) } else { int(-1) } / factorial(d);
                let c = rest.coeff(d) / lead;
                rest = &rest - &laguerre_unchecked(d, &g).scale(&c);
                let slot = out.entry((d, n)).or_insert_with(Rational::zero);
                *slot += c;
            }
        }
        out.retain(|_, c: &mut Rational| !c.is_zero());
        Ok(out)
    }

    /// Succeeds iff every sector stays in its basis family.
    pub fn require_basis_family(&self, model: &Model) -> Result<(), OpError> {
        self.decompose(model).map(|_| ())
    }

    /// Exact human-readable rendering.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.sectors()
            .map(|(n, f)| {
                format!(
                    "[n={n}] y^({}) e^(-y/2) ({})",
                    to_exact_string(&(f.gamma() / int(2))),
                    f.poly().to_string_in("y")
                )
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Angular primitives acting on gauged polynomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AngularPrim {
    QTilde,
    Reflect,
    MulX,
    JPlus,
    JMinus,
}

impl AngularPrim {
    pub fn apply_poly(self, f: &XPoly, alpha: &Rational, beta: &Rational) -> XPoly {
        match self {
            AngularPrim::QTilde => q_tilde(f, alpha, beta),
            AngularPrim::Reflect => f.reflect(),
            AngularPrim::MulX => f.shift_up(),
            AngularPrim::JPlus => j_plus(f, alpha, beta),
            AngularPrim::JMinus => j_minus(f, alpha, beta),
        }
    }

    fn name(self) -> &'static str {
        match self {
            AngularPrim::QTilde => "Q",
            AngularPrim::Reflect => "R",
            AngularPrim::MulX => "x",
            AngularPrim::JPlus => "J+",
            AngularPrim::JMinus => "J-",
        }
    }
}

/// Composition tree of exact linear operators. `Product` applies its
/// factors right to left.
#[derive(Clone, Debug, PartialEq)]
pub enum LinearOperator {
    Identity,
    Scaled(Rational, Box<LinearOperator>),
    Sum(Vec<LinearOperator>),
    Product(Vec<LinearOperator>),
    Angular(AngularPrim),
    /// `f(Q)`, acting as `f(a_n)` on sector `n`.
    QPoly(Poly),
    Dy,
    MulY,
    DivY,
}

impl LinearOperator {
    pub fn scalar(c: Rational) -> Self {
        LinearOperator::Scaled(c, Box::new(LinearOperator::Identity))
    }

    pub fn q() -> Self {
        LinearOperator::QPoly(Poly::var())
    }

    pub fn q_poly(coeffs: Vec<Rational>) -> Self {
        LinearOperator::QPoly(Poly::from_coeffs(coeffs))
    }

    pub fn scaled(self, c: &Rational) -> Self {
        LinearOperator::Scaled(c.clone(), Box::new(self))
    }

    pub fn pow(&self, e: usize) -> Self {
        match e {
            0 => LinearOperator::Identity,
            1 => self.clone(),
            _ => LinearOperator::Product(vec![self.clone(); e]),
        }
    }

    /// `[self, other] = self other - other self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() - other.clone() * self.clone()
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        self.clone() * other.clone() + other.clone() * self.clone()
    }

    pub fn apply(&self, model: &Model, v: &WaveVector) -> WaveVector {
        use LinearOperator::*;
        if v.is_zero() {
            return WaveVector::zero();
        }
        match self {
            Identity => v.clone(),
            Scaled(c, op) => op.apply(model, v).scale(c),
            Sum(ops) => ops
                .iter()
                .fold(WaveVector::zero(), |acc, op| acc.add(&op.apply(model, v))),
            Product(ops) => ops
                .iter()
                .rev()
                .fold(v.clone(), |acc, op| op.apply(model, &acc)),
            Angular(prim) => {
                let mut out = WaveVector::zero();
                for (n, f) in v.sectors() {
                    for (target, c) in model.angular_action(*prim, n) {
                        out.add_radial(target, f.scale(&c));
                    }
                }
                out
            }
            QPoly(p) => {
                let mut out = WaveVector::zero();
                for (n, f) in v.sectors() {
                    out.add_radial(n, f.scale(&p.eval(&model.eigenvalue(n))));
                }
                out
            }
            Dy => v.map_radial(RadialFunction::derivative),
            MulY => v.map_radial(RadialFunction::mul_y),
            DivY => v.map_radial(RadialFunction::div_y),
        }
    }

    /// Action on a gauged angular polynomial.
    pub fn apply_x(&self, params: &Params, f: &XPoly) -> Result<XPoly, OpError> {
        use LinearOperator::*;
        let (al, be) = (params.alpha(), params.beta());
        match self {
            Identity => Ok(f.clone()),
            Scaled(c, op) => Ok(op.apply_x(params, f)?.scale(c)),
            Sum(ops) => ops
                .iter()
                .try_fold(Poly::zero(), |acc, op| Ok(&acc + &op.apply_x(params, f)?)),
            Product(ops) => ops
                .iter()
                .rev()
                .try_fold(f.clone(), |acc, op| op.apply_x(params, &acc)),
            Angular(prim) => Ok(prim.apply_poly(f, al, be)),
            QPoly(p) => Ok(p.coeffs().iter().rev().fold(Poly::zero(), |acc, c| {
                &q_tilde(&acc, al, be) + &f.scale(c)
            })),
            Dy | MulY | DivY => Err(OpError::RadialOnAngular(self.to_string())),
        }
    }

    /// Action on a bare radial function (radial-only trees).
    pub fn apply_radial(&self, f: &RadialFunction) -> Result<RadialFunction, OpError> {
        use LinearOperator::*;
        match self {
            Identity => Ok(f.clone()),
            Scaled(c, op) => Ok(op.apply_radial(f)?.scale(c)),
            Sum(ops) => ops.iter().try_fold(RadialFunction::zero(), |acc, op| {
                let g = op.apply_radial(f)?;
                Ok(acc.try_add(&g).expect("radial terms share a class"))
            }),
            Product(ops) => ops
                .iter()
                .rev()
                .try_fold(f.clone(), |acc, op| op.apply_radial(&acc)),
            Dy => Ok(f.derivative()),
            MulY => Ok(f.mul_y()),
            DivY => Ok(f.div_y()),
            Angular(_) | QPoly(_) => Err(OpError::AngularOnRadial(self.to_string())),
        }
    }
}

impl fmt::Display for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use LinearOperator::*;
        match self {
            Identity => f.write_str("1"),
            Scaled(c, op) => match op.as_ref() {
                Identity => f.write_str(&c.to_string()),
                _ => write!(f, "({c})*{op}"),
            },
            Sum(ops) => {
                let parts: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
                write!(f, "({})", parts.join(" + "))
            }
            Product(ops) => {
                let parts: Vec<String> = ops.iter().map(|o| o.to_string()).collect();
                write!(f, "{}", parts.join("."))
            }
            Angular(p) => f.write_str(p.name()),
            QPoly(p) => write!(f, "[{}]", p.to_string_in("Q")),
            Dy => f.write_str("d/dy"),
            MulY => f.write_str("y"),
            DivY => f.write_str("(1/y)"),
        }
    }
}

impl Add for LinearOperator {
    type Output = LinearOperator;
    fn add(self, rhs: Self) -> Self {
        LinearOperator::Sum(vec![self, rhs])
    }
}

impl Sub for LinearOperator {
    type Output = LinearOperator;
    fn sub(self, rhs: Self) -> Self {
        LinearOperator::Sum(vec![self, -rhs])
    }
}

impl Neg for LinearOperator {
    type Output = LinearOperator;
    fn neg(self) -> Self {
        self.scaled(&-Rational::one())
    }
}

impl Mul for LinearOperator {
    type Output = LinearOperator;
    fn mul(self, rhs: Self) -> Self {
        LinearOperator::Product(vec![self, rhs])
    }
}

/// Sign in front of the energy term of the radial ladders. `Corrected` is
/// `+E/(4 omega)`, under which both radial action tables hold; `Printed` is
/// the `-E/(4 omega)` form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EnergySign {
    Corrected,
    Printed,
}

impl EnergySign {
    fn factor(self) -> Rational {
        match self {
            EnergySign::Corrected => int(1),
            EnergySign::Printed => int(-1),
        }
    }
}

/// `H = omega (-4 y d^2 - 4 d + y + k^2 Q^2 / y)`.
pub fn hamiltonian(params: &Params) -> LinearOperator {
    use LinearOperator::*;
    let k2 = params.k() * params.k();
    let kinetic = Product(vec![MulY, Dy, Dy]).scaled(&int(-4)) + Dy.scaled(&int(-4));
    let centrifugal = QPoly(Poly::monomial(k2, 2)) * DivY;
    Sum(vec![kinetic, MulY, centrifugal]).scaled(params.omega())
}

/// Scalar radial ladder `K_{c,E} = (1+c) d +- E/(4 omega) - c(1+c)/(2y)`.
pub fn k_ladder(c: &Rational, e: &Rational, omega: &Rational, sign: EnergySign) -> LinearOperator {
    use LinearOperator::*;
    let one_c = c + int(1);
    let centr = -(c * &one_c) / int(2);
    Sum(vec![
        Dy.scaled(&one_c),
        LinearOperator::scalar(sign.factor() * e / (int(4) * omega)),
        DivY.scaled(&centr),
    ])
}

/// `A_j = (1 + sigma k Q + 2j) d - (sigma k Q + 2j)(1 + sigma k Q + 2j)/(2y)`,
/// the energy-free part of `K_{sigma k Q + 2j}`.
fn k_free_part(sigma: i64, j: usize, params: &Params) -> LinearOperator {
    use LinearOperator::*;
    let sk = int(sigma) * params.k();
    let c = Poly::from_coeffs(vec![int(2) * from_usize(j), sk]);
    let one_c = &c + &Poly::one();
    let centr = (&c * &one_c).scale(&Rational::new((-1).into(), 2.into()));
    QPoly(one_c) * Dy + QPoly(centr) * DivY
}

/// `K_{sigma k Q + 2j, E}` with a scalar energy.
pub fn k_ladder_q(sigma: i64, j: usize, e: &Rational, params: &Params, sign: EnergySign) -> LinearOperator {
    k_free_part(sigma, j, params)
        + LinearOperator::scalar(sign.factor() * e / (int(4) * params.omega()))
}

/// `K^p_{sigma k Q, E} = K_{sigma k Q + 2(p-1), E} ... K_{sigma k Q, E}`.
pub fn k_power_e(sigma: i64, p: usize, e: &Rational, params: &Params, sign: EnergySign) -> LinearOperator {
    LinearOperator::Product(
        (0..p)
            .rev()
            .map(|j| k_ladder_q(sigma, j, e, params, sign))
            .collect(),
    )
}

/// `K^p_{sigma k Q, H}`: the energy is pushed to the right of every factor
/// and replaced by `H`. Expanding `prod_j (A_j + e)` over subsets `S` of
/// factors that contribute `e` gives `sum_S prod_{j not in S} A_j e^{|S|}`.
pub fn k_power_h(sigma: i64, p: usize, params: &Params, sign: EnergySign) -> LinearOperator {
    let h = hamiltonian(params);
    let e_unit = sign.factor() / (int(4) * params.omega());
    let mut terms = Vec::new();
    for mask in 0u32..(1 << p) {
        let chosen = mask.count_ones() as usize;
        let mut factors: Vec<LinearOperator> = (0..p)
            .rev()
            .filter(|j| mask & (1 << j) == 0)
            .map(|j| k_free_part(sigma, j, params))
            .collect();
        if chosen > 0 {
            factors.push(h.pow(chosen));
        }
        let mut coeff = Rational::one();
        for _ in 0..chosen {
            coeff *= &e_unit;
        }
        let body = match factors.len() {
            0 => LinearOperator::Identity,
            1 => factors.pop().expect("one factor"),
            _ => LinearOperator::Product(factors),
        };
        terms.push(body.scaled(&coeff));
    }
    LinearOperator::Sum(terms)
}

/// Ordering of the angular pair inside `J^{+-,2q}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JPower {
    /// `(J- J+)^q`: lowers even `n` and raises odd `n` by `2q`.
    Minus,
    /// `(J+ J-)^q`: raises even `n` and lowers odd `n` by `2q`.
    Plus,
}

pub fn j_power(kind: JPower, q: usize) -> LinearOperator {
    use AngularPrim::{JMinus, JPlus};
    let pair = match kind {
        JPower::Minus => [JMinus, JPlus],
        JPower::Plus => [JPlus, JMinus],
    };
    LinearOperator::Product(
        (0..q)
            .flat_map(|_| pair.iter().map(|p| LinearOperator::Angular(*p)))
            .collect(),
    )
}

/// Which angular power is paired with which radial power in `Xi_1`, `Xi_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XiPairing {
    /// `Xi_1 = (J- J+)^q K^p_{kQ,H}`, `Xi_2 = (J+ J-)^q K^p_{-kQ,H}`.
    Corrected,
    /// `Xi_1 = (J+ J-)^q K^p_{kQ,H}`, `Xi_2 = (J- J+)^q K^p_{-kQ,H}`.
    Printed,
}

pub fn xi_operators(params: &Params, pairing: XiPairing, sign: EnergySign) -> (LinearOperator, LinearOperator) {
    let (p, q) = (params.p() as usize, params.q() as usize);
    let (a1, a2) = match pairing {
        XiPairing::Corrected => (JPower::Minus, JPower::Plus),
        XiPairing::Printed => (JPower::Plus, JPower::Minus),
    };
    (
        j_power(a1, q) * k_power_h(1, p, params, sign),
        j_power(a2, q) * k_power_h(-1, p, params, sign),
    )
}

/// The `l`-th factor `K_{kQ+2l-2,H}` in closed form, such that
/// `K_{kQ+2l-2,H} K^{l-1}_{kQ,H} = K^l_{kQ,H}`:
/// `(kQ+2l-1) d + H/(4 omega) - [k^2 Q^2 + (2l-1) k Q + 2l(l-1)]/(2y)`.
pub fn k_factor_closed_form(l: usize, params: &Params) -> LinearOperator {
    use LinearOperator::*;
    let k = params.k();
    let lr = from_usize(l);
    let lead = Poly::from_coeffs(vec![int(2) * &lr - int(1), k.clone()]);
    let centr = Poly::from_coeffs(vec![
        int(2) * &lr * (&lr - int(1)),
        (int(2) * &lr - int(1)) * &k,
        &k * &k,
    ])
    .scale(&Rational::new((-1).into(), 2.into()));
    let h = hamiltonian(params).scaled(&(int(1) / (int(4) * params.omega())));
    Sum(vec![QPoly(lead) * Dy, h, QPoly(centr) * DivY])
}

/// The same factor as printed:
/// `(kQ+2l-1) d - H/(4 omega) - [k^2 Q^2 - k(6l-5) Q - 2(3l-2)(l-1)]/(2y)`.
pub fn k_factor_printed(l: usize, params: &Params) -> LinearOperator {
    use LinearOperator::*;
    let k = params.k();
    let lr = from_usize(l);
    let lead = Poly::from_coeffs(vec![int(2) * &lr - int(1), k.clone()]);
    let centr = Poly::from_coeffs(vec![
        -(int(2) * (int(3) * &lr - int(2)) * (&lr - int(1))),
        -(&k * (int(6) * &lr - int(5))),
        &k * &k,
    ])
    .scale(&Rational::new((-1).into(), 2.into()));
    let h = hamiltonian(params).scaled(&(int(-1) / (int(4) * params.omega())));
    Sum(vec![QPoly(lead) * Dy, h, QPoly(centr) * DivY])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use proptest::prelude::*;

    fn model(p: i64, q: i64, a: Rational, b: Rational) -> Model {
        Model::new(Params::from_parts(p, q, a, b, int(1)))
    }

    #[test]
    fn decompose_round_trip() {
        let m = model(3, 2, rat(1, 2), rat(5, 2));
        let v = m.basis(2, 3).scale(&rat(3, 7)).add(&m.basis(0, 1));
        let d = v.decompose(&m).unwrap();
        assert_eq!(d.get(&(2, 3)), Some(&rat(3, 7)));
        assert_eq!(d.get(&(0, 1)), Some(&int(1)));
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn hamiltonian_ground_state() {
        let m = model(1, 1, int(0), int(0));
        let h = hamiltonian(m.params());
        let psi = m.basis(0, 0);
        assert_eq!(h.apply(&m, &psi), psi.scale(&int(3)));
        let m = model(2, 1, rat(1, 2), rat(1, 2));
        let h = hamiltonian(m.params());
        let psi = m.basis(1, 2);
        assert_eq!(h.apply(&m, &psi), psi.scale(&int(18)));
    }

    #[test]
    fn not_divisible_surfaces() {
        let m = model(1, 1, int(0), int(0));
        let v = LinearOperator::DivY.apply(&m, &m.basis(0, 0));
        assert!(matches!(v.require_basis_family(&m), Err(OpError::NotDivisible { .. })));
    }

    #[test]
    fn radial_operators_reject_angular_input() {
        let p = Params::from_parts(1, 1, int(0), int(0), int(1));
        assert!(LinearOperator::Dy.apply_x(&p, &Poly::one()).is_err());
        assert!(LinearOperator::q().apply_radial(&RadialFunction::basis(0, &int(1))).is_err());
    }

    #[test]
    fn q_poly_on_polynomials_matches_repeated_q_tilde() {
        let p = Params::from_parts(1, 1, rat(1, 2), rat(1, 3), int(1));
        let f = Poly::from_i64(&[1, 2, 3]);
        let op = LinearOperator::q_poly(vec![int(1), int(0), int(2)]);
        let q1 = q_tilde(&f, p.alpha(), p.beta());
        let q2 = q_tilde(&q1, p.alpha(), p.beta());
        assert_eq!(op.apply_x(&p, &f).unwrap(), &f + &q2.scale(&int(2)));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn operators_are_linear(
            c1 in -5i64..5, c2 in -5i64..5, m1 in 0usize..3, n1 in 0usize..4,
            m2 in 0usize..3, n2 in 0usize..4,
        ) {
            let md = model(2, 3, rat(1, 2), int(0));
            let ops = [
                hamiltonian(md.params()),
                k_power_h(1, 2, md.params(), EnergySign::Corrected),
                j_power(JPower::Minus, 1),
            ];
            let u = md.basis(m1, n1);
            let v = md.basis(m2, n2);
            let combo = u.scale(&int(c1)).add(&v.scale(&int(c2)));
            for op in &ops {
                let lhs = op.apply(&md, &combo);
                let rhs = op.apply(&md, &u).scale(&int(c1)).add(&op.apply(&md, &v).scale(&int(c2)));
                prop_assert_eq!(lhs, rhs);
            }
        }
    }
}
