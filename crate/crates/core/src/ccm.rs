//! Coupling constant metamorphosis: the oscillator family mapped to a
//! Coulomb family.
//!
//! With `r^2 = rho`, `phi = psi/2`, `E = -4g` and `-omega^2/4 = E~`, the
//! Coulomb Hamiltonian is `-d_rho^2 - (1/rho) d_rho + g/rho + k^2 Q^2/(4 rho^2)`.
//! In `y~ = s rho` with `s = 2 sqrt(-E~)` it reads
//! `s^2 [-d^2 - (1/y~) d + k^2 Q^2/(4 y~^2)] + g s / y~`, and the mapped
//! states are `Y_m^{k|a_n|}(y~) P_n`. The `1/y~` terms cancel iff
//! `s = -2g/(2m + k|a_n| + 1)`, so `E~ = -g^2/(2m + k|a_n| + 1)^2`.
//! The sign of `s` is kept formally: a repulsive `g > 0` gives `s < 0`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::operators::{hamiltonian, LinearOperator, Model, WaveVector};
use crate::orthopoly::RadialFunction;
use crate::poly::Poly;
use crate::rational::{from_usize, int, to_exact_string, Params, Rational};
use crate::report::{Bounds, Check, CheckBuilder, Expect};
use crate::spectrum::{multiplets, radial_exponent};
use crate::symmetry::check_id;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CcmError {
    #[error("the Coulomb coupling g must be nonzero")]
    ZeroCoupling,
}

/// Coulomb model obtained from an oscillator model and a coupling `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoulombModel {
    params: Params,
    g: Rational,
}

impl CoulombModel {
    pub fn new(params: Params, g: Rational) -> Result<Self, CcmError> {
        if g.is_zero() {
            return Err(CcmError::ZeroCoupling);
        }
        Ok(CoulombModel { params, g })
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn g(&self) -> &Rational {
        &self.g
    }

    /// Angular label of the image family, `k/2`.
    pub fn half_k(&self) -> Rational {
        self.params.k() / int(2)
    }

    /// The substitutions defining the map, as text.
    pub fn substitutions(&self) -> Vec<(&'static str, &'static str)> {
        vec![
            ("r^2", "rho"),
            ("phi", "psi/2"),
            ("E", "-4g"),
            ("-omega^2/4", "E~"),
            ("y = omega r^2", "y~ = 2 sqrt(-E~) rho"),
        ]
    }

    /// `2m + k|a_n| + 1`.
    fn level(&self, m: usize, n: usize) -> Rational {
        int(2) * from_usize(m) + radial_exponent(n, &self.params) + int(1)
    }

    /// Signed scale `s = 2 sqrt(-E~) = -2g/(2m + k|a_n| + 1)` of `y~`.
    pub fn scale(&self, m: usize, n: usize) -> Rational {
        int(-2) * &self.g / self.level(m, n)
    }
}

/// `E~ = -g^2/(2m + k|a_n| + 1)^2`, from the quantization condition.
pub fn coulomb_energy(m: usize, n: usize, cm: &CoulombModel) -> Rational {
    let l = cm.level(m, n);
    -(&cm.g * &cm.g) / (&l * &l)
}

/// `-16 g^2/(4m + k|a_n| + 2)^2`, the value obtained from the quantization
/// condition written with `(k/2)|a_n|`.
pub fn coulomb_energy_half_label(m: usize, n: usize, cm: &CoulombModel) -> Rational {
    let d = int(4) * from_usize(m) + radial_exponent(n, &cm.params) + int(2);
    int(-16) * &cm.g * &cm.g / (&d * &d)
}

/// `-8 g^2/(4m + k|a_n| + 2)^2` as printed.
pub fn coulomb_energy_printed(m: usize, n: usize, cm: &CoulombModel) -> Rational {
    let d = int(4) * from_usize(m) + radial_exponent(n, &cm.params) + int(2);
    int(-8) * &cm.g * &cm.g / (&d * &d)
}

/// `H~` in the scaled variable `y~ = s rho`.
pub fn coulomb_hamiltonian(cm: &CoulombModel, s: &Rational) -> LinearOperator {
    use LinearOperator::*;
    let k2 = cm.params.k() * cm.params.k() / int(4);
    let kinetic = Sum(vec![
        Product(vec![Dy, Dy]).scaled(&int(-1)),
        Product(vec![DivY, Dy]).scaled(&int(-1)),
        Product(vec![QPoly(Poly::monomial(k2, 2)), DivY, DivY]),
    ]);
    Sum(vec![kinetic.scaled(&(s * s)), DivY.scaled(&(&cm.g * s))])
}

/// Exact rational square root, if any.
pub fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let root = |v: &BigInt| {
        let r = v.sqrt();
        (&r * &r == *v).then_some(r)
    };
    Some(Rational::new(root(x.numer())?, root(x.denom())?))
}

/// Outcome of one Coulomb eigen-check.
#[derive(Clone, Debug, PartialEq)]
pub enum EigenOutcome {
    Holds { scale: Rational },
    Residual { scale: Rational, residual: String },
    IrrationalScale,
}

/// Applies `H~` to the mapped state `(m, n)` with candidate energy `e`,
/// trying both signs of `s = +-2 sqrt(-e)`.
pub fn coulomb_eigen_check(model: &Model, cm: &CoulombModel, m: usize, n: usize, e: &Rational) -> EigenOutcome {
    let Some(root) = rational_sqrt(&-e) else {
        return EigenOutcome::IrrationalScale;
    };
    let psi = model.basis(m, n);
    let mut first = None;
    for s in [int(2) * &root, int(-2) * &root] {
        let residual = coulomb_hamiltonian(cm, &s).apply(model, &psi).sub(&psi.scale(e));
        if residual.is_zero() {
            return EigenOutcome::Holds { scale: s };
        }
        first.get_or_insert((s, residual.render()));
    }
    let (scale, residual) = first.expect("two candidates");
    EigenOutcome::Residual { scale, residual }
}

fn eigen_check(
    model: &Model,
    cm: &CoulombModel,
    b: &Bounds,
    name: &str,
    expect: Expect,
    energy: impl Fn(usize, usize) -> Rational,
) -> Check {
    let params = cm.params();
    let mut chk = CheckBuilder::new(check_id("ccm", name, params), "coupling constant metamorphosis: Coulomb eigen-equation", expect);
    for m in 0..=b.m_max {
        for n in 0..=b.n_max {
            let e = energy(m, n);
            match coulomb_eigen_check(model, cm, m, n, &e) {
                EigenOutcome::Holds { .. } => chk.record(Some((m, n)), true, String::new, String::new),
                EigenOutcome::Residual { scale, residual } => chk.record(
                    Some((m, n)),
                    false,
                    || format!("(H~ - E~) Psi~ = {residual} with s = {}", to_exact_string(&scale)),
                    || format!("0 with E~ = {}", to_exact_string(&e)),
                ),
                EigenOutcome::IrrationalScale => chk.record(
                    Some((m, n)),
                    false,
                    || format!("2 sqrt(-E~) = 2 sqrt({}) is irrational", to_exact_string(&-e.clone())),
                    || format!("a rational scale for E~ = {}", to_exact_string(&e)),
                ),
            }
        }
    }
    chk.finish()
}

/// All Coulomb checks for one model.
pub fn verify_coulomb(cm: &CoulombModel, b: &Bounds) -> Vec<Check> {
    let params = cm.params();
    let model = Model::new(params.clone());
    let id = |name: &str| check_id("ccm", name, params);
    let mut out = vec![
        eigen_check(&model, cm, b, "eigen-derived-energy", Expect::Holds, |m, n| coulomb_energy(m, n, cm)),
        eigen_check(&model, cm, b, "eigen-half-label-energy", Expect::Printed, |m, n| {
            coulomb_energy_half_label(m, n, cm)
        }),
        eigen_check(&model, cm, b, "eigen-printed-energy", Expect::Printed, |m, n| {
            coulomb_energy_printed(m, n, cm)
        }),
    ];

    // The printed radial label (k/2)|a_n| instead of k|a_n|.
    let mut label = CheckBuilder::new(id("printed-radial-label"), "coupling constant metamorphosis: mapped wave functions", Expect::Printed);
    for m in 0..=b.m_max.min(2) {
        for n in 0..=b.n_max.min(4) {
            let s = cm.scale(m, n);
            let g_half = radial_exponent(n, params) / int(2);
            let psi = WaveVector::from_sector(n, RadialFunction::basis(m, &g_half));
            let image = coulomb_hamiltonian(cm, &s).apply(&model, &psi);
            let e = coulomb_energy(m, n, cm);
            let res = image.sub(&psi.scale(&e));
            label.record(Some((m, n)), res.is_zero(), || res.render(), || "0".into());
        }
    }
    out.push(label.finish());

    let mut negative = CheckBuilder::new(id("energy-negative"), "coupling constant metamorphosis: Coulomb spectrum", Expect::Holds);
    let mut round = CheckBuilder::new(id("round-trip"), "coupling constant metamorphosis: inverse substitution", Expect::Holds);
    for m in 0..=b.m_max {
        for n in 0..=b.n_max {
            let e = coulomb_energy(m, n, cm);
            negative.record(Some((m, n)), e.is_negative(), || to_exact_string(&e), || "< 0".into());
            // (4 y~ / s)(H~ - E~) = H_osc|_{omega = s} + 4g, and the oscillator
            // energy at omega = s equals -4g.
            let s = cm.scale(m, n);
            let lhs_op = (LinearOperator::MulY * (coulomb_hamiltonian(cm, &s) - LinearOperator::scalar(e.clone())))
                .scaled(&(int(4) / &s));
            let rhs_op = hamiltonian(params).scaled(&(&s / params.omega())) + LinearOperator::scalar(int(4) * cm.g());
            let psi = model.basis(m, n);
            let lhs = lhs_op.apply(&model, &psi);
            let rhs = rhs_op.apply(&model, &psi);
            let e_osc = int(2) * &s * cm.level(m, n);
            let ok = lhs == rhs && e_osc == int(-4) * cm.g();
            round.record(Some((m, n)), ok, || lhs.render(), || rhs.render());
        }
    }
    out.push(negative.finish());
    out.push(round.finish());

    // Degeneracies: source multiplets map to Coulomb multiplets.
    let mut degenerate = CheckBuilder::new(id("degeneracy-preserved"), "coupling constant metamorphosis: degeneracies", Expect::Holds);
    let levels = multiplets(params, b.m_max, b.n_max);
    let mut images = Vec::new();
    for level in &levels {
        let (m0, n0) = level.members[0];
        let e0 = coulomb_energy(m0, n0, cm);
        for &(m, n) in &level.members {
            let e = coulomb_energy(m, n, cm);
            degenerate.compare(Some((m, n)), &e, &e0);
        }
        images.push(e0);
    }
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    degenerate.record(None, sorted.len() == images.len(), || format!("{} distinct images", sorted.len()), || format!("{} levels", images.len()));
    out.push(degenerate.finish());

    let (p, q) = (params.p() as usize, params.q() as usize);
    let mut shift = CheckBuilder::new(id("degeneracy-shift"), "coupling constant metamorphosis: degeneracies", Expect::Holds);
    let half = cm.half_k();
    let (p2, q2) = (
        half.numer().to_string().parse::<usize>().unwrap_or(1),
        half.denom().to_string().parse::<usize>().unwrap_or(1),
    );
    let mut shift_half = CheckBuilder::new(id("degeneracy-shift-half-label"), "coupling constant metamorphosis: degeneracies", Expect::Printed);
    for m in 0..=b.m_max {
        for n in 0..=b.n_max {
            let e = coulomb_energy(m, n, cm);
            if n >= 2 * q {
                shift.compare(Some((m, n)), &coulomb_energy(m + p, n - 2 * q, cm), &e);
            }
            if n >= 4 * q2 {
                shift_half.compare(Some((m, n)), &coulomb_energy(m + p2, n - 4 * q2, cm), &e);
            }
        }
    }
    shift_half.note(format!("pattern (m+p', n-4q') with k/2 = {p2}/{q2}"));
    out.push(shift.finish());
    out.push(shift_half.finish());
    out
}
