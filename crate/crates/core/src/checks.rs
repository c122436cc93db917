//! Checks on the separated solutions: angular and radial polynomials, norms,
//! the spectrum and the radial ladders.

use num_traits::{One, Zero};

use crate::angular::q_tilde;
use crate::operators::{hamiltonian, k_ladder, EnergySign, Model};
use crate::orthopoly::{
    angular_eigenvalue, angular_inner, little_jacobi, little_jacobi_hypergeometric, n0_squared, n0_squared_printed,
    norm_ratio, norm_ratio_closed_form, radial_inner, radial_norm_constant, RadialFunction,
};
use crate::poly::Poly;
use crate::rational::{from_usize, int, to_exact_string, Params, Rational};
use crate::report::{Bounds, Check, CheckBuilder, Expect};
use crate::spectrum::{energy, energy_pq, energy_pq_printed, multiplets, radial_exponent};
use crate::symbolic::SymbolicAmount;
use crate::symmetry::check_id;

const ANCHOR_ANGULAR: &str = "angular solutions: little -1 Jacobi polynomials";
const ANCHOR_SERIES: &str = "angular solutions: terminating series";
const ANCHOR_NORMS: &str = "orthonormality of the wave functions";
const ANCHOR_SPECTRUM: &str = "exact solutions: spectrum";
const ANCHOR_DEGENERACY: &str = "superintegrability: degenerate levels for k = p/q";
const ANCHOR_RADIAL: &str = "radial ladder operators";

/// Largest angular degree used for the orthogonality and norm checks.
pub const ORTHO_MAX: usize = 10;
/// Largest Laguerre degree used for radial orthogonality.
pub const LAGUERRE_MAX: usize = 8;

/// Angular, radial and spectral checks for one parameter set.
pub fn check_orthopoly(params: &Params, b: &Bounds) -> Vec<Check> {
    let (a, be) = (params.alpha(), params.beta());
    let id = |name: &str| check_id("orthopoly", name, params);
    let n_top = b.n_max.max(ORTHO_MAX);
    let polys: Vec<Poly> = (0..=n_top).map(|n| little_jacobi(n, a, be).expect("validated parameters")).collect();

    let mut eigen = CheckBuilder::new(id("angular-eigen"), ANCHOR_ANGULAR, Expect::Holds);
    for (n, p) in polys.iter().enumerate().take(b.n_max + 1) {
        let lhs = q_tilde(p, a, be);
        let rhs = p.scale(&angular_eigenvalue(n, a, be));
        eigen.compare(Some((0, n)), &lhs, &rhs);
    }

    let mut ortho = CheckBuilder::new(id("angular-orthogonality"), ANCHOR_NORMS, Expect::Holds);
    let mut norms = CheckBuilder::new(id("angular-norm-ratio"), ANCHOR_NORMS, Expect::Holds);
    for i in 0..=ORTHO_MAX {
        for j in 0..i {
            let v = angular_inner(&polys[i], &polys[j], a, be).expect("validated parameters");
            ortho.record(Some((j, i)), v.is_zero(), || v.to_string(), || "0".into());
        }
        let r = norm_ratio(i, a, be).expect("validated parameters");
        norms.compare(Some((0, i)), &r, &norm_ratio_closed_form(i, a, be));
    }

    let h0 = angular_inner(&Poly::one(), &Poly::one(), a, be).expect("validated parameters");
    let unit = SymbolicAmount::rational(Rational::one());
    let mut n0 = CheckBuilder::new(id("n0-unit-norm"), ANCHOR_NORMS, Expect::Holds);
    let v = h0.mul(&n0_squared(a, be)).reduce();
    n0.record(None, v == unit, || v.to_string(), || "1".into());
    let mut n0_printed = CheckBuilder::new(id("n0-printed"), ANCHOR_NORMS, Expect::Printed);
    let v = h0.mul(&n0_squared_printed(a, be)).reduce();
    n0_printed.record(None, v == unit, || format!("N_0^2 h_0 = {v}"), || "1".into());

    let mut weight_printed = CheckBuilder::new(id("weight-printed"), ANCHOR_NORMS, Expect::Printed);
    let shifted = be + int(2);
    for i in 1..=4 {
        let v = angular_inner(&polys[i], &polys[0], a, &shifted).expect("valid parameters");
        weight_printed.record(Some((0, i)), v.is_zero(), || v.to_string(), || "0".into());
    }

    let mut even_series = CheckBuilder::new(id("even-series"), ANCHOR_SERIES, Expect::Holds);
    let mut odd_series = CheckBuilder::new(id("odd-series-printed"), ANCHOR_SERIES, Expect::Printed);
    for (n, p) in polys.iter().enumerate().take(ORTHO_MAX + 1) {
        let s = little_jacobi_hypergeometric(n, a, be);
        if n % 2 == 0 {
            even_series.compare(Some((0, n)), &s, p);
        } else {
            odd_series.compare(Some((0, n)), &s, p);
        }
    }

    let mut out = vec![
        eigen.finish(),
        ortho.finish(),
        norms.finish(),
        n0.finish(),
        n0_printed.finish(),
        weight_printed.finish(),
        even_series.finish(),
        odd_series.finish(),
    ];
    out.extend(check_radial_polynomials(params, b));
    out.extend(check_spectrum(params, b));
    out
}

fn check_radial_polynomials(params: &Params, b: &Bounds) -> Vec<Check> {
    let id = |name: &str| check_id("orthopoly", name, params);
    let mut ortho = CheckBuilder::new(id("laguerre-orthogonality"), ANCHOR_NORMS, Expect::Holds);
    let mut norm = CheckBuilder::new(id("radial-unit-norm"), ANCHOR_NORMS, Expect::Holds);
    let unit = SymbolicAmount::rational(Rational::one());
    for n in [0, 1, b.n_max.min(3)] {
        let gamma = radial_exponent(n, params);
        let ys: Vec<_> = (0..=LAGUERRE_MAX).map(|m| RadialFunction::basis(m, &gamma)).collect();
        for i in 0..=LAGUERRE_MAX {
            for j in 0..i {
                let v = radial_inner(&ys[i], &ys[j]).expect("same class");
                ortho.record(Some((i, n)), v.is_zero(), || format!("<Y_{i}, Y_{j}> = {v}"), || "0".into());
            }
            // int r dr = int dy / (2 omega).
            let v = radial_inner(&ys[i], &ys[i])
                .expect("same class")
                .mul(&radial_norm_constant(i, &gamma, params.omega()))
                .scale(&(int(1) / (int(2) * params.omega())))
                .reduce();
            norm.record(Some((i, n)), v == unit, || v.to_string(), || "1".into());
        }
    }
    vec![ortho.finish(), norm.finish()]
}

fn check_spectrum(params: &Params, b: &Bounds) -> Vec<Check> {
    let id = |name: &str| check_id("orthopoly", name, params);
    let model = Model::new(params.clone());
    let h = hamiltonian(params);
    let mut eigen = CheckBuilder::new(id("hamiltonian-eigen"), ANCHOR_SPECTRUM, Expect::Holds);
    let mut pq = CheckBuilder::new(id("energy-pq"), ANCHOR_DEGENERACY, Expect::Holds);
    let mut pq_printed = CheckBuilder::new(id("energy-pq-printed"), ANCHOR_DEGENERACY, Expect::Printed);
    let mut shift = CheckBuilder::new(id("degeneracy-shift"), ANCHOR_DEGENERACY, Expect::Holds);
    let (p, q) = (params.p() as usize, params.q() as usize);
    for m in 0..=b.m_max {
        for n in 0..=b.n_max {
            let psi = model.basis(m, n);
            let e = energy(m, n, params);
            let image = h.apply(&model, &psi);
            let expected = psi.scale(&e);
            eigen.record(Some((m, n)), image == expected, || image.render(), || expected.render());
            pq.compare(Some((m, n)), &energy_pq(m, n, params), &e);
            pq_printed.compare(Some((m, n)), &energy_pq_printed(m, n, params), &e);
            if n >= 2 * q {
                shift.compare(Some((m, n)), &energy(m + p, n - 2 * q, params), &e);
            }
        }
    }
    // Degenerate labels satisfy 2 dm + k dn = 0, so the minimal step is
    // (a, -b) with a/b = p/(2q) in lowest terms.
    let step_ratio = Rational::new((p as i64).into(), (2 * q as i64).into());
    let step = (
        step_ratio.numer().to_string().parse::<usize>().expect("small"),
        step_ratio.denom().to_string().parse::<usize>().expect("small"),
    );
    let mut levels = CheckBuilder::new(id("multiplet-step"), ANCHOR_DEGENERACY, Expect::Holds);
    let mut levels_printed = CheckBuilder::new(id("multiplet-step-printed"), ANCHOR_DEGENERACY, Expect::Printed);
    for level in multiplets(params, b.m_max, b.n_max) {
        for w in level.members.windows(2) {
            let (m0, n0) = w[0];
            let (m1, n1) = w[1];
            let d = (m1 - m0, n0 as i64 - n1 as i64);
            let show = |s: (usize, usize)| format!("(+{}, -{})", s.0, s.1);
            let got = format!("(+{}, -{})", d.0, d.1);
            levels.record(Some((m1, n1)), d == (step.0, step.1 as i64), || got.clone(), || show(step));
            levels_printed.record(Some((m1, n1)), d == (p, 2 * q as i64), || got.clone(), || show((p, 2 * q)));
        }
    }
    levels.note(format!("minimal step (+{}, -{})", step.0, step.1));
    vec![eigen.finish(), pq.finish(), pq_printed.finish(), shift.finish(), levels.finish(), levels_printed.finish()]
}

/// Single radial ladder steps on the Laguerre basis, with both signs of the
/// energy term.
pub fn check_radial_ladders(params: &Params, b: &Bounds) -> Vec<Check> {
    let mut out = Vec::new();
    for (sign, suffix, expect) in [
        (EnergySign::Corrected, "", Expect::Holds),
        (EnergySign::Printed, "-printed-sign", Expect::Printed),
    ] {
        let mut down = CheckBuilder::new(check_id("ladders", &format!("k-lowering{suffix}"), params), ANCHOR_RADIAL, expect);
        let mut up = CheckBuilder::new(check_id("ladders", &format!("k-raising{suffix}"), params), ANCHOR_RADIAL, expect);
        for n in 0..=b.n_max {
            let gamma = radial_exponent(n, params);
            for m in 0..=b.m_max {
                let e = energy(m, n, params);
                let y = RadialFunction::basis(m, &gamma);
                // K_{gamma,E} Y_m^gamma = -Y_{m-1}^{gamma+2}.
                let got = k_ladder(&gamma, &e, params.omega(), sign).apply_radial(&y);
                let want = if m == 0 {
                    RadialFunction::zero()
                } else {
                    RadialFunction::basis(m - 1, &(&gamma + int(2))).scale(&int(-1))
                };
                record_radial(&mut down, (m, n), got, want);
                // K_{-gamma,E} Y_m^gamma = -(m+1)(m+gamma) Y_{m+1}^{gamma-2}.
                let got = k_ladder(&-gamma.clone(), &e, params.omega(), sign).apply_radial(&y);
                let c = -(from_usize(m) + int(1)) * (from_usize(m) + &gamma);
                let want = if c.is_zero() {
                    RadialFunction::zero()
                } else {
                    RadialFunction::basis(m + 1, &(&gamma - int(2))).scale(&c)
                };
                record_radial(&mut up, (m, n), got, want);
            }
        }
        out.push(down.finish());
        out.push(up.finish());
    }
    out
}

fn record_radial<E: std::fmt::Debug>(
    chk: &mut CheckBuilder,
    state: (usize, usize),
    got: Result<RadialFunction, E>,
    want: RadialFunction,
) {
    let show = |f: &RadialFunction| format!("y^({}) e^(-y/2) ({})", to_exact_string(&(f.gamma() / int(2))), f.poly().to_string_in("y"));
    match got {
        Ok(f) => chk.record(Some(state), f == want, || show(&f), || show(&want)),
        Err(e) => chk.record(Some(state), false, || format!("{e:?}"), || show(&want)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::report::Status;

    #[test]
    fn orthopoly_checks_pass_at_k_two() {
        let params = Params::from_parts(2, 1, rat(1, 2), rat(1, 2), int(1));
        let checks = check_orthopoly(&params, &Bounds { m_max: 2, n_max: 6 });
        for c in &checks {
            // k = 2 widens the levels beyond the (p, 2q) step.
            let printed = c.id.contains("printed");
            let expected = if printed { Status::DeviationDocumented } else { Status::Pass };
            assert_eq!(c.status, expected, "{}: {}", c.id, c.details);
        }
    }

    #[test]
    fn radial_ladders_need_the_corrected_sign() {
        let params = Params::from_parts(3, 2, int(0), rat(5, 2), int(1));
        let checks = check_radial_ladders(&params, &Bounds { m_max: 3, n_max: 4 });
        for c in &checks {
            let expected = if c.id.contains("printed") { Status::DeviationDocumented } else { Status::Pass };
            assert_eq!(c.status, expected, "{}", c.id);
        }
    }
}
