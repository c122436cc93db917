//! Quoted spot values checked against the implementation.

use superint_core::ccm::CoulombModel;
use superint_core::operators::{hamiltonian, AngularPrim, EnergySign, LinearOperator, Model, XiPairing};
use superint_core::orthopoly::{angular_eigenvalue, little_jacobi, radial_norm_constant};
use superint_core::poly::Poly;
use superint_core::rational::{int, rat, Params, Rational};
use superint_core::special::pochhammer;
use superint_core::spectrum::energy;
use superint_core::symbolic::SymbolicAmount;
use superint_core::symmetry::XiSystem;

fn ab_pairs() -> Vec<(Rational, Rational)> {
    vec![(int(0), int(0)), (rat(1, 2), rat(1, 2)), (rat(-1, 2), rat(5, 2)), (rat(3, 4), int(0))]
}

#[test]
fn angular_eigenvalues_at_zero_weights() {
    let z = int(0);
    assert_eq!(angular_eigenvalue(0, &z, &z), rat(-1, 2));
    assert_eq!(angular_eigenvalue(1, &z, &z), rat(3, 2));
    assert_eq!(angular_eigenvalue(2, &z, &z), rat(-5, 2));
    for (a, b) in ab_pairs() {
        assert_eq!(angular_eigenvalue(1, &a, &b), (&a + &b + int(3)) / int(2));
    }
}

#[test]
fn j_action_spot_values() {
    for (a, b) in ab_pairs() {
        let p = |n| little_jacobi(n, &a, &b).unwrap();
        let jp = AngularPrim::JPlus.apply_poly(&p(1), &a, &b);
        assert_eq!(jp, p(2).scale(&(int(2) * (&a + &b + int(4)))));
        let jm = AngularPrim::JMinus.apply_poly(&p(0), &a, &b);
        assert_eq!(jm, p(1).scale(&(int(-2) * (&a + &b + int(2)))));
    }
}

#[test]
fn j_plus_anticommutes_with_q() {
    for (a, b) in ab_pairs() {
        for n in 0..=6 {
            let p = little_jacobi(n, &a, &b).unwrap();
            let q = |f: &Poly| AngularPrim::QTilde.apply_poly(f, &a, &b);
            let jp = |f: &Poly| AngularPrim::JPlus.apply_poly(f, &a, &b);
            let anti = &jp(&q(&p)) + &q(&jp(&p));
            assert_eq!(anti, jp(&p).scale(&int(-1)), "n={n}");
        }
    }
}

#[test]
fn double_step_coefficients() {
    for (a, b) in ab_pairs() {
        let p = |n| little_jacobi(n, &a, &b).unwrap();
        let jp = |f: &Poly| AngularPrim::JPlus.apply_poly(f, &a, &b);
        let jm = |f: &Poly| AngularPrim::JMinus.apply_poly(f, &a, &b);
        let half_sum = (&a + &b) / int(2);
        let d1 = int(-16) * pochhammer(&(&half_sum + int(2)), 2);
        assert_eq!(jm(&jp(&p(1))), p(3).scale(&d1));
        let d0 = int(-16) * pochhammer(&(&half_sum + int(1)), 2);
        assert_eq!(jp(&jm(&p(0))), p(2).scale(&d0));
    }
}

#[test]
fn ground_energy_and_spot_level() {
    for (p, q) in [(1, 1), (2, 1), (3, 2)] {
        for (a, b) in ab_pairs() {
            let params = Params::from_parts(p, q, a.clone(), b.clone(), rat(3, 2));
            let k = params.k();
            let expected = int(2) * params.omega() * (k * (&a + &b + int(1)) / int(2) + int(1));
            assert_eq!(energy(0, 0, &params), expected);
            let model = Model::new(params.clone());
            let psi = model.basis(0, 0);
            let diff = hamiltonian(&params).apply(&model, &psi).sub(&psi.scale(&expected));
            assert!(diff.is_zero());
        }
    }
    let params = Params::from_parts(2, 1, rat(1, 2), rat(1, 2), int(1));
    assert_eq!(energy(1, 2, &params), int(18));
}

#[test]
fn radial_normalization_at_m_zero() {
    for gamma in [rat(1, 2), int(3), rat(7, 3)] {
        let omega = rat(5, 2);
        let m2 = radial_norm_constant(0, &gamma, &omega);
        let base = SymbolicAmount::gamma(&gamma + int(1)).unwrap().recip().unwrap();
        assert_eq!(m2.ratio_to(&base), Some(int(2) * &omega));
    }
}

#[test]
fn integrals_commute_and_shift_q() {
    let params = Params::from_parts(1, 1, int(0), int(0), int(1));
    let model = Model::new(params.clone());
    let sys = XiSystem::new(&model, XiPairing::Corrected, EnergySign::Corrected);
    let xi1 = sys.operator(0);
    let psi = model.basis(1, 2);
    let lhs = xi1.commutator(&LinearOperator::q()).apply(&model, &psi);
    let rhs = xi1.apply(&model, &psi).scale(&int(-2));
    assert!(lhs.sub(&rhs).is_zero());
    assert!(!rhs.is_zero());

    let h = hamiltonian(&params);
    assert!(xi1.commutator(&h).apply(&model, &model.basis(0, 1)).is_zero());

    let image = sys.action(0, 3, 4).unwrap();
    assert!(!image.is_empty());
    for (m, n) in image.keys() {
        assert_eq!(energy(*m, *n, &params), energy(3, 4, &params));
    }
}

#[test]
fn coulomb_angular_label_halves_k() {
    let cm = CoulombModel::new(Params::from_parts(2, 1, rat(1, 2), rat(1, 2), int(1)), int(1)).unwrap();
    assert_eq!(cm.half_k(), int(1));
}
