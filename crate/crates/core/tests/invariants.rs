use proptest::prelude::*;

use superint_core::ccm::{coulomb_eigen_check, coulomb_energy, CoulombModel, EigenOutcome};
use superint_core::operators::{hamiltonian, EnergySign, LinearOperator, Model, XiPairing};
use superint_core::orthopoly::{angular_eigenvalue, angular_inner, little_jacobi, norm_ratio, norm_ratio_closed_form};
use superint_core::rational::{parse_rational, rat, to_exact_string, Params, Rational};
use superint_core::report::{Bounds, Expect, Status};
use superint_core::spectrum::energy;
use superint_core::suites::{run_report, Suite, SuiteOptions};
use superint_core::symmetry::{check_commutes_with_h, XiSystem};

/// Rationals strictly above -1.
fn weight() -> impl Strategy<Value = Rational> {
    (1i64..6).prop_flat_map(|d| ((1 - d)..(4 * d)).prop_map(move |n| rat(n, d)))
}

fn coupling() -> impl Strategy<Value = (i64, i64)> {
    (1i64..4, 1i64..4)
}

fn params() -> impl Strategy<Value = Params> {
    (coupling(), weight(), weight(), 1i64..4).prop_map(|((p, q), a, b, w)| Params::new(rat(p, q), a, b, rat(w, 2)).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn q_tilde_diagonalizes_the_basis(a in weight(), b in weight(), n in 0usize..9) {
        let params = Params::new(rat(1, 1), a.clone(), b.clone(), rat(1, 1)).unwrap();
        let p = little_jacobi(n, &a, &b).unwrap();
        let qp = LinearOperator::q().apply_x(&params, &p).unwrap();
        prop_assert_eq!(qp, p.scale(&angular_eigenvalue(n, &a, &b)));
    }

    #[test]
    fn distinct_degrees_are_orthogonal(a in weight(), b in weight(), m in 0usize..7, n in 0usize..7) {
        prop_assume!(m != n);
        let pm = little_jacobi(m, &a, &b).unwrap();
        let pn = little_jacobi(n, &a, &b).unwrap();
        prop_assert!(angular_inner(&pm, &pn, &a, &b).unwrap().is_zero());
    }

    #[test]
    fn norm_ratios_match_closed_form(a in weight(), b in weight(), n in 0usize..8) {
        prop_assert_eq!(norm_ratio(n, &a, &b).unwrap(), norm_ratio_closed_form(n, &a, &b));
    }

    #[test]
    fn basis_states_are_eigenstates(params in params(), m in 0usize..4, n in 0usize..6) {
        let model = Model::new(params.clone());
        let psi = model.basis(m, n);
        let diff = hamiltonian(&params).apply(&model, &psi).sub(&psi.scale(&energy(m, n, &params)));
        prop_assert!(diff.is_zero());
    }

    #[test]
    fn ladder_shift_preserves_energy(params in params(), m in 0usize..5, n in 0usize..12) {
        let (p, q) = (params.p() as usize, params.q() as usize);
        prop_assume!(n % 2 == 0 && n >= 2 * q);
        prop_assert_eq!(energy(m + p, n - 2 * q, &params), energy(m, n, &params));
    }

    #[test]
    fn exact_strings_round_trip(n in -10_000i64..10_000, d in 1i64..10_000) {
        let r = rat(n, d);
        prop_assert_eq!(parse_rational(&to_exact_string(&r)).unwrap(), r);
    }

    #[test]
    fn mapped_coulomb_states_are_exact(params in params(), g in (-4i64..5).prop_filter("nonzero", |g| *g != 0), m in 0usize..3, n in 0usize..4) {
        let cm = CoulombModel::new(params.clone(), rat(g, 1)).unwrap();
        let model = Model::new(params);
        let e = coulomb_energy(m, n, &cm);
        prop_assert!(e < rat(0, 1));
        let holds = matches!(coulomb_eigen_check(&model, &cm, m, n, &e), EigenOutcome::Holds { .. });
        prop_assert!(holds);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn integrals_commute_with_h(params in params()) {
        let model = Model::new(params);
        let sys = XiSystem::new(&model, XiPairing::Corrected, EnergySign::Corrected);
        let b = Bounds { m_max: 2, n_max: 5 };
        for c in check_commutes_with_h(&sys, &b, "", Expect::Holds) {
            prop_assert_eq!(c.status, Status::Pass, "{}", c.id);
        }
    }

    #[test]
    fn reports_are_deterministic(params in params()) {
        let opts = SuiteOptions { bounds: Bounds { m_max: 1, n_max: 3 }, ..SuiteOptions::default() };
        let a = run_report(Suite::Orthopoly, &[params.clone()], &opts);
        let b = run_report(Suite::Orthopoly, &[params], &opts);
        prop_assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
