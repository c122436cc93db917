//! Verification suites: named groups of checks run over parameter sets.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::ccm::{verify_coulomb, CoulombModel};
use crate::checks::{check_orthopoly, check_radial_ladders};
use crate::operators::{EnergySign, Model, XiPairing};
use crate::rational::{int, rat, Params, Rational};
use crate::report::{Bounds, Check, CheckBuilder, Expect, Report};
use crate::symmetry::{
    check_adjointness, check_angular_lemmas, check_coefficient_products, check_commutes_with_h, check_factor_forms,
    check_q_commutators, check_radial_lemmas, check_theorem, check_xi_actions, structure_polynomials, StructureGrid,
    XiSystem,
};

/// Largest `l` in the appendix lemmas.
pub const LEMMA_MAX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Orthopoly,
    Ladders,
    Integrals,
    Algebra,
    Adjoint,
    Appendix,
    Ccm,
}

impl Suite {
    pub const PARTS: [Suite; 7] = [
        Suite::Orthopoly,
        Suite::Ladders,
        Suite::Integrals,
        Suite::Algebra,
        Suite::Adjoint,
        Suite::Appendix,
        Suite::Ccm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Orthopoly => "orthopoly",
            Suite::Ladders => "ladders",
            Suite::Integrals => "integrals",
            Suite::Algebra => "algebra",
            Suite::Adjoint => "adjoint",
            Suite::Appendix => "appendix",
            Suite::Ccm => "ccm",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        std::iter::once(Suite::All)
            .chain(Suite::PARTS)
            .find(|v| v.name() == s)
            .ok_or_else(|| format!("unknown suite '{s}'"))
    }
}

/// Options shared by every suite.
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteOptions {
    pub bounds: Bounds,
    /// Coulomb coupling used by the `ccm` suite.
    pub g: Rational,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { bounds: Bounds::default(), g: int(1) }
    }
}

/// `k` values of the default grid, as `(p, q)`.
pub const DEFAULT_K: [(i64, i64); 6] = [(1, 1), (2, 1), (3, 1), (1, 2), (3, 2), (2, 3)];

/// The `alpha`, `beta` values of the default grid.
pub fn default_ab() -> Vec<Rational> {
    vec![rat(-1, 2), int(0), rat(1, 2), rat(5, 2)]
}

/// All 96 tuples of the default grid with `omega = 1`.
pub fn default_grid() -> Vec<Params> {
    let ab = default_ab();
    let mut out = Vec::new();
    for (p, q) in DEFAULT_K {
        for a in &ab {
            for b in &ab {
                out.push(Params::from_parts(p, q, a.clone(), b.clone(), int(1)));
            }
        }
    }
    out
}

fn symmetry_checks(model: &Model, suite: Suite, b: &Bounds) -> Vec<Check> {
    let sys = XiSystem::new(model, XiPairing::Corrected, EnergySign::Corrected);
    let mut out = Vec::new();
    match suite {
        Suite::Ladders => {
            out.extend(check_xi_actions(&sys, b));
            out.extend(check_radial_ladders(model.params(), b));
            let lemmas = check_angular_lemmas(model, b, 1);
            out.extend(lemmas.into_iter().filter(|c| c.id.starts_with("ladders.")));
        }
        Suite::Integrals => {
            out.extend(check_commutes_with_h(&sys, b, "", Expect::Holds));
            let printed = XiSystem::new(model, XiPairing::Printed, EnergySign::Corrected);
            out.extend(check_commutes_with_h(&printed, b, "-printed-pairing", Expect::Printed));
        }
        Suite::Algebra => {
            out.extend(check_q_commutators(&sys, b));
            out.extend(check_coefficient_products(&sys, b));
            match structure_polynomials(&sys, StructureGrid::default_for(model.params())) {
                Ok(r) => out.extend(r.checks),
                Err(e) => {
                    let id = crate::symmetry::check_id("algebra", "structure-polynomials", model.params());
                    let mut chk = CheckBuilder::new(id, "symmetry algebra: structure polynomials in H and Q", Expect::Holds);
                    chk.record(None, false, || e.to_string(), String::new);
                    out.push(chk.finish());
                }
            }
        }
        Suite::Adjoint => out.extend(check_adjointness(&sys, b)),
        Suite::Appendix => {
            let lemmas = check_angular_lemmas(model, b, LEMMA_MAX);
            out.extend(lemmas.into_iter().filter(|c| c.id.starts_with("appendix.")));
            out.extend(check_radial_lemmas(model, b, LEMMA_MAX));
            out.extend(check_factor_forms(model, b, LEMMA_MAX));
            out.extend(check_theorem(model, b));
        }
        _ => {}
    }
    out
}

/// Runs one suite (or all of them) for a single parameter set.
pub fn run_suite(suite: Suite, params: &Params, opts: &SuiteOptions) -> Vec<Check> {
    let b = &opts.bounds;
    match suite {
        Suite::All => Suite::PARTS.iter().flat_map(|s| run_suite(*s, params, opts)).collect(),
        Suite::Orthopoly => check_orthopoly(params, b),
        Suite::Ccm => {
            let cm = CoulombModel::new(params.clone(), opts.g.clone()).expect("nonzero coupling");
            verify_coulomb(&cm, b)
        }
        other => symmetry_checks(&Model::new(params.clone()), other, b),
    }
}

/// Runs a suite over several parameter sets and merges the checks into one
/// report sorted by check id.
pub fn run_report(suite: Suite, params: &[Params], opts: &SuiteOptions) -> Report {
    let checks = params.iter().flat_map(|p| run_suite(suite, p, opts)).collect();
    Report::new(suite.name(), params.to_vec(), opts.bounds.clone(), checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Status;

    #[test]
    fn suite_names_round_trip() {
        for s in std::iter::once(Suite::All).chain(Suite::PARTS) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn default_grid_has_96_tuples() {
        assert_eq!(default_grid().len(), 96);
    }

    #[test]
    fn every_check_is_prefixed_by_its_suite() {
        let params = Params::from_parts(1, 1, rat(1, 2), int(0), int(1));
        let opts = SuiteOptions { bounds: Bounds { m_max: 2, n_max: 4 }, g: int(1) };
        for s in Suite::PARTS {
            let checks = run_suite(s, &params, &opts);
            assert!(!checks.is_empty());
            for c in &checks {
                assert!(c.id.starts_with(&format!("{}.", s.name())), "{}", c.id);
                assert!(!c.anchor.is_empty());
                assert_ne!(c.status, Status::Fail, "{} {:?} {:?}", c.id, c.lhs, c.rhs);
            }
        }
    }
}
