//! Energies, degeneracies and the spectral substitutions used to turn
//! basis-diagonal actions into polynomials in `H` and `Q`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::orthopoly::angular_eigenvalue;
use crate::rational::{from_usize, int, Params, Rational};

/// `|a_n| = n + (alpha+beta+1)/2`.
pub fn abs_eigenvalue(n: usize, params: &Params) -> Rational {
    from_usize(n) + params.half_sum()
}

/// Radial exponent `gamma = k |a_n|` of the basis state with angular index `n`.
pub fn radial_exponent(n: usize, params: &Params) -> Rational {
    params.k() * abs_eigenvalue(n, params)
}

/// `E_{m,n} = 2 omega [2m + k(n + (alpha+beta+1)/2) + 1]`.
pub fn energy(m: usize, n: usize, params: &Params) -> Rational {
    int(2) * params.omega() * (int(2) * from_usize(m) + radial_exponent(n, params) + int(1))
}

/// Same energy through `(2 omega / q)(2mq + pn + p(alpha+beta+1)/2 + q)`.
pub fn energy_pq(m: usize, n: usize, params: &Params) -> Rational {
    energy_pq_with(m, n, params, &((params.alpha() + params.beta() + int(1)) / int(2)))
}

/// The `k = p/q` form as printed, `(2 omega / q)(2mq + pn + p(alpha+beta+1) + q)`,
/// which lacks the factor 1/2 on the `alpha + beta + 1` term.
pub fn energy_pq_printed(m: usize, n: usize, params: &Params) -> Rational {
    energy_pq_with(m, n, params, &(params.alpha() + params.beta() + int(1)))
}

fn energy_pq_with(m: usize, n: usize, params: &Params, offset: &Rational) -> Rational {
    let p = int(params.p() as i64);
    let q = int(params.q() as i64);
    int(2) * params.omega() / &q
        * (int(2) * from_usize(m) * &q + &p * from_usize(n) + &p * offset + &q)
}

/// `epsilon = m + k n / 2`.
pub fn epsilon(m: usize, n: usize, params: &Params) -> Rational {
    from_usize(m) + params.k() * from_usize(n) / int(2)
}

/// `epsilon` from an energy: `(E - omega k (alpha+beta+1) - 2 omega) / (4 omega)`.
pub fn epsilon_from_energy(e: &Rational, params: &Params) -> Rational {
    let w = params.omega();
    let ab1 = params.alpha() + params.beta() + int(1);
    (e - w * params.k() * ab1 - int(2) * w) / (int(4) * w)
}

/// `n` from the angular eigenvalue `Q`: `-(2Q+alpha+beta+1)/2` on even
/// sectors and `(2Q-alpha-beta-1)/2` on odd ones.
pub fn n_from_q(q: &Rational, even: bool, params: &Params) -> Rational {
    let ab1 = params.alpha() + params.beta() + int(1);
    if even {
        -(int(2) * q + ab1) / int(2)
    } else {
        (int(2) * q - ab1) / int(2)
    }
}

/// Exactly degenerate basis labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnergyLevel {
    #[serde(with = "crate::rational::exact_serde")]
    pub value: Rational,
    pub members: Vec<(usize, usize)>,
}

/// Groups all `(m, n)` with `m <= m_max`, `n <= n_max` by exact energy,
/// in increasing energy; members are ordered by `m`.
pub fn multiplets(params: &Params, m_max: usize, n_max: usize) -> Vec<EnergyLevel> {
    let mut groups: BTreeMap<Rational, Vec<(usize, usize)>> = BTreeMap::new();
    for m in 0..=m_max {
        for n in 0..=n_max {
            groups.entry(energy(m, n, params)).or_default().push((m, n));
        }
    }
    groups
        .into_iter()
        .map(|(value, mut members)| {
            members.sort();
            EnergyLevel { value, members }
        })
        .collect()
}

/// Signed eigenvalue `a_n` for the parameters in `params`.
pub fn signed_eigenvalue(n: usize, params: &Params) -> Rational {
    angular_eigenvalue(n, params.alpha(), params.beta())
}
