//! The constants of motion `Xi_1`, `Xi_2`: their action on the separated
//! basis, closed-form ladder coefficients, and the checks on conservation,
//! the `Q` relations, the structure polynomials, adjointness and the
//! ladder lemmas behind the commutation theorem.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use thiserror::Error;

use crate::bipoly::{interpolate_grid, BiPoly};
use crate::operators::{
    hamiltonian, j_power, k_factor_closed_form, k_factor_printed, k_power_h, xi_operators,
    AngularPrim, EnergySign, JPower, LinearOperator, Model, OpError, WaveVector, XiPairing,
};
use crate::orthopoly::{norm_ratio, radial_norm_constant};
use crate::poly::Poly;
use crate::rational::{from_usize, int, to_exact_string, Params, Rational};
use crate::report::{Bounds, Check, CheckBuilder, Expect};
use crate::special::{factorial, pochhammer};
use crate::spectrum::{energy, epsilon_from_energy, radial_exponent};

/// Basis expansion `{(m, n) -> c}`.
pub type Coeffs = BTreeMap<(usize, usize), Rational>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("interpolation grid {m_points}x{n_points} cannot determine a polynomial of degree {need_m} in m and {need_n} in n")]
    InterpolationUnderdetermined {
        m_points: usize,
        n_points: usize,
        need_m: usize,
        need_n: usize,
    },
    #[error("operator left the basis: {0}")]
    Operator(#[from] OpError),
}

pub fn render_coeffs(c: &Coeffs) -> String {
    if c.is_empty() {
        return "0".into();
    }
    c.iter()
        .map(|((m, n), v)| format!("({})*Psi[{m},{n}]", to_exact_string(v)))
        .collect::<Vec<_>>()
        .join(" + ")
}

pub(crate) fn check_id(suite: &str, name: &str, params: &Params) -> String {
    format!("{suite}.{name}[{}]", params.tag())
}

/// `prod num / prod den`, with a vanishing numerator taking precedence over
/// a vanishing denominator. `None` marks a genuine pole.
fn ratio(num: &[Rational], den: &[Rational]) -> Option<Rational> {
    let top: Rational = num.iter().product();
    if top.is_zero() {
        return Some(top);
    }
    let bottom: Rational = den.iter().product();
    (!bottom.is_zero()).then(|| top / bottom)
}

fn sign(e: u64) -> Rational {
    if e % 2 == 0 {
        int(1)
    } else {
        int(-1)
    }
}

/// Closed-form ladder coefficients.
#[derive(Clone, Debug)]
pub struct LadderCoefficients {
    params: Params,
}

impl LadderCoefficients {
    pub fn new(params: &Params) -> Self {
        LadderCoefficients {
            params: params.clone(),
        }
    }

    fn q(&self) -> usize {
        self.params.q() as usize
    }

    fn p(&self) -> usize {
        self.params.p() as usize
    }

    fn minus_sixteen_q(&self) -> Rational {
        (0..self.q()).map(|_| int(-16)).product()
    }

    fn half_ab(&self) -> Rational {
        (self.params.alpha() + self.params.beta()) / int(2)
    }

    fn angular_den(&self, n: usize) -> Rational {
        pochhammer(&(-self.half_ab() - from_usize(n)), 2 * self.q())
    }

    fn lowering_even_factors(&self, n: usize) -> Vec<Rational> {
        let (al, be, q) = (self.params.alpha(), self.params.beta(), self.q());
        let nr = from_usize(n);
        vec![
            pochhammer(&(-&nr / int(2)), q),
            pochhammer(&(-(al + be + &nr) / int(2)), q),
            pochhammer(&((int(1) - al - &nr) / int(2)), q),
            pochhammer(&((int(1) - be - &nr) / int(2)), q),
        ]
    }

    fn lowering_odd_factors(&self, n: usize) -> Vec<Rational> {
        let (al, be, q) = (self.params.alpha(), self.params.beta(), self.q());
        let nr = from_usize(n);
        vec![
            pochhammer(&((int(1) - &nr) / int(2)), q),
            pochhammer(&((int(1) - al - be - &nr) / int(2)), q),
            pochhammer(&(-(al + &nr) / int(2)), q),
            pochhammer(&(-(be + &nr) / int(2)), q),
        ]
    }

    /// `(J- J+)^q P_n = c_n P_{n-2q}` for even `n`.
    pub fn c(&self, n: usize) -> Option<Rational> {
        let mut num = self.lowering_even_factors(n);
        num.push(self.minus_sixteen_q());
        ratio(&num, &[self.angular_den(n)])
    }

    /// `(J- J+)^q P_n = d_n P_{n+2q}` for odd `n`; also `d~_n`.
    pub fn d(&self, n: usize) -> Rational {
        self.minus_sixteen_q() * pochhammer(&(self.half_ab() + from_usize(n) + int(1)), 2 * self.q())
    }

    /// `(J+ J-)^q P_n = c~_n P_{n-2q}` for odd `n`.
    pub fn c_tilde(&self, n: usize) -> Option<Rational> {
        let mut num = self.lowering_odd_factors(n);
        num.push(self.minus_sixteen_q());
        ratio(&num, &[self.angular_den(n)])
    }

    pub fn d_tilde(&self, n: usize) -> Rational {
        self.d(n)
    }

    /// `(-1)^p (m+1)_p (k|a_n| + m - p + 1)_p`, the radial raising factor.
    fn radial_raise(&self, m: usize, n: usize) -> Vec<Rational> {
        let p = self.p();
        let g = radial_exponent(n, &self.params);
        vec![
            sign(p as u64),
            pochhammer(&from_usize(m + 1), p),
            pochhammer(&(g + from_usize(m) - from_usize(p) + int(1)), p),
        ]
    }

    pub fn ell_minus(&self, m: usize, n: usize) -> Option<Rational> {
        let mut num = self.radial_raise(m, n);
        num.extend(self.lowering_even_factors(n));
        num.push(self.minus_sixteen_q());
        ratio(&num, &[self.angular_den(n)])
    }

    pub fn ell_minus_tilde(&self, m: usize, n: usize) -> Option<Rational> {
        let mut num = self.radial_raise(m, n);
        num.extend(self.lowering_odd_factors(n));
        num.push(self.minus_sixteen_q());
        ratio(&num, &[self.angular_den(n)])
    }

    pub fn ell_plus(&self, _m: usize, n: usize) -> Rational {
        sign(self.params.p()) * self.d(n)
    }

    pub fn ell_plus_tilde(&self, m: usize, n: usize) -> Rational {
        self.ell_plus(m, n)
    }

    /// Expected action of `Xi_which` (0 or 1) on `Psi_{m,n}`; `None` if the
    /// closed form has a pole there.
    pub fn expected_action(&self, which: usize, m: usize, n: usize) -> Option<Coeffs> {
        let (p, q2) = (self.p(), 2 * self.q());
        let even = n % 2 == 0;
        let lowers_n = (which == 0) == even;
        let mut out = Coeffs::new();
        if lowers_n {
            let c = if even {
                self.ell_minus(m, n)?
            } else {
                self.ell_minus_tilde(m, n)?
            };
            if !c.is_zero() {
                out.insert((m + p, n.checked_sub(q2)?), c);
            }
        } else if m >= p {
            let c = self.ell_plus(m, n);
            if !c.is_zero() {
                out.insert((m - p, n + q2), c);
            }
        }
        Some(out)
    }
}

/// `Xi_1`, `Xi_2` bound to a model, with cached basis actions.
pub struct XiSystem<'a> {
    model: &'a Model,
    xi: [LinearOperator; 2],
    h: LinearOperator,
    raw: RefCell<HashMap<(usize, usize, usize), WaveVector>>,
}

impl<'a> XiSystem<'a> {
    pub fn new(model: &'a Model, pairing: XiPairing, sign: EnergySign) -> Self {
        let (x1, x2) = xi_operators(model.params(), pairing, sign);
        XiSystem {
            model,
            xi: [x1, x2],
            h: hamiltonian(model.params()),
            raw: RefCell::new(HashMap::new()),
        }
    }

    pub fn model(&self) -> &Model {
        self.model
    }

    pub fn params(&self) -> &Params {
        self.model.params()
    }

    pub fn operator(&self, which: usize) -> &LinearOperator {
        &self.xi[which]
    }

    /// `Xi_which Psi_{m,n}` as computed by the operator tree.
    pub fn apply(&self, which: usize, m: usize, n: usize) -> WaveVector {
        if let Some(v) = self.raw.borrow().get(&(which, m, n)) {
            return v.clone();
        }
        let v = self.xi[which].apply(self.model, &self.model.basis(m, n));
        self.raw.borrow_mut().insert((which, m, n), v.clone());
        v
    }

    pub fn action(&self, which: usize, m: usize, n: usize) -> Result<Coeffs, OpError> {
        self.apply(which, m, n).decompose(self.model)
    }

    /// `Xi_which` applied to a basis expansion, by linearity.
    pub fn apply_coeffs(&self, which: usize, v: &Coeffs) -> Result<Coeffs, OpError> {
        let mut out = Coeffs::new();
        for (&(m, n), c) in v {
            for (key, d) in self.action(which, m, n)? {
                *out.entry(key).or_insert_with(Rational::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    /// `Xi_a Xi_b Psi_{m,n}`.
    pub fn product(&self, a: usize, b: usize, m: usize, n: usize) -> Result<Coeffs, OpError> {
        self.apply_coeffs(a, &self.action(b, m, n)?)
    }
}

fn states(b: &Bounds) -> impl Iterator<Item = (usize, usize)> + '_ {
    (0..=b.m_max).flat_map(move |m| (0..=b.n_max).map(move |n| (m, n)))
}

const ANCHOR_ACTION: &str = "constants of motion: action on the separated basis";
const ANCHOR_COMMUTE: &str = "constants of motion: commutation with the Hamiltonian";
const ANCHOR_Q: &str = "symmetry algebra: relations with the supercharge";
const ANCHOR_STRUCTURE: &str = "symmetry algebra: structure polynomials in H and Q";
const ANCHOR_K1: &str = "symmetry algebra: explicit relations for k = 1";
const ANCHOR_PRODUCTS: &str = "symmetry algebra: products of ladder coefficients";
const ANCHOR_ADJOINT: &str = "constants of motion: mutual adjointness";
const ANCHOR_LEMMA_J: &str = "appendix: angular ladder commutator lemma";
const ANCHOR_LEMMA_K: &str = "appendix: radial ladder commutator lemma";
const ANCHOR_FACTOR: &str = "appendix: factorized radial ladder";
const ANCHOR_THEOREM: &str = "appendix: commutation theorem";

/// Single-target property, coefficient agreement and energy preservation.
pub fn check_xi_actions(sys: &XiSystem, b: &Bounds) -> Vec<Check> {
    let params = sys.params();
    let coeffs = LadderCoefficients::new(params);
    let mut out = Vec::new();
    for which in 0..2 {
        let name = format!("xi{}", which + 1);
        let mut single = CheckBuilder::new(check_id("ladders", &format!("{name}-single-target"), params), ANCHOR_ACTION, Expect::Holds);
        let mut coeff = CheckBuilder::new(check_id("ladders", &format!("{name}-coefficients"), params), ANCHOR_ACTION, Expect::Holds);
        let mut energy_ok = CheckBuilder::new(check_id("ladders", &format!("{name}-preserves-energy"), params), ANCHOR_ACTION, Expect::Holds);
        let mut poles = 0;
        for (m, n) in states(b) {
            let act = match sys.action(which, m, n) {
                Ok(a) => a,
                Err(e) => {
                    single.record(Some((m, n)), false, || e.to_string(), || "a basis expansion".into());
                    continue;
                }
            };
            single.record(Some((m, n)), act.len() <= 1, || render_coeffs(&act), || "at most one basis state".into());
            let e0 = energy(m, n, params);
            for &(mt, nt) in act.keys() {
                let e1 = energy(mt, nt, params);
                energy_ok.compare(Some((m, n)), &e1, &e0);
            }
            match coeffs.expected_action(which, m, n) {
                Some(exp) => coeff.record(Some((m, n)), exp == act, || render_coeffs(&act), || render_coeffs(&exp)),
                None => poles += 1,
            }
        }
        if poles > 0 {
            coeff.note(format!("{poles} state(s) skipped where the closed form has a pole"));
        }
        out.extend([single.finish(), coeff.finish(), energy_ok.finish()]);
    }
    out
}

/// `[Xi, H] = 0` on every basis state, computed as `Xi(H Psi) - H(Xi Psi)`.
pub fn check_commutes_with_h(sys: &XiSystem, b: &Bounds, label: &str, expect: Expect) -> Vec<Check> {
    let model = sys.model();
    let params = sys.params();
    let mut out = Vec::new();
    for which in 0..2 {
        let id = check_id("integrals", &format!("xi{}-commutes-with-h{label}", which + 1), params);
        let mut chk = CheckBuilder::new(id, ANCHOR_COMMUTE, expect);
        for (m, n) in states(b) {
            let psi = model.basis(m, n);
            let left = sys.operator(which).apply(model, &sys.h.apply(model, &psi));
            let right = sys.h.apply(model, &sys.apply(which, m, n));
            let comm = left.sub(&right);
            chk.record(Some((m, n)), comm.is_zero(), || comm.render(), || "0".into());
        }
        out.push(chk.finish());
    }
    out
}

/// `[Xi_1, Q] = -2q Xi_1` and `[Xi_2, Q] = 2q Xi_2`.
pub fn check_q_commutators(sys: &XiSystem, b: &Bounds) -> Vec<Check> {
    let model = sys.model();
    let params = sys.params();
    let q_op = LinearOperator::Angular(AngularPrim::QTilde);
    let two_q = int(2 * params.q() as i64);
    let mut out = Vec::new();
    for which in 0..2 {
        let factor = if which == 0 { -two_q.clone() } else { two_q.clone() };
        let id = check_id("algebra", &format!("xi{}-q-commutator", which + 1), params);
        let mut chk = CheckBuilder::new(id, ANCHOR_Q, Expect::Holds);
        for (m, n) in states(b) {
            let psi = model.basis(m, n);
            let xi_psi = sys.apply(which, m, n);
            let lhs = sys
                .operator(which)
                .apply(model, &q_op.apply(model, &psi))
                .sub(&q_op.apply(model, &xi_psi));
            let rhs = xi_psi.scale(&factor);
            chk.record(Some((m, n)), lhs == rhs, || lhs.render(), || rhs.render());
        }
        out.push(chk.finish());
    }
    out
}

/// Interpolated structure polynomials and the checks made on them.
#[derive(Clone, Debug)]
pub struct StructureResult {
    /// `[Xi_1, Xi_2]` as a polynomial in `(H, Q)`, from the even branch.
    pub commutator: BiPoly,
    pub anticommutator: BiPoly,
    /// Even and odd branch polynomials, in that order.
    pub commutator_branches: [BiPoly; 2],
    pub anticommutator_branches: [BiPoly; 2],
    pub checks: Vec<Check>,
}

/// Number of `m` and `n` nodes (per parity) used for interpolation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureGrid {
    pub m_points: usize,
    pub n_points: usize,
}

impl StructureGrid {
    pub fn default_for(params: &Params) -> Self {
        let (p, q) = (params.p() as usize, params.q() as usize);
        StructureGrid {
            m_points: 2 * p + 2,
            n_points: 2 * p + 4 * q + 1,
        }
    }
}

/// `(m, n) -> (H, Q)` substitution for one parity, as linear forms.
fn spectral_substitution(params: &Params, even: bool) -> (BiPoly, BiPoly) {
    let w4 = int(4) * params.omega();
    let ab1 = params.alpha() + params.beta() + int(1);
    let half = ab1.clone() / int(2);
    // n = -Q - (ab1)/2 on even sectors, Q - (ab1)/2 on odd ones.
    let n_of_q = if even {
        BiPoly::linear(-half, int(0), int(-1))
    } else {
        BiPoly::linear(-half, int(0), int(1))
    };
    // epsilon = (H - omega k ab1 - 2 omega) / (4 omega), m = epsilon - k n / 2.
    let eps_const = -(params.omega() * params.k() * &ab1 + int(2) * params.omega()) / &w4;
    let eps = BiPoly::linear(eps_const, int(1) / &w4, int(0));
    let m_of = eps.sub(&n_of_q.scale(&(params.k() / int(2))));
    (m_of, n_of_q)
}

struct BranchData {
    comm: BiPoly,
    anti: BiPoly,
}

fn diagonal_values(
    sys: &XiSystem,
    m: usize,
    n: usize,
    diag: &mut [CheckBuilder; 2],
) -> Result<(Rational, Rational), OpError> {
    let a = sys.product(0, 1, m, n)?;
    let b = sys.product(1, 0, m, n)?;
    let mut comm = a.clone();
    let mut anti = a;
    for (k, v) in b {
        *comm.entry(k).or_insert_with(Rational::zero) -= &v;
        *anti.entry(k).or_insert_with(Rational::zero) += &v;
    }
    let mut vals = Vec::new();
    for (i, map) in [comm, anti].into_iter().enumerate() {
        let off: Coeffs = map
            .iter()
            .filter(|(k, v)| **k != (m, n) && !v.is_zero())
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        diag[i].record(Some((m, n)), off.is_empty(), || render_coeffs(&off), || "0".into());
        vals.push(map.get(&(m, n)).cloned().unwrap_or_else(Rational::zero));
    }
    let anti = vals.pop().expect("two values");
    let comm = vals.pop().expect("two values");
    Ok((comm, anti))
}

/// Interpolates the diagonal actions of `[Xi_1, Xi_2]` and `{Xi_1, Xi_2}`
/// over an `(m, n)` grid per parity of `n` and converts them to `(H, Q)`.
pub fn structure_polynomials(sys: &XiSystem, grid: StructureGrid) -> Result<StructureResult, SymmetryError> {
    let params = sys.params().clone();
    let (p, q) = (params.p() as usize, params.q() as usize);
    let (need_m, need_n) = (2 * p, p + 4 * q);
    if grid.m_points < need_m + 1 || grid.n_points < need_n + 1 {
        return Err(SymmetryError::InterpolationUnderdetermined {
            m_points: grid.m_points,
            n_points: grid.n_points,
            need_m,
            need_n,
        });
    }
    let id = |name: &str| check_id("algebra", name, &params);
    let mut diag = [
        CheckBuilder::new(id("commutator-diagonal"), ANCHOR_STRUCTURE, Expect::Holds),
        CheckBuilder::new(id("anticommutator-diagonal"), ANCHOR_STRUCTURE, Expect::Holds),
    ];
    let mut reproduce = [
        CheckBuilder::new(id("commutator-interpolation"), ANCHOR_STRUCTURE, Expect::Holds),
        CheckBuilder::new(id("anticommutator-interpolation"), ANCHOR_STRUCTURE, Expect::Holds),
    ];
    let mut branches: Vec<BranchData> = Vec::new();
    for parity in 0..2 {
        let ms: Vec<usize> = (0..grid.m_points).collect();
        let ns: Vec<usize> = (0..grid.n_points).map(|i| 2 * i + parity).collect();
        let mut comm_vals = vec![vec![Rational::zero(); ns.len()]; ms.len()];
        let mut anti_vals = comm_vals.clone();
        for (i, &m) in ms.iter().enumerate() {
            for (j, &n) in ns.iter().enumerate() {
                let (c, a) = diagonal_values(sys, m, n, &mut diag)?;
                comm_vals[i][j] = c;
                anti_vals[i][j] = a;
            }
        }
        let xs: Vec<Rational> = ms.iter().map(|&m| from_usize(m)).collect();
        let ys: Vec<Rational> = ns.iter().map(|&n| from_usize(n)).collect();
        let fc = interpolate_grid(&xs, &ys, &comm_vals);
        let fa = interpolate_grid(&xs, &ys, &anti_vals);
        let (sm, sn) = spectral_substitution(&params, parity == 0);
        let gc = fc.substitute(&sm, &sn);
        let ga = fa.substitute(&sm, &sn);
        // Grid values plus held-out states one step beyond the grid.
        let m_out = grid.m_points;
        let n_out = ns[ns.len() - 1] + 2;
        let mut tests: Vec<(usize, usize, Option<(Rational, Rational)>)> = Vec::new();
        for (i, &m) in ms.iter().enumerate() {
            for (j, &n) in ns.iter().enumerate() {
                tests.push((m, n, Some((comm_vals[i][j].clone(), anti_vals[i][j].clone()))));
            }
        }
        for &n in ns.iter().take(3) {
            tests.push((m_out, n, None));
        }
        for m in 0..3 {
            tests.push((m, n_out, None));
        }
        for (m, n, known) in tests {
            let (c, a) = match known {
                Some(v) => v,
                None => diagonal_values(sys, m, n, &mut diag)?,
            };
            let h = energy(m, n, &params);
            let qv = sys.model().eigenvalue(n);
            let pc = gc.eval(&h, &qv);
            let pa = ga.eval(&h, &qv);
            reproduce[0].compare(Some((m, n)), &pc, &c);
            reproduce[1].compare(Some((m, n)), &pa, &a);
        }
        branches.push(BranchData { comm: gc, anti: ga });
    }
    let odd = branches.pop().expect("two branches");
    let even = branches.pop().expect("two branches");
    let mut checks: Vec<Check> = diag.into_iter().map(CheckBuilder::finish).collect();
    checks.extend(reproduce.into_iter().map(CheckBuilder::finish));
    for (name, e, o) in [("commutator", &even.comm, &odd.comm), ("anticommutator", &even.anti, &odd.anti)] {
        let mut br = CheckBuilder::new(id(&format!("{name}-branches-coincide")), ANCHOR_STRUCTURE, Expect::Holds);
        br.record(None, e == o, || format!("even: {e}"), || format!("odd: {o}"));
        checks.push(br.finish());
        let dq = e.degree_y().unwrap_or(0);
        let dh = e.degree_x().unwrap_or(0);
        let mut deg = CheckBuilder::new(id(&format!("{name}-degree-bound")), ANCHOR_STRUCTURE, Expect::Holds);
        deg.record(
            None,
            dq <= 2 * p + 4 * q && dh <= 2 * p,
            || format!("deg_Q={dq}, deg_H={dh}"),
            || format!("deg_Q<={}, deg_H<={}", 2 * p + 4 * q, 2 * p),
        );
        let total = e.terms().map(|(&(i, j), _)| 2 * i + j).max().unwrap_or(0);
        deg.note(format!(
            "measured deg_Q={dq}, deg_H={dh}, weighted degree (H counted twice)={total}, bound 2p+4q={}",
            2 * p + 4 * q
        ));
        checks.push(deg.finish());
    }
    if params.p() == 1 && params.q() == 1 {
        checks.push(compare_printed(&id("commutator-printed-k1"), &even.comm, &printed_commutator_k1(&params)));
        checks.push(compare_printed(&id("anticommutator-printed-k1"), &even.anti, &printed_anticommutator_k1(&params)));
    }
    Ok(StructureResult {
        commutator: even.comm.clone(),
        anticommutator: even.anti.clone(),
        commutator_branches: [even.comm, odd.comm],
        anticommutator_branches: [even.anti, odd.anti],
        checks,
    })
}

/// Term-level comparison of a derived polynomial with a printed one.
pub fn structure_diff(derived: &BiPoly, printed: &BiPoly) -> Vec<String> {
    let mut keys: Vec<(usize, usize)> = derived.terms().map(|(k, _)| *k).collect();
    keys.extend(printed.terms().map(|(k, _)| *k));
    keys.sort();
    keys.dedup();
    keys.reverse();
    keys.into_iter()
        .filter_map(|(i, j)| {
            let (d, pr) = (derived.coeff(i, j), printed.coeff(i, j));
            (d != pr).then(|| {
                format!(
                    "H^{i}*Q^{j}: printed {}, derived {}",
                    to_exact_string(&pr),
                    to_exact_string(&d)
                )
            })
        })
        .collect()
}

fn compare_printed(id: &str, derived: &BiPoly, printed: &BiPoly) -> Check {
    let mut chk = CheckBuilder::new(id, ANCHOR_K1, Expect::Printed);
    let diff = structure_diff(derived, printed);
    let n_terms = diff.len();
    chk.record(None, diff.is_empty(), || derived.to_string(), || printed.to_string());
    if n_terms > 0 {
        chk.note(format!("{n_terms} term(s) differ: {}", diff.join("; ")));
    }
    chk.finish()
}

fn h_term(c: Rational, h: usize, q: usize) -> BiPoly {
    BiPoly::term(c, h, q)
}

/// The printed `k = 1` commutator relation, with `H` for `H_1`.
pub fn printed_commutator_k1(params: &Params) -> BiPoly {
    let (a, b, w) = (params.alpha(), params.beta(), params.omega());
    let w2 = w * w;
    let s2 = a * a + b * b;
    let prod = (b - a - int(3)) * (b + a - int(3)) * (b - a + int(3)) * (b + a + int(3));
    [
        h_term(int(48), 0, 4),
        h_term(int(-8) / &w2, 2, 3),
        h_term(int(-16) * (&s2 - int(9)), 0, 3),
        h_term(int(-3) * a * b, 0, 2),
        h_term(a * b / &w2, 2, 0),
        h_term(int(-4) * a * b, 0, 0),
        h_term(int(2) * (&s2 - int(3)) / &w2, 2, 1),
        h_term(prod - int(3), 0, 1),
    ]
    .iter()
    .fold(BiPoly::zero(), |acc, t| acc.add(t))
}

/// The printed `k = 1` anticommutator relation, read with the missing
/// parenthesis closed after `193` and `(H^2 - 4 omega)` kept as printed.
pub fn printed_anticommutator_k1(params: &Params) -> BiPoly {
    let (a, b, w) = (params.alpha(), params.beta(), params.omega());
    let w2 = w * w;
    let s2 = a * a + b * b;
    let d2 = (a * a - b * b) * (a * a - b * b);
    let last = (&d2 - int(10) * &s2 + int(9)) / (int(8) * &w2);
    [
        h_term(int(-8), 0, 6),
        h_term(int(2) / &w2, 2, 4),
        h_term(int(2) * (int(2) * &s2 - int(58)), 0, 4),
        h_term(int(8) * a * b, 0, 3),
        h_term(-(int(2) * &s2 - int(22)) / (int(2) * &w2), 1, 2),
        h_term(-(&d2 - int(50) * &s2 + int(193)) / int(2), 0, 2),
        h_term(int(-8) * a * b / (int(3) * &w2), 2, 1),
        h_term(int(32) * a * b, 0, 1),
        h_term(last.clone(), 2, 0),
        h_term(-last * int(4) * w, 0, 0),
    ]
    .iter()
    .fold(BiPoly::zero(), |acc, t| acc.add(t))
}

/// The printed product forms of paired ladder coefficients, compared with the
/// products of actual basis actions.
pub fn check_coefficient_products(sys: &XiSystem, b: &Bounds) -> Vec<Check> {
    let params = sys.params();
    let (p, q) = (params.p() as usize, params.q() as usize);
    let (al, be, k) = (params.alpha(), params.beta(), params.k());
    let coeff_of = |which: usize, m: usize, n: usize, target: (usize, usize)| -> Option<Rational> {
        sys.action(which, m, n).ok().map(|a| a.get(&target).cloned().unwrap_or_else(Rational::zero))
    };
    let two8q: Rational = (0..q).map(|_| int(256)).product();
    let front = |m: usize, n: usize, raising: bool| -> Rational {
        let eps = from_usize(m) + &k * from_usize(n) / int(2);
        let kn2 = &k * from_usize(n) / int(2);
        let kab = &k * (from_usize(n) + al + be + int(1)) / int(2);
        let radial = if raising {
            pochhammer(&(int(1) - &eps + &kn2), p) * pochhammer(&(int(1) + &eps + &kab), p)
        } else {
            pochhammer(&(&eps - &kn2 + int(1)), p) * pochhammer(&(-&kab - &eps), p)
        };
        sign(p as u64) * &two8q * radial
    };
    let half = |x: Rational| x / int(2);
    let mut names = Vec::new();
    for name in ["even-up-down", "even-down-up", "odd-down-up", "odd-up-down"] {
        names.push(CheckBuilder::new(check_id("algebra", &format!("coefficient-product-{name}"), params), ANCHOR_PRODUCTS, Expect::Printed));
    }
    for (m, n) in states(b) {
        let nr = from_usize(n);
        if n % 2 == 0 {
            // l~+_{m,n} l-_{m-p,n+2q}: Xi_2 then Xi_1 from (m, n) back to (m, n).
            if m >= p {
                let t = (m - p, n + 2 * q);
                if let (Some(x), Some(y)) = (coeff_of(1, m, n, t), coeff_of(0, t.0, t.1, (m, n))) {
                    let printed = front(m, n, true)
                        * pochhammer(&(int(1) + half(nr.clone())), q)
                        * pochhammer(&(int(1) + half(al + be + &nr)), q)
                        * pochhammer(&half(al + &nr - int(1)), q)
                        * pochhammer(&half(al + &nr - int(1)), q);
                    names[0].compare(Some((m, n)), &(x * y), &printed);
                }
            }
            if n >= 2 * q {
                let t = (m + p, n - 2 * q);
                if let (Some(x), Some(y)) = (coeff_of(0, m, n, t), coeff_of(1, t.0, t.1, (m, n))) {
                    let printed = front(m, n, false)
                        * pochhammer(&(-half(nr.clone())), q)
                        * pochhammer(&(-half(al + be + &nr)), q)
                        * pochhammer(&half(int(1) - al - &nr), q)
                        * pochhammer(&half(int(1) - be - &nr), q);
                    names[1].compare(Some((m, n)), &(x * y), &printed);
                }
            }
        } else {
            if n >= 2 * q {
                let t = (m + p, n - 2 * q);
                if let (Some(x), Some(y)) = (coeff_of(1, m, n, t), coeff_of(0, t.0, t.1, (m, n))) {
                    let printed = front(m, n, false)
                        * pochhammer(&half(int(1) - &nr), q)
                        * pochhammer(&half(int(1) - al - be - &nr), q)
                        * pochhammer(&(-half(al + &nr)), q)
                        * pochhammer(&(-half(be + &nr)), q);
                    names[2].compare(Some((m, n)), &(x * y), &printed);
                }
            }
            if m >= p {
                let t = (m - p, n + 2 * q);
                if let (Some(x), Some(y)) = (coeff_of(0, m, n, t), coeff_of(1, t.0, t.1, (m, n))) {
                    let printed = front(m, n, true)
                        * pochhammer(&half(int(1) + &nr), q)
                        * pochhammer(&half(int(1) + al + be + &nr), q)
                        * pochhammer(&(int(1) + half(al + &nr)), q)
                        * pochhammer(&(int(1) + half(be + &nr)), q);
                    names[3].compare(Some((m, n)), &(x * y), &printed);
                }
            }
        }
    }
    names.into_iter().map(CheckBuilder::finish).collect()
}

/// Norm ratios `h_n / h_0`, memoized.
struct NormTable {
    params: Params,
    h: RefCell<Vec<Rational>>,
}

impl NormTable {
    fn new(params: &Params) -> Self {
        NormTable {
            params: params.clone(),
            h: RefCell::new(Vec::new()),
        }
    }

    fn get(&self, n: usize) -> Rational {
        let mut h = self.h.borrow_mut();
        while h.len() <= n {
            let d = h.len();
            h.push(norm_ratio(d, self.params.alpha(), self.params.beta()).expect("validated parameters"));
        }
        h[n].clone()
    }

    /// `N_n^2 M_{m,n}^2 / (N_t^2 M_{t}^2)`, using `N_n^2 ~ 1/h_n`.
    fn normalization_ratio(&self, (m, n): (usize, usize), (mt, nt): (usize, usize)) -> Rational {
        let w = self.params.omega();
        let m_src = radial_norm_constant(m, &radial_exponent(n, &self.params), w);
        let m_tgt = radial_norm_constant(mt, &radial_exponent(nt, &self.params), w);
        let radial = m_src.ratio_to(&m_tgt).expect("exponents differ by an even integer");
        self.get(nt) / self.get(n) * radial
    }
}

/// Mutual adjointness through the normalization-ratio identities, for every
/// nonzero transition in range.
pub fn check_adjointness(sys: &XiSystem, b: &Bounds) -> Vec<Check> {
    let params = sys.params();
    let (p, q) = (params.p() as usize, params.q() as usize);
    let (al, be) = (params.alpha(), params.beta());
    let norms = NormTable::new(params);
    let id = |name: &str| check_id("adjoint", name, params);
    let mut even = CheckBuilder::new(id("even-ratio-identity"), ANCHOR_ADJOINT, Expect::Holds);
    let mut odd = CheckBuilder::new(id("odd-ratio-identity"), ANCHOR_ADJOINT, Expect::Holds);
    let mut even_pr = CheckBuilder::new(id("even-ratio-printed"), ANCHOR_ADJOINT, Expect::Printed);
    let mut odd_pr = CheckBuilder::new(id("odd-ratio-printed"), ANCHOR_ADJOINT, Expect::Printed);
    let mut vacuous = 0usize;
    let half = |x: Rational| x / int(2);
    let ab2 = half(al + be);
    for (m, n) in states(b) {
        let nr = from_usize(n);
        let g = radial_exponent(n, params);
        if n % 2 == 0 {
            if n < 2 * q {
                vacuous += 1;
                continue;
            }
            let t = (m + p, n - 2 * q);
            let down = sys.action(0, m, n).ok().and_then(|a| a.get(&t).cloned());
            let up = sys.action(1, t.0, t.1).ok().and_then(|a| a.get(&(m, n)).cloned());
            let (Some(down), Some(up)) = (down, up) else {
                vacuous += 1;
                continue;
            };
            let lhs = norms.normalization_ratio((m, n), t);
            even.compare(Some((m, n)), &lhs, &(up / down));
            let den = pochhammer(&(-half(nr.clone())), q)
                * pochhammer(&(-half(al + be + &nr)), q)
                * pochhammer(&half(int(1) - al - &nr), q)
                * pochhammer(&half(int(1) - be - &nr), q)
                * pochhammer(&from_usize(m + 1), p)
                * pochhammer(&(from_usize(m) - from_usize(p) + &g + int(1)), p);
            if let Some(pr) = ratio(&[pochhammer(&(-&ab2 - &nr), 2 * q).pow(2)], &[den]) {
                even_pr.compare(Some((m, n)), &lhs, &pr);
            }
        } else {
            if m < p {
                vacuous += 1;
                continue;
            }
            let t = (m - p, n + 2 * q);
            let up = sys.action(0, m, n).ok().and_then(|a| a.get(&t).cloned());
            let down = sys.action(1, t.0, t.1).ok().and_then(|a| a.get(&(m, n)).cloned());
            let (Some(up), Some(down)) = (up, down) else {
                vacuous += 1;
                continue;
            };
            let lhs = norms.normalization_ratio((m, n), t);
            odd.compare(Some((m, n)), &lhs, &(down / up));
            let num = factorial(m)
                * pochhammer(&half(&nr + int(1)), q)
                * pochhammer(&half(al + be + int(1) + &nr), q)
                * pochhammer(&(half(al + &nr) + int(1)), q)
                * pochhammer(&(half(be + &nr) + int(1)), q)
                * pochhammer(&(from_usize(m) + &g + int(1)), p);
            let den = factorial(m - p) * pochhammer(&(&nr + int(1) + &ab2), 2 * q).pow(2);
            if let Some(pr) = ratio(&[num], &[den]) {
                odd_pr.compare(Some((m, n)), &lhs, &pr);
            }
        }
    }
    for c in [&mut even, &mut odd] {
        c.note(format!("{vacuous} annihilated transition(s) treated as vacuous"));
    }
    vec![even.finish(), odd.finish(), even_pr.finish(), odd_pr.finish()]
}

/// Closed-form action of a single angular ladder on `P_n`.
pub fn j_action_table(prim: AngularPrim, n: usize, params: &Params) -> Vec<(usize, Rational)> {
    let (al, be) = (params.alpha(), params.beta());
    let nr = from_usize(n);
    let ab = al + be;
    let raise = |c: Rational| vec![(n + 1, c)];
    let lower = |num: Rational| {
        if n == 0 || num.is_zero() {
            return vec![];
        }
        vec![(n - 1, num / (&ab + int(2) * &nr))]
    };
    match (prim, n % 2 == 0) {
        (AngularPrim::JPlus, true) => lower(int(-2) * &nr * (&ab + &nr)),
        (AngularPrim::JPlus, false) => raise(int(2) * (&ab + int(2) * &nr + int(2))),
        (AngularPrim::JMinus, true) => raise(int(-2) * (&ab + int(2) * &nr + int(2))),
        (AngularPrim::JMinus, false) => lower(int(2) * (al + &nr) * (be + &nr)),
        _ => vec![],
    }
}

fn lemma_states(b: &Bounds) -> Vec<(usize, usize)> {
    states(b).collect()
}

/// Angular ladder lemma for `(J+ J-)^l` as printed and its `(J- J+)^l` mirror,
/// the polynomial identity for `l = 1`, and the anticommutators with `Q~`.
pub fn check_angular_lemmas(model: &Model, b: &Bounds, max_l: usize) -> Vec<Check> {
    let params = model.params();
    let h = hamiltonian(params);
    let w4k2 = int(4) * params.omega() * params.k() * params.k();
    let mut out = Vec::new();
    for (kind, label, sgn) in [(JPower::Plus, "plus", -1i64), (JPower::Minus, "minus", 1)] {
        for l in 1..=max_l {
            let j = j_power(kind, l);
            let lr = from_usize(l);
            // l^2 - l Q for J+ and l^2 + l Q for J-.
            let scalar = LinearOperator::q_poly(vec![&lr * &lr, int(sgn) * &lr]);
            let rhs_op = (j.clone() * scalar * LinearOperator::DivY).scaled(&-w4k2.clone());
            let lhs_op = j.commutator(&h);
            let id = check_id("appendix", &format!("angular-lemma-{label}-l{l}"), params);
            let mut chk = CheckBuilder::new(id, ANCHOR_LEMMA_J, Expect::Holds);
            for &(m, n) in &lemma_states(b) {
                let psi = model.basis(m, n);
                let lhs = lhs_op.apply(model, &psi);
                let rhs = rhs_op.apply(model, &psi);
                chk.record(Some((m, n)), lhs == rhs, || lhs.render(), || rhs.render());
            }
            out.push(chk.finish());
        }
    }
    // [J^{+,2}, Q^2] = -4 J^{+,2} (1 - Q) on P_n, and {J+-, Q} = -J+-.
    let j2 = j_power(JPower::Plus, 1);
    let q2 = LinearOperator::q_poly(vec![int(0), int(0), int(1)]);
    let lhs_op = j2.commutator(&q2);
    let rhs_op = (j2 * LinearOperator::q_poly(vec![int(1), int(-1)])).scaled(&int(-4));
    let mut poly_chk = CheckBuilder::new(check_id("appendix", "angular-lemma-polynomial-l1", params), ANCHOR_LEMMA_J, Expect::Holds);
    let mut anti = CheckBuilder::new(check_id("ladders", "j-anticommutes-with-q", params), "angular ladders: anticommutation with the supercharge", Expect::Holds);
    let mut table = CheckBuilder::new(check_id("ladders", "j-action-tables", params), "angular ladders: action on the little -1 Jacobi basis", Expect::Holds);
    let q_op = LinearOperator::Angular(AngularPrim::QTilde);
    for n in 0..=6 {
        let pn = model.p(n);
        let l = lhs_op.apply_x(params, &pn).expect("angular operator");
        let r = rhs_op.apply_x(params, &pn).expect("angular operator");
        poly_chk.compare(Some((0, n)), &l, &r);
        for (prim, s) in [(AngularPrim::JPlus, -1), (AngularPrim::JMinus, 1)] {
            let jp = LinearOperator::Angular(prim);
            let image = jp.apply_x(params, &pn).expect("angular operator");
            let l = jp.anticommutator(&q_op).apply_x(params, &pn).expect("angular operator");
            anti.compare(Some((0, n)), &l, &image.scale(&int(s)));
            let expected = j_action_table(prim, n, params);
            let got = model.decompose_angular(&image);
            table.record(Some((0, n)), got == expected, || format!("{got:?}"), || format!("{expected:?}"));
        }
    }
    out.push(table.finish());
    out.push(poly_chk.finish());
    out.push(anti.finish());
    out
}

/// Radial ladder lemma `[K^l, H] = (4 omega / y)(l^2 + sigma l k Q) K^l`.
pub fn check_radial_lemmas(model: &Model, b: &Bounds, max_l: usize) -> Vec<Check> {
    let params = model.params();
    let h = hamiltonian(params);
    let w4 = int(4) * params.omega();
    let k = params.k();
    let mut out = Vec::new();
    for (sigma, label) in [(1i64, "kq"), (-1, "minus-kq")] {
        for (sign, sign_label, expect) in [
            (EnergySign::Corrected, "", Expect::Holds),
            (EnergySign::Printed, "-printed-sign", Expect::Printed),
        ] {
            for l in 1..=max_l {
                let kl = k_power_h(sigma, l, params, sign);
                let lr = from_usize(l);
                let scalar = LinearOperator::q_poly(vec![&lr * &lr, int(sigma) * &lr * &k]);
                let factor = (LinearOperator::DivY * scalar).scaled(&w4);
                let id = check_id("appendix", &format!("radial-lemma-{label}-l{l}{sign_label}"), params);
                let mut chk = CheckBuilder::new(id, ANCHOR_LEMMA_K, expect);
                for &(m, n) in &lemma_states(b) {
                    let psi = model.basis(m, n);
                    let k_psi = kl.apply(model, &psi);
                    let lhs = kl.apply(model, &h.apply(model, &psi)).sub(&h.apply(model, &k_psi));
                    let rhs = factor.apply(model, &k_psi);
                    chk.record(Some((m, n)), lhs == rhs, || lhs.render(), || rhs.render());
                }
                out.push(chk.finish());
            }
        }
    }
    out
}

/// `K_{kQ+2l-2,H} K^{l-1}_{kQ,H} = K^l_{kQ,H}` with the closed-form factor,
/// for the derived and the printed factor.
pub fn check_factor_forms(model: &Model, b: &Bounds, max_l: usize) -> Vec<Check> {
    let params = model.params();
    let mut out = Vec::new();
    for (label, expect) in [("closed-form", Expect::Holds), ("printed", Expect::Printed)] {
        for l in 1..=max_l {
            let factor = if label == "printed" {
                k_factor_printed(l, params)
            } else {
                k_factor_closed_form(l, params)
            };
            let lhs_op = factor * k_power_h(1, l - 1, params, EnergySign::Corrected);
            let rhs_op = k_power_h(1, l, params, EnergySign::Corrected);
            let id = check_id("appendix", &format!("factor-{label}-l{l}"), params);
            let mut chk = CheckBuilder::new(id, ANCHOR_FACTOR, expect);
            for &(m, n) in &lemma_states(b) {
                let psi = model.basis(m, n);
                let lhs = lhs_op.apply(model, &psi);
                let rhs = rhs_op.apply(model, &psi);
                chk.record(Some((m, n)), lhs == rhs, || lhs.render(), || rhs.render());
            }
            out.push(chk.finish());
        }
    }
    out
}

/// The commutation theorem, term by term: `[Xi, H]` splits into an angular
/// and a radial commutator term whose scalar factors cancel for `k = p/q`.
pub fn check_theorem(model: &Model, b: &Bounds) -> Vec<Check> {
    let params = model.params();
    let (p, q) = (params.p() as usize, params.q() as usize);
    let (pr, qr, k) = (from_usize(p), from_usize(q), params.k());
    let h = hamiltonian(params);
    let w4 = int(4) * params.omega();
    let k2 = &k * &k;
    let mut out = Vec::new();
    // (J power, radial sigma, sign of l Q in the angular lemma, label)
    for (kind, sigma, jsgn, label) in [(JPower::Minus, 1i64, 1i64, "xi1"), (JPower::Plus, -1, -1, "xi2")] {
        let radial = Poly::from_coeffs(vec![&pr * &pr, int(sigma) * &pr * &k]);
        let angular = Poly::from_coeffs(vec![&k2 * &qr * &qr, &k2 * int(jsgn) * &qr]);
        let residual = &radial - &angular;
        let mut scalar = CheckBuilder::new(check_id("appendix", &format!("theorem-{label}-scalar-cancels"), params), ANCHOR_THEOREM, Expect::Holds);
        scalar.record(None, residual.is_zero(), || residual.to_string_in("Q"), || "0".into());
        out.push(scalar.finish());

        let j = j_power(kind, q);
        let kp = k_power_h(sigma, p, params, EnergySign::Corrected);
        let term_r = j.clone() * kp.commutator(&h);
        let term_a = j.commutator(&h) * kp.clone();
        let pred_r = (j.clone() * LinearOperator::DivY * LinearOperator::QPoly(radial.clone()) * kp.clone()).scaled(&w4);
        let pred_a = (j.clone() * LinearOperator::DivY * LinearOperator::QPoly(angular.clone()) * kp.clone()).scaled(&-w4.clone());
        let mut terms = CheckBuilder::new(check_id("appendix", &format!("theorem-{label}-termwise"), params), ANCHOR_THEOREM, Expect::Holds);
        for &(m, n) in &lemma_states(b) {
            let psi = model.basis(m, n);
            let tr = term_r.apply(model, &psi);
            let ta = term_a.apply(model, &psi);
            let ok = tr == pred_r.apply(model, &psi) && ta == pred_a.apply(model, &psi) && tr.add(&ta).is_zero();
            terms.record(Some((m, n)), ok, || format!("{} + {}", tr.render(), ta.render()), || "0 with each term as predicted".into());
        }
        out.push(terms.finish());
    }
    // The pairing as printed: J^{+,2q} with K^p_{kQ,H}.
    let radial = Poly::from_coeffs(vec![&pr * &pr, &pr * &k]);
    let angular = Poly::from_coeffs(vec![&k2 * &qr * &qr, -(&k2 * &qr)]);
    let residual = &radial - &angular;
    let mut printed = CheckBuilder::new(check_id("appendix", "theorem-printed-pairing-scalar", params), ANCHOR_THEOREM, Expect::Printed);
    printed.record(None, residual.is_zero(), || residual.to_string_in("Q"), || "0".into());
    out.push(printed.finish());
    out
}

/// Convenience: `epsilon` of a state through its energy.
pub fn epsilon_of(m: usize, n: usize, params: &Params) -> Rational {
    epsilon_from_energy(&energy(m, n, params), params)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::report::Status;

    fn model(p: i64, q: i64, a: Rational, b: Rational) -> Model {
        Model::new(Params::from_parts(p, q, a, b, int(1)))
    }

    #[test]
    fn ground_state_is_annihilated_by_xi1() {
        let md = model(1, 1, int(0), int(0));
        let sys = XiSystem::new(&md, XiPairing::Corrected, EnergySign::Corrected);
        assert!(sys.apply(0, 0, 0).is_zero());
    }

    #[test]
    fn ell_plus_example() {
        let c = LadderCoefficients::new(&Params::from_parts(1, 1, int(0), int(0), int(1)));
        assert_eq!(c.ell_plus(1, 1), int(96));
        let md = model(1, 1, int(0), int(0));
        let sys = XiSystem::new(&md, XiPairing::Corrected, EnergySign::Corrected);
        let act = sys.action(0, 1, 1).unwrap();
        assert_eq!(act.get(&(0, 3)), Some(&int(96)));
    }

    #[test]
    fn c_and_d_tables_from_j_powers() {
        let params = Params::from_parts(1, 1, rat(1, 2), rat(5, 2), int(1));
        let md = Model::new(params.clone());
        let c = LadderCoefficients::new(&params);
        let jm = j_power(JPower::Minus, 1);
        let jp = j_power(JPower::Plus, 1);
        for n in 0..6 {
            let image_m = md.decompose_angular(&jm.apply_x(&params, &md.p(n)).unwrap());
            let image_p = md.decompose_angular(&jp.apply_x(&params, &md.p(n)).unwrap());
            if n % 2 == 0 {
                let expect: Vec<_> = c.c(n).filter(|v| !v.is_zero()).map(|v| (n - 2, v)).into_iter().collect();
                assert_eq!(image_m, expect);
                assert_eq!(image_p, vec![(n + 2, c.d_tilde(n))]);
            } else {
                assert_eq!(image_m, vec![(n + 2, c.d(n))]);
                let expect: Vec<_> = c.c_tilde(n).filter(|v| !v.is_zero()).map(|v| (n - 2, v)).into_iter().collect();
                assert_eq!(image_p, expect);
            }
        }
        assert_eq!(c.d(1), int(-16) * pochhammer(&(rat(3, 2) + int(2)), 2));
    }

    #[test]
    fn xi_commutes_with_h_small() {
        let md = model(2, 3, rat(1, 2), int(0));
        let sys = XiSystem::new(&md, XiPairing::Corrected, EnergySign::Corrected);
        let b = Bounds { m_max: 2, n_max: 7 };
        for c in check_commutes_with_h(&sys, &b, "", Expect::Holds) {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
        for c in check_xi_actions(&sys, &b) {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
    }

    #[test]
    fn printed_pairing_breaks_commutation() {
        let md = model(1, 1, int(0), int(0));
        let sys = XiSystem::new(&md, XiPairing::Printed, EnergySign::Corrected);
        let b = Bounds { m_max: 1, n_max: 3 };
        let checks = check_commutes_with_h(&sys, &b, "-printed-pairing", Expect::Printed);
        assert!(checks.iter().all(|c| c.status == Status::DeviationDocumented));
    }

    #[test]
    fn structure_polynomials_k1() {
        let md = model(1, 1, int(0), int(0));
        let sys = XiSystem::new(&md, XiPairing::Corrected, EnergySign::Corrected);
        let res = structure_polynomials(&sys, StructureGrid::default_for(md.params())).unwrap();
        for c in &res.checks {
            if c.id.contains("printed") {
                continue;
            }
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
        assert_eq!(res.commutator_branches[0], res.commutator_branches[1]);
        assert!(res.commutator.degree_y().unwrap() <= 6);
    }

    #[test]
    fn underdetermined_grid_is_rejected() {
        let md = model(1, 1, int(0), int(0));
        let sys = XiSystem::new(&md, XiPairing::Corrected, EnergySign::Corrected);
        let err = structure_polynomials(&sys, StructureGrid { m_points: 2, n_points: 3 });
        assert!(matches!(err, Err(SymmetryError::InterpolationUnderdetermined { .. })));
    }

    #[test]
    fn adjointness_k1() {
        let md = model(1, 1, int(0), int(0));
        let sys = XiSystem::new(&md, XiPairing::Corrected, EnergySign::Corrected);
        let checks = check_adjointness(&sys, &Bounds { m_max: 3, n_max: 4 });
        assert_eq!(checks[0].status, Status::Pass, "{:?}", checks[0]);
        assert_eq!(checks[1].status, Status::Pass, "{:?}", checks[1]);
    }

    #[test]
    fn appendix_identities() {
        let md = model(2, 1, rat(1, 2), rat(1, 2));
        let b = Bounds { m_max: 2, n_max: 3 };
        let mut all = check_angular_lemmas(&md, &b, 2);
        all.extend(check_factor_forms(&md, &b, 3));
        all.extend(check_theorem(&md, &b));
        all.extend(check_radial_lemmas(&md, &b, 2));
        for c in &all {
            if c.id.contains("printed") {
                continue;
            }
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
        let printed = all.iter().find(|c| c.id.starts_with("appendix.factor-printed-l2")).unwrap();
        assert_eq!(printed.status, Status::DeviationDocumented);
    }
}
