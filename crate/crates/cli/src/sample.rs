//! Floating-point sampling of the full wave functions.
//!
//! Two independent evaluations are compared at every point. The gauged one
//! uses the exact polynomial coefficients and exact normalization constants;
//! the direct one runs the three-term recurrences in `f64` and takes the
//! normalizations from log-gamma values.

use std::f64::consts::FRAC_PI_2;

use serde::Serialize;
use statrs::function::beta::ln_beta;
use statrs::function::gamma::ln_gamma;
use thiserror::Error;

use superint_core::orthopoly::{little_jacobi, n0_squared, norm_ratio, radial_norm_constant, OrthopolyError, RadialFunction};
use superint_core::poly::Poly;
use superint_core::rational::{to_f64, Params};
use superint_core::spectrum::radial_exponent;

/// Relative agreement required between the two evaluations.
pub const CROSS_CHECK_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum SampleError {
    #[error("grid point r={r}, theta={theta} lies where the gauge factor is singular")]
    GridSingularity { r: f64, theta: f64 },
    #[error("theta={theta} is outside [-pi/(2k), pi/(2k)]")]
    OutOfDomain { theta: f64 },
    #[error("r={r} must be nonnegative")]
    NegativeRadius { r: f64 },
    #[error("evaluations disagree at r={r}, theta={theta}: {direct} vs {gauged}")]
    CrossCheck { r: f64, theta: f64, direct: f64, gauged: f64 },
    #[error(transparent)]
    Orthopoly(#[from] OrthopolyError),
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SamplePoint {
    pub r: f64,
    pub theta: f64,
    pub psi: f64,
    pub psi_gauged: f64,
    pub rel_error: f64,
}

/// `Psi_{n,m}` for fixed parameters.
#[derive(Clone, Debug)]
pub struct WaveFunction {
    m: usize,
    n: usize,
    k: f64,
    alpha: f64,
    beta: f64,
    omega: f64,
    gamma: f64,
    exact_p: Poly,
    exact_radial: RadialFunction,
    exact_norm: f64,
    rec_b: Vec<f64>,
    rec_u: Vec<f64>,
    direct_norm: f64,
}

fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).map(|i| a + i as f64).product()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `h_n / h_0` from the Pochhammer closed form.
fn norm_ratio_f64(n: usize, a: f64, b: f64) -> f64 {
    let s1 = a / 2.0 + b / 2.0 + 1.0;
    let (ha, hb) = (a / 2.0 + 0.5, b / 2.0 + 0.5);
    let (f, ab) = if n % 2 == 0 { (n / 2, n / 2) } else { ((n - 1) / 2, (n + 1) / 2) };
    let top = pochhammer(s1, n);
    factorial(f) * pochhammer(s1, f) * pochhammer(ha, ab) * pochhammer(hb, ab) / (top * top)
}

/// Coefficient of `x^(n-1)` in the monic `P_n`.
fn subleading(n: usize, a: f64, b: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let d = 2.0 * n as f64 + a + b;
    if n % 2 == 0 {
        -(n as f64) / d
    } else {
        -(n as f64 + a) / d
    }
}

impl WaveFunction {
    pub fn new(m: usize, n: usize, params: &Params) -> Result<Self, SampleError> {
        let (a, b) = (params.alpha(), params.beta());
        let gamma_exact = radial_exponent(n, params);
        let exact_p = little_jacobi(n, a, b)?;
        let exact_radial = RadialFunction::basis(m, &gamma_exact);
        let m2 = radial_norm_constant(m, &gamma_exact, params.omega()).to_f64();
        let n2 = n0_squared(a, b).to_f64() / to_f64(&norm_ratio(n, a, b)?);

        let (af, bf, wf, gf) = (to_f64(a), to_f64(b), to_f64(params.omega()), to_f64(&gamma_exact));
        let rec_b = (0..n).map(|j| subleading(j, af, bf) - subleading(j + 1, af, bf)).collect();
        let rec_u = (1..n)
            .map(|j| norm_ratio_f64(j, af, bf) / norm_ratio_f64(j - 1, af, bf))
            .collect();
        let ln_m2 = (2.0 * wf).ln() + ln_gamma(m as f64 + 1.0) - ln_gamma(m as f64 + gf + 1.0);
        let ln_n02 = -ln_beta((af + 1.0) / 2.0, (bf + 1.0) / 2.0);
        let ln_n2 = ln_n02 - norm_ratio_f64(n, af, bf).ln();
        Ok(WaveFunction {
            m,
            n,
            k: to_f64(&params.k()),
            alpha: af,
            beta: bf,
            omega: wf,
            gamma: gf,
            exact_p,
            exact_radial,
            exact_norm: (m2 * n2).sqrt(),
            rec_b,
            rec_u,
            direct_norm: (0.5 * (ln_m2 + ln_n2)).exp(),
        })
    }

    /// `|x|^(a/2) (1-x^2)^(b/4) (1+x)^(1/2)` with `x = sin phi`.
    fn gauge(&self, phi: f64) -> f64 {
        let x = phi.sin();
        x.abs().powf(self.alpha / 2.0) * phi.cos().powf(self.beta / 2.0) * (1.0 + x).sqrt()
    }

    fn p_recurrence(&self, x: f64) -> f64 {
        let (mut prev, mut cur) = (0.0, 1.0);
        for j in 0..self.n {
            let u = if j == 0 { 0.0 } else { self.rec_u[j - 1] };
            let next = (x - self.rec_b[j]) * cur - u * prev;
            prev = cur;
            cur = next;
        }
        cur
    }

    fn laguerre_recurrence(&self, y: f64) -> f64 {
        let (mut prev, mut cur) = (0.0, 1.0);
        for j in 0..self.m {
            let jf = j as f64;
            let next = ((2.0 * jf + 1.0 + self.gamma - y) * cur - (jf + self.gamma) * prev) / (jf + 1.0);
            prev = cur;
            cur = next;
        }
        cur
    }

    /// Direct evaluation at `(r, phi)`.
    pub fn direct_phi(&self, r: f64, phi: f64) -> f64 {
        let y = self.omega * r * r;
        let radial = (self.omega.sqrt() * r).powf(self.gamma) * (-y / 2.0).exp() * self.laguerre_recurrence(y);
        self.direct_norm * radial * self.gauge(phi) * self.p_recurrence(phi.sin())
    }

    /// Gauged polynomial times the gauge factors, from exact coefficients.
    pub fn gauged_phi(&self, r: f64, phi: f64) -> f64 {
        let y = self.omega * r * r;
        self.exact_norm * self.exact_radial.eval_f64(y) * self.gauge(phi) * self.exact_p.eval_f64(phi.sin())
    }

    fn phi_of(&self, r: f64, theta: f64) -> Result<f64, SampleError> {
        if r < 0.0 {
            return Err(SampleError::NegativeRadius { r });
        }
        let phi = self.k * theta;
        if phi.abs() > FRAC_PI_2 + 1e-12 {
            return Err(SampleError::OutOfDomain { theta });
        }
        let near = |v: f64| v.abs() < 1e-12;
        if (self.alpha != 0.0 && near(phi.sin())) || (self.beta != 0.0 && near(phi.cos())) {
            return Err(SampleError::GridSingularity { r, theta });
        }
        Ok(phi)
    }

    /// Both evaluations at `(r, theta)`; fails if they disagree.
    pub fn sample(&self, r: f64, theta: f64) -> Result<SamplePoint, SampleError> {
        let phi = self.phi_of(r, theta)?;
        let psi = self.direct_phi(r, phi);
        let psi_gauged = self.gauged_phi(r, phi);
        let scale = psi.abs().max(psi_gauged.abs());
        let rel_error = if scale == 0.0 { 0.0 } else { (psi - psi_gauged).abs() / scale };
        if !rel_error.is_finite() || rel_error > CROSS_CHECK_TOL {
            return Err(SampleError::CrossCheck { r, theta, direct: psi, gauged: psi_gauged });
        }
        Ok(SamplePoint { r, theta, psi, psi_gauged, rel_error })
    }

    /// `int r dr dphi |Psi|^2` by nested double-exponential quadrature.
    pub fn norm_squared(&self) -> f64 {
        use quadrature::double_exponential::integrate;
        let r_max = (120.0 / self.omega).sqrt();
        let angular = |r: f64| {
            let f = |phi: f64| self.direct_phi(r, phi).powi(2);
            integrate(f, -FRAC_PI_2, 0.0, 1e-13).integral + integrate(f, 0.0, FRAC_PI_2, 1e-13).integral
        };
        integrate(|r| r * angular(r), 0.0, r_max, 1e-12).integral
    }
}

/// Evenly spaced interior grid over `r` and `theta`.
pub fn grid(r_max: f64, r_points: usize, k: f64, theta_points: usize) -> Vec<(f64, f64)> {
    let half = FRAC_PI_2 / k.abs();
    let mut out = Vec::with_capacity(r_points * theta_points);
    for i in 1..=r_points {
        let r = r_max * i as f64 / r_points as f64;
        for j in 0..theta_points {
            // Offsets keep the points away from theta = 0 and the edges.
            let t = -half + 2.0 * half * (j as f64 + 0.5) / theta_points as f64;
            out.push((r, t));
        }
    }
    out
}
