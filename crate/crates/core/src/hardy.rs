//! Quadratic-form evaluations behind the improved Hardy inequality on cones.
//!
//! Test functions are separated, `u = f(r) g(ω)`, so the form reduces to radial
//! integrals times angular constants.  Radial integrals run in `t = log r` to reach
//! `R² = 10^{16}` and beyond.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{adaptive_simpson, linear_fit};
use crate::spectral::{AngularDomain, AngularProfile};

/// Relative tolerance for the radial integrals.
pub const FORM_TOL: f64 = 1e-9;

/// `θ_{ρ,R}`: ramps up on `(ρ, ρ+1]`, equals 1 up to `R`, decays like `log(R²/r)/log R` to `R²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Cutoff {
    pub rho: f64,
    pub big_r: f64,
}

impl Cutoff {
    pub fn new(rho: f64, big_r: f64) -> Result<Self> {
        if !(big_r >= 2.0 * rho + 2.0) {
            return Err(Error::CutoffRange { big_r, rho });
        }
        Ok(Self { rho, big_r })
    }

    /// Value and derivative at `r`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        let (rho, big) = (self.rho, self.big_r);
        if r <= rho || r > big * big {
            (0.0, 0.0)
        } else if r <= rho + 1.0 {
            (r - rho, 1.0)
        } else if r <= big {
            (1.0, 0.0)
        } else {
            let lr = big.ln();
            ((big * big / r).ln() / lr, -1.0 / (r * lr))
        }
    }

    pub fn breakpoints(&self) -> [f64; 4] {
        [self.rho, self.rho + 1.0, self.big_r, self.big_r * self.big_r]
    }
}

/// `∫φ²`, `∫|∇_ω φ|²` and `∫Vφ²` for the angular factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngularConstants {
    pub l2: f64,
    pub grad: f64,
    pub potential: f64,
}

impl AngularConstants {
    /// A normalised eigenfunction of `-Δ_ω - V` with eigenvalue `λ` and `∫Vφ² = v`.
    pub fn eigen(lambda: f64, v: f64) -> Self {
        Self { l2: 1.0, grad: lambda + v, potential: v }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FormBreakdown {
    pub dirichlet: f64,
    pub potential: f64,
    pub hardy: f64,
    pub log: f64,
    pub total: f64,
}

/// `∫_a^b g(r) dr` computed in `t = log r` over the given break points.
pub fn radial_integral<G: Fn(f64) -> f64>(g: G, breaks: &[f64]) -> f64 {
    breaks
        .windows(2)
        .map(|w| {
            let h = |t: f64| {
                let r = t.exp();
                g(r) * r
            };
            adaptive_simpson(&h, w[0].ln(), w[1].ln(), FORM_TOL)
        })
        .sum()
}

/// `E(u) - μ∫u²/r² - ε∫u²/(r² log² r)` for `u = f(r) g(ω)` with
/// `E(u) = ∫|∇u|² - ∫V(ω) u²/r²`.
///
/// `radial` returns `(f, f')`; `breaks` must cover the support and include every kink.
pub fn form_eval<F>(n: u32, radial: F, breaks: &[f64], angular: &AngularConstants, mu: f64, eps: f64) -> FormBreakdown
where
    F: Fn(f64) -> (f64, f64),
{
    let nf = n as f64;
    let d1 = radial_integral(|r| radial(r).1.powi(2) * r.powf(nf - 1.0), breaks);
    let h = radial_integral(|r| radial(r).0.powi(2) * r.powf(nf - 3.0), breaks);
    let lg = if eps == 0.0 {
        0.0
    } else {
        radial_integral(
            |r| {
                let l = r.ln();
                let f = radial(r).0;
                if f == 0.0 {
                    0.0
                } else {
                    f * f * r.powf(nf - 3.0) / (l * l)
                }
            },
            breaks,
        ) * angular.l2
    };
    let dirichlet = d1 * angular.l2 + h * angular.grad;
    let potential = h * angular.potential;
    let hardy = h * angular.l2;
    FormBreakdown { dirichlet, potential, hardy, log: lg, total: dirichlet - potential - mu * hardy - eps * lg }
}

/// Which family of test functions the sweep uses.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepCase {
    /// `μ = C_H + λ1`, test function `r^{α*} log^{1/2} r φ1 θ`.
    LogSharp,
    /// `μ > C_H + λ1`, test function `r^{α*} φ1 θ`.
    Supercritical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub case: SweepCase,
    pub eps: f64,
    pub mu: f64,
    pub rho: f64,
    /// `(R, total)` pairs.
    pub totals: Vec<(f64, f64)>,
    /// `-d total / d log log R` fitted over the trailing half of the sweep.
    pub divergence_rate: f64,
    /// `ε - 1/4` in the log-sharp case.
    pub expected_rate: Option<f64>,
    /// Largest relative deviation of a single step from `(ε - 1/4) Δ log log R`.
    pub max_step_deviation: Option<f64>,
    pub first_negative: Option<f64>,
    pub min_total: f64,
}

/// Evaluates the form on the cutoff family for each `R` in `radii`.
pub fn sharpness_sweep(n: u32, angular: &AngularConstants, lambda1: f64, eps: f64, mu_excess: f64, rho: f64, radii: &[f64]) -> Result<SweepReport> {
    if radii.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: radii.len() });
    }
    if !(rho >= 1.0) {
        return Err(Error::InvalidParams(format!("rho must be >= 1 for the log weight, got {rho}")));
    }
    let nf = n as f64;
    let a = (2.0 - nf) / 2.0;
    let ch = (nf - 2.0).powi(2) / 4.0;
    let mu = ch + lambda1 + mu_excess;
    let case = if mu_excess > 0.0 { SweepCase::Supercritical } else { SweepCase::LogSharp };
    let half = if case == SweepCase::LogSharp { 0.5 } else { 0.0 };
    let mut totals = Vec::with_capacity(radii.len());
    for &big in radii {
        let cut = Cutoff::new(rho, big)?;
        let radial = |r: f64| {
            let (th, dth) = cut.eval(r);
            if th == 0.0 && dth == 0.0 {
                return (0.0, 0.0);
            }
            let l = r.ln();
            if half != 0.0 && l <= 0.0 {
                return (0.0, 0.0);
            }
            let ra = r.powf(a);
            let lh = l.powf(half);
            let g = ra * lh;
            let dg = ra / r * (a * lh + if half != 0.0 { half * lh / l } else { 0.0 });
            (g * th, dg * th + g * dth)
        };
        let form = form_eval(n, radial, &cut.breakpoints(), angular, mu, eps);
        totals.push((big, form.total));
    }
    let window = (totals.len() / 2).max(2);
    let tail = &totals[totals.len() - window..];
    let xs: Vec<f64> = tail.iter().map(|t| t.0.ln().ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|t| t.1).collect();
    let (slope, _) = linear_fit(&xs, &ys);
    let expected_rate = (case == SweepCase::LogSharp).then_some(eps - 0.25);
    let max_step_deviation = expected_rate.filter(|r| r.abs() > 0.0).map(|rate| {
        totals
            .windows(2)
            .map(|w| {
                let dec = w[0].1 - w[1].1;
                let want = rate * (w[1].0.ln().ln() - w[0].0.ln().ln());
                ((dec - want) / want).abs()
            })
            .fold(0.0, f64::max)
    });
    let first_negative = totals.iter().find(|t| t.1 < 0.0).map(|t| t.0);
    let min_total = totals.iter().map(|t| t.1).fold(f64::INFINITY, f64::min);
    Ok(SweepReport { case, eps, mu, rho, totals, divergence_rate: -slope, expected_rate, max_step_deviation, first_negative, min_total })
}

/// Positive reference function `φ = P(r) Q(ω)` with `-Δφ - V(r)φ = F >= 0`.
pub struct GroundState<'a> {
    pub n: u32,
    /// `(P, P')`
    pub radial: &'a dyn Fn(f64) -> (f64, f64),
    /// `(Q, Q')` with `-Δ_ω Q = λ_Q Q` and `Q = 0` on the boundary.
    pub angular: &'a dyn Fn(f64) -> (f64, f64),
    pub domain: AngularDomain,
    /// Radial potential `V(r)`, including the `1/r²` factor.
    pub potential: &'a dyn Fn(f64) -> f64,
    /// `F/φ`, radial.
    pub forcing_ratio: &'a dyn Fn(f64) -> f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub lhs: f64,
    pub rhs: f64,
    /// `|lhs - rhs| / max(|lhs|, 1)`.
    pub gap: f64,
}

/// Compares `E_V(u) = ∫|∇u|² - ∫V u²` with `∫|∇(u/φ)|² φ² + ∫u² F/φ` for
/// `u = f(r) Q(ω) h(ω)`, where `f` vanishes at the ends of `breaks`.
pub fn ground_state_identity<F, H>(gs: &GroundState<'_>, f: F, breaks: &[f64], h: H, angular_nodes: usize) -> IdentityReport
where
    F: Fn(f64) -> (f64, f64),
    H: Fn(f64) -> (f64, f64),
{
    let nf = gs.n as f64;
    let g = |w: f64| {
        let (q, dq) = (gs.angular)(w);
        let (hv, dh) = h(w);
        (q * hv, dq * hv + q * dh, q * dh)
    };
    let d = &gs.domain;
    let g2 = d.integrate(|w| g(w).0.powi(2), angular_nodes);
    let dg2 = d.integrate(|w| g(w).1.powi(2), angular_nodes);
    let qdh2 = d.integrate(|w| g(w).2.powi(2), angular_nodes);

    let rn = |r: f64| r.powf(nf - 1.0);
    let a_df = radial_integral(|r| f(r).1.powi(2) * rn(r), breaks);
    let a_f_r2 = radial_integral(|r| f(r).0.powi(2) * rn(r) / (r * r), breaks);
    let a_vf = radial_integral(|r| (gs.potential)(r) * f(r).0.powi(2) * rn(r), breaks);
    let a_ratio = radial_integral(
        |r| {
            let (fv, df) = f(r);
            let (p, dp) = (gs.radial)(r);
            (df - fv * dp / p).powi(2) * rn(r)
        },
        breaks,
    );
    let a_forcing = radial_integral(|r| f(r).0.powi(2) * (gs.forcing_ratio)(r) * rn(r), breaks);

    let lhs = a_df * g2 + a_f_r2 * dg2 - a_vf * g2;
    let rhs = a_ratio * g2 + a_f_r2 * qdh2 + a_forcing * g2;
    IdentityReport { lhs, rhs, gap: (lhs - rhs).abs() / lhs.abs().max(1.0) }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BartaReport {
    pub infimum: f64,
    pub lambda1: f64,
    pub gap: f64,
}

/// `inf (-Δφ - Vφ)/φ` over interior nodes, compared with `λ1`.
pub fn barta_check(profile: &AngularProfile, potential: Option<&crate::spectral::PiecewiseConstant>, domain: &AngularDomain, lambda1: f64, nodes: usize) -> BartaReport {
    let inf = domain
        .interior_nodes(nodes)
        .into_iter()
        .filter_map(|w| {
            let v = profile.value(w);
            (v > 1e-12).then(|| (-profile.laplacian(w) - potential.map_or(0.0, |p| p.at(w)) * v) / v)
        })
        .fold(f64::INFINITY, f64::min);
    BartaReport { infimum: inf, lambda1, gap: (inf - lambda1).abs() }
}
