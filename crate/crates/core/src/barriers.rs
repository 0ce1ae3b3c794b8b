//! Explicit positive supersolutions and their residual checks.
//!
//! Most barriers have the form `τ r^a (log r)^b P(ω)`.  The radial operator is applied
//! in closed form and `Δ_ω P` comes from the equation `P` solves, so the residual
//! `(-Δ - μ/r²)w - C r^{-s} w^p` is evaluated without numerical differentiation.

use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::E;

use crate::classifier::{BarrierKind, Classification, Verdict};
use crate::error::{Error, Result};
use crate::numerics::{linear_fit, log_space};
use crate::params::{kelvin, Domain, ReducedParams};
use crate::spectral::{solve_angular_inhomogeneous, AngularDomain, AngularProfile, InhomogeneousVariant, SpectralBasis};

/// Pass threshold for the minimum residual.
pub const RESIDUAL_TOL: f64 = -1e-8;
const MAX_ADJUST: usize = 60;

/// `r^a (log r)^b` and `-f'' - (N-1) f'/r` at `r`.
pub fn power_log(n: u32, a: f64, b: f64, r: f64) -> (f64, f64) {
    let nf = n as f64;
    let ra = r.powf(a);
    if b == 0.0 {
        return (ra, -a * (a + nf - 2.0) * ra / (r * r));
    }
    let l = r.ln();
    let lb = l.powf(b);
    let f = ra * lb;
    let bracket = a * (a + nf - 2.0) * lb + b * (2.0 * a + nf - 2.0) * lb / l + b * (b - 1.0) * lb / (l * l);
    (f, -ra / (r * r) * bracket)
}

/// `sup_{r >= r0} r^{-δ} (log r)^m` for `δ > 0`, `m >= 0`, `r0 > 1`.
pub fn sup_power_log(delta: f64, m: f64, r0: f64) -> f64 {
    let t0 = r0.ln();
    let t = if m / delta > t0 { m / delta } else { t0 };
    (-delta * t).exp() * t.powf(m)
}

/// A barrier with its amplitude, inner radius and angular factor fixed.
#[derive(Debug, Clone)]
pub struct BarrierSpec {
    pub kind: BarrierKind,
    pub tau: f64,
    pub rho_prime: f64,
    /// Exterior problem the barrier is built for (the Kelvin dual for interior problems).
    pub rp: ReducedParams,
    pub lambda1: f64,
    pub profile: AngularProfile,
    pub domain: AngularDomain,
    /// Evaluate as the Kelvin image on the punctured ball.
    pub kelvin: bool,
}

/// Pointwise pieces of the residual.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualPoint {
    pub value: f64,
    pub linear: f64,
    pub nonlinear: f64,
    pub residual: f64,
}

impl BarrierSpec {
    fn star(&self) -> f64 {
        (2.0 - self.rp.n as f64) / 2.0
    }

    /// Radial exponent pair `(a, b)` of the `τ r^a log^b r P(ω)` families.
    fn radial_shape(&self) -> Option<(f64, f64)> {
        match self.kind {
            BarrierKind::SeparatedPower { alpha } | BarrierKind::SublinearInhom { alpha } | BarrierKind::SublinearNeg { alpha } => {
                Some((alpha, 0.0))
            }
            BarrierKind::PowerLog { beta } | BarrierKind::FullSphereLog { beta } => Some((self.star(), beta)),
            BarrierKind::CriticalSublinear { .. } => None,
        }
    }

    /// Residual pieces at an exterior point `r >= ρ'`.
    pub fn eval_exterior(&self, r: f64, omega: f64) -> Result<ResidualPoint> {
        let rp = &self.rp;
        if let Some((a, b)) = self.radial_shape() {
            let pv = self.profile.value(omega);
            let (f, rad) = power_log(rp.n, a, b, r);
            let value = self.tau * f * pv;
            if !(value > 0.0) {
                return Err(Error::NonPositiveBarrier { r, omega });
            }
            let angular = -self.profile.laplacian(omega) - rp.mu * pv;
            let linear = self.tau * (rad * pv + f / (r * r) * angular);
            let nonlinear = rp.c * r.powf(-rp.s) * value.powf(rp.p);
            return Ok(ResidualPoint { value, linear, nonlinear, residual: linear - nonlinear });
        }
        let BarrierKind::CriticalSublinear { beta, eps, sigma_aux } = self.kind else { unreachable!() };
        let a = self.star();
        let l = r.ln();
        let corr = r.powf(a) * l.powf(-beta);
        if self.rp.cone.is_full_sphere() {
            // w_σ = r^{α*} log^{2-σ} r / ((2-σ)(σ-1) - ε) solves the auxiliary equation exactly.
            let k = (2.0 - sigma_aux) * (sigma_aux - 1.0) - eps;
            let (w1, rad1) = power_log(rp.n, a, 2.0 - sigma_aux, r);
            let (w2, rad2) = power_log(rp.n, a, -beta, r);
            let v = w1 / k + w2;
            let value = self.tau * v;
            let linear = self.tau * (rad1 / k + rad2 - (rp.mu - self.lambda1) * v / (r * r));
            let nonlinear = rp.c * r.powf(-rp.s) * value.powf(rp.p);
            return Ok(ResidualPoint { value, linear, nonlinear, residual: linear - nonlinear });
        }
        // Certified lower bound for any w_σ >= 0: the auxiliary part enters through its
        // equation, the nonlinear term through v >= r^{α*} log^{-β} r.
        let e_part = l.powf(-sigma_aux) - self.lambda1 * l.powf(-beta) - (beta * (1.0 + beta) + eps) * l.powf(-beta - 2.0);
        let b_part = eps / (r * r * l * l) - rp.c * r.powf(-rp.s) * (self.tau * corr).powf(rp.p - 1.0);
        let explicit = self.tau * r.powf(a - 2.0) * e_part;
        let residual = if b_part >= 0.0 { explicit + self.tau * corr * b_part } else { self.tau * corr * b_part };
        let value = self.tau * corr;
        Ok(ResidualPoint {
            value,
            linear: explicit + self.tau * corr * eps / (r * r * l * l),
            nonlinear: rp.c * r.powf(-rp.s) * value.powf(rp.p),
            residual,
        })
    }

    /// Residual pieces at a point of the barrier's own domain.
    pub fn eval(&self, r: f64, omega: f64) -> Result<ResidualPoint> {
        if !self.kelvin {
            return self.eval_exterior(r, omega);
        }
        // For y = x/|x|^2 both sides of the equation pick up the factor |y|^{-N-2}.
        let n = self.rp.n as f64;
        let x = self.eval_exterior(1.0 / r, omega)?;
        let jac = r.powf(-n - 2.0);
        Ok(ResidualPoint {
            value: r.powf(2.0 - n) * x.value,
            linear: jac * x.linear,
            nonlinear: jac * x.nonlinear,
            residual: jac * x.residual,
        })
    }

    /// `α(p-1) + 2 - s` for the leading radial exponent; never positive for a valid barrier.
    pub fn exponent_gap(&self) -> f64 {
        let rp = &self.rp;
        let a = match self.kind {
            BarrierKind::SeparatedPower { alpha } | BarrierKind::SublinearInhom { alpha } | BarrierKind::SublinearNeg { alpha } => alpha,
            _ => self.star(),
        };
        a * (rp.p - 1.0) + 2.0 - rp.s
    }

    /// Same radii and amplitude, different shape parameters.
    pub fn with_kind(&self, kind: BarrierKind) -> Self {
        Self { kind, ..self.clone() }
    }

    /// Radial range checked by [`verify_residual`].
    pub fn radial_range(&self, span: f64) -> (f64, f64) {
        if self.kelvin {
            (1.0 / (span * self.rho_prime), 1.0 / self.rho_prime)
        } else {
            (self.rho_prime, span * self.rho_prime)
        }
    }
}

/// Sampling grid for residual checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResidualGrid {
    pub radial_nodes: usize,
    pub angular_nodes: usize,
    /// Outer radius as a multiple of `ρ'`.
    pub span: f64,
}

impl Default for ResidualGrid {
    fn default() -> Self {
        Self { radial_nodes: 512, angular_nodes: 257, span: 1e6 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResidualReport {
    pub variant: &'static str,
    pub tau: f64,
    pub rho_prime: f64,
    pub min_residual: f64,
    pub argmin_r: f64,
    pub argmin_omega: f64,
    /// Smallest `residual / (τ r^{a-2})`, a scale-free view of the margin.
    pub min_scaled: f64,
    pub exponent_gap: f64,
    pub asymptotic_sign_ok: bool,
    pub passed: bool,
    pub grid: ResidualGrid,
}

/// Evaluates the residual on a log-spaced radial grid times interior angular nodes.
pub fn verify_residual(spec: &BarrierSpec, grid: ResidualGrid) -> Result<ResidualReport> {
    let (r0, r1) = spec.radial_range(grid.span);
    let radii = log_space(r0, r1, grid.radial_nodes);
    let omegas = spec.domain.interior_nodes(grid.angular_nodes);
    let a = match spec.radial_shape() {
        Some((a, _)) => a,
        None => spec.star(),
    };
    let rows: Vec<Result<(f64, f64, f64, f64)>> = radii
        .par_iter()
        .map(|&r| {
            let mut best = (f64::INFINITY, r, 0.0, f64::INFINITY);
            let x = if spec.kelvin { 1.0 / r } else { r };
            let scale = spec.tau * x.powf(a - 2.0);
            for &w in &omegas {
                let pt = spec.eval(r, w)?;
                let ext = if spec.kelvin { spec.eval_exterior(x, w)?.residual } else { pt.residual };
                best.3 = best.3.min(ext / scale);
                if pt.residual < best.0 {
                    best = (pt.residual, r, w, best.3);
                }
            }
            Ok(best)
        })
        .collect();
    let mut min = (f64::INFINITY, 0.0, 0.0);
    let mut min_scaled = f64::INFINITY;
    for row in rows {
        let (v, r, w, sc) = row?;
        min_scaled = min_scaled.min(sc);
        if v < min.0 {
            min = (v, r, w);
        }
    }
    let gap = spec.exponent_gap();
    let asymptotic_sign_ok = gap <= 1e-12;
    Ok(ResidualReport {
        variant: spec.kind.name(),
        tau: spec.tau,
        rho_prime: spec.rho_prime,
        min_residual: min.0,
        argmin_r: min.1,
        argmin_omega: min.2,
        min_scaled,
        exponent_gap: gap,
        asymptotic_sign_ok,
        passed: min.0 >= RESIDUAL_TOL && asymptotic_sign_ok,
        grid,
    })
}

fn max_pow(profile: &AngularProfile, domain: &AngularDomain, m: usize, q: f64) -> f64 {
    domain.interior_nodes(m).into_iter().map(|w| profile.value(w).powf(q)).fold(0.0, f64::max)
}

/// Builds the barrier named by an `Exists` classification and tunes `τ` until the
/// default grid check passes.
pub fn construct_barrier(rp: &ReducedParams, basis: &SpectralBasis, cls: &Classification) -> Result<BarrierSpec> {
    construct_barrier_on(rp, basis, cls, ResidualGrid::default())
}

pub fn construct_barrier_on(rp: &ReducedParams, basis: &SpectralBasis, cls: &Classification, grid: ResidualGrid) -> Result<BarrierSpec> {
    if cls.verdict != Verdict::Exists {
        return Err(Error::NoBarrier(cls.verdict.to_string()));
    }
    let kind = cls.barrier.ok_or_else(|| Error::NoBarrier("no barrier recorded".into()))?;
    let (ext, kelvin_flag) = match rp.domain {
        Domain::Exterior => (*rp, false),
        Domain::Interior => (kelvin(rp), true),
    };
    let mut spec = initial_spec(&ext, basis, kind, grid)?;
    spec.kelvin = kelvin_flag;
    let sublinear = ext.p < 1.0;
    let linear = (ext.p - 1.0).abs() <= 1e-12;
    for _ in 0..=MAX_ADJUST {
        let report = verify_residual(&spec, grid)?;
        if report.passed {
            return Ok(spec);
        }
        if linear {
            spec.rho_prime *= 2.0;
        } else if sublinear {
            spec.tau *= 2.0;
        } else {
            spec.tau *= 0.5;
        }
    }
    Err(Error::NoConvergence { what: "barrier amplitude search", iterations: MAX_ADJUST })
}

fn initial_spec(rp: &ReducedParams, basis: &SpectralBasis, kind: BarrierKind, grid: ResidualGrid) -> Result<BarrierSpec> {
    let domain = basis.domain()?;
    let lambda1 = basis.lambda1();
    let m = grid.angular_nodes;
    let (n, mu, c, p, s) = (rp.n, rp.mu, rp.c, rp.p, rp.s);
    let nf = n as f64;
    let star = (2.0 - nf) / 2.0;
    let phi1 = || basis.phi1().cloned();
    let (profile, tau, rho_prime) = match kind {
        BarrierKind::SeparatedPower { alpha } => {
            let profile = phi1()?;
            let g = lambda1 - mu - alpha * (alpha + nf - 2.0);
            if (p - 1.0).abs() <= 1e-12 {
                let rho = if (s - 2.0).abs() <= 1e-12 { rp.rho } else { rp.rho.max((2.0 * c / g).powf(1.0 / (s - 2.0))) };
                (profile, 1.0, rho)
            } else {
                let e = alpha * (p - 1.0) + 2.0 - s;
                let pm = max_pow(&profile, &domain, m, p - 1.0);
                let tau = (g / (2.0 * c * pm * rp.rho.powf(e))).powf(1.0 / (p - 1.0));
                (profile, tau, rp.rho)
            }
        }
        BarrierKind::PowerLog { beta } => {
            let profile = phi1()?;
            let delta = s - star * (p - 1.0) - 2.0;
            let mut rho = rp.rho.max(E);
            if (p - 1.0).abs() <= 1e-12 {
                while c * sup_power_log(delta, 2.0, rho) > beta * (1.0 - beta) / 2.0 {
                    rho *= 2.0;
                }
                (profile, 1.0, rho)
            } else {
                let mexp = beta * (p - 1.0) + 2.0;
                let pm = max_pow(&profile, &domain, m, p - 1.0);
                let tau = (beta * (1.0 - beta) / (2.0 * c * pm * sup_power_log(delta, mexp, rho))).powf(1.0 / (p - 1.0));
                rho = rho.max(rp.rho);
                (profile, tau, rho)
            }
        }
        BarrierKind::SublinearInhom { alpha } | BarrierKind::SublinearNeg { alpha } => {
            let cc = alpha * (alpha + nf - 2.0) + mu;
            let profile = if matches!(kind, BarrierKind::SublinearInhom { .. }) {
                solve_angular_inhomogeneous(basis, cc, InhomogeneousVariant::Plain)?
            } else {
                let shifted = solve_angular_inhomogeneous(basis, cc, InhomogeneousVariant::Shifted)?;
                AngularProfile::Offset { base: Box::new(shifted), offset: 1.0 }
            };
            let e = s - 2.0 - alpha * (p - 1.0);
            let pp = max_pow(&profile, &domain, m, p);
            let tau = (2.0 * c * pp * rp.rho.powf(-e)).powf(1.0 / (1.0 - p));
            (profile, tau, rp.rho)
        }
        BarrierKind::CriticalSublinear { beta, eps, sigma_aux } => {
            let k = beta * (1.0 + beta) + eps;
            // smallest log r with log^{β-σ} r >= λ1 + k / log^2 r
            let f = |l: f64| l.powf(beta - sigma_aux) - lambda1 - k / (l * l);
            let mut hi = 2.0;
            while f(hi) < 0.0 {
                hi *= 2.0;
            }
            let l_star = crate::numerics::bisect(f, 1e-3, hi, 1e-14).unwrap_or(hi);
            let rho = rp.rho.max(E).max((1.05 * l_star).exp());
            let delta = s - star * (p - 1.0) - 2.0;
            let mexp = beta * (1.0 - p) + 2.0;
            let tau = (2.0 * c * sup_power_log(delta, mexp, rho) / eps).powf(1.0 / (1.0 - p));
            (AngularProfile::Constant { value: 1.0 }, tau, rho)
        }
        BarrierKind::FullSphereLog { beta } => {
            let rho = rp.rho.max(E);
            let expo = 2.0 - beta * (1.0 - p);
            let tau = (2.0 * c * rho.ln().powf(expo) / (beta * (1.0 - beta))).powf(1.0 / (1.0 - p));
            (AngularProfile::Constant { value: 1.0 }, tau, rho)
        }
    };
    if !(tau.is_finite() && tau > 0.0) {
        return Err(Error::InvalidParams(format!("{} barrier has no admissible amplitude", kind.name())));
    }
    Ok(BarrierSpec { kind, tau, rho_prime, rp: *rp, lambda1, profile, domain, kelvin: false })
}

/// Range of the linear residual of `f(r) ψ(ω)` at the critical potential, with
/// `f = r^{α*} log^β r`.  A sign change shows the pair is not a supersolution.
pub fn pseudo_radial_linear_residual(rp: &ReducedParams, psi: &AngularProfile, domain: &AngularDomain, beta: f64, grid: ResidualGrid) -> (f64, f64) {
    let star = (2.0 - rp.n as f64) / 2.0;
    let radii = log_space(E, grid.span * E, grid.radial_nodes);
    let omegas = domain.interior_nodes(grid.angular_nodes);
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &r in &radii {
        let (f, rad) = power_log(rp.n, star, beta, r);
        for &w in &omegas {
            let pv = psi.value(w);
            let v = rad * pv + f / (r * r) * (-psi.laplacian(w) - rp.mu * pv);
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LowerBoundReport {
    pub minima: Vec<(f64, f64)>,
    pub fitted_exponent: f64,
    pub bound_exponent: f64,
    pub constant: f64,
    pub violation: bool,
}

/// Fits `inf_{R/2<r<R, ω∈Ω'} w` against the power `R^{(2-s)/(1-p)}` that every positive
/// supersolution must dominate when `p < 1`.
pub fn sublinear_lower_bound_check<F>(field: F, p: f64, s: f64, omegas: &[f64], radii: &[f64]) -> Result<LowerBoundReport>
where
    F: Fn(f64, f64) -> f64,
{
    if radii.len() < 4 {
        return Err(Error::TooFewSamples { needed: 4, got: radii.len() });
    }
    if p >= 1.0 {
        return Err(Error::InvalidParams("lower bound applies for p < 1".into()));
    }
    let bound = (2.0 - s) / (1.0 - p);
    let minima: Vec<(f64, f64)> = radii
        .iter()
        .map(|&big| {
            let m = log_space(big / 2.0, big, 17)
                .into_iter()
                .flat_map(|r| omegas.iter().map(move |&w| (r, w)))
                .map(|(r, w)| field(r, w))
                .fold(f64::INFINITY, f64::min);
            (big, m)
        })
        .collect();
    if minima.iter().any(|&(_, m)| !(m > 0.0)) {
        return Ok(LowerBoundReport { minima, fitted_exponent: f64::NAN, bound_exponent: bound, constant: 0.0, violation: true });
    }
    let window = (minima.len() / 2).max(3);
    let tail = &minima[minima.len() - window..];
    let xs: Vec<f64> = tail.iter().map(|t| t.0.ln()).collect();
    let ys: Vec<f64> = tail.iter().map(|t| t.1.ln()).collect();
    let (slope, _) = linear_fit(&xs, &ys);
    let constant = minima.iter().map(|&(r, m)| m / r.powf(bound)).fold(f64::INFINITY, f64::min);
    Ok(LowerBoundReport { minima, fitted_exponent: slope, bound_exponent: bound, constant, violation: slope < bound - 1e-3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;
    use crate::params::ConeSpec;
    use crate::spectral::principal;

    fn build(rp: ReducedParams) -> (BarrierSpec, ResidualReport) {
        let basis = principal(rp.cone, rp.n).unwrap();
        let cls = classify(&rp, &basis).unwrap();
        let spec = construct_barrier(&rp, &basis, &cls).unwrap();
        let rep = verify_residual(&spec, ResidualGrid::default()).unwrap();
        (spec, rep)
    }

    #[test]
    fn power_log_matches_finite_differences() {
        for (n, a, b) in [(3u32, -0.5, 0.5), (2, 0.3, -2.75), (5, -1.5, 0.0)] {
            let r = 7.3;
            let h = 1e-3;
            let f = |x: f64| power_log(n, a, b, x).0;
            let d1 = (f(r + h) - f(r - h)) / (2.0 * h);
            let d2 = (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h);
            let want = -d2 - (n as f64 - 1.0) / r * d1;
            let got = power_log(n, a, b, r).1;
            assert!((got - want).abs() < 1e-6 * want.abs().max(1e-3), "{got} vs {want}");
        }
    }

    #[test]
    fn sup_power_log_matches_scan() {
        let (d, m, r0) = (0.3, 2.5, 3.0);
        let scan = log_space(r0, 1e12, 20000).into_iter().map(|r| r.powf(-d) * r.ln().powf(m)).fold(0.0, f64::max);
        assert!((sup_power_log(d, m, r0) - scan).abs() < 1e-4 * scan);
    }

    #[test]
    fn separated_power_example() {
        let (spec, rep) = build(ReducedParams::new(3, 0.0, 1.0, 1.0, 3.0, ConeSpec::FullSphere));
        assert_eq!(spec.kind, BarrierKind::SeparatedPower { alpha: -0.75 });
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn above_positive_root_fails() {
        let (spec, _) = build(ReducedParams::new(3, 0.0, 1.0, 1.0, 3.0, ConeSpec::FullSphere));
        let bad = spec.with_kind(BarrierKind::SeparatedPower { alpha: 0.1 });
        assert!(verify_residual(&bad, ResidualGrid::default()).unwrap().min_residual < 0.0);
    }

    #[test]
    fn exact_linear_solution_has_zero_residual() {
        let mut rp = ReducedParams::new(3, 0.0, 2.0, 0.1, 1.0, ConeSpec::FullSphere);
        rp.c = 0.1;
        let (_, rep) = build(rp);
        assert!(rep.min_residual.abs() < 1e-12);
    }

    #[test]
    fn critical_sublinear_full_sphere_is_exact() {
        let rp = ReducedParams::new(3, 0.25, -0.5 * (0.5 - 1.0) + 2.0 + 0.3, 1.0, 0.5, ConeSpec::FullSphere);
        let (spec, rep) = build(rp);
        assert_eq!(spec.kind.name(), "CriticalSublinear");
        assert!(rep.passed, "{rep:?}");
    }

    #[test]
    fn kelvin_residual_scales() {
        let ext = ReducedParams::new(3, 0.0, 1.0, 1.0, 3.0, ConeSpec::FullSphere);
        let (spec, _) = build(ext);
        let mut int = spec.clone();
        int.kelvin = true;
        let y = 0.01;
        let a = int.eval(y, 0.3).unwrap().residual;
        let b = spec.eval(1.0 / y, 0.3).unwrap().residual * y.powf(-5.0);
        assert!((a - b).abs() <= 1e-12 * b.abs());
    }

    #[test]
    fn lower_bound_needs_four_annuli() {
        let r = sublinear_lower_bound_check(|_, _| 1.0, 0.5, 3.0, &[0.5], &[10.0, 100.0, 1000.0]);
        assert_eq!(r.unwrap_err(), Error::TooFewSamples { needed: 4, got: 3 });
    }
}
