//! Radial mode profiles, comparison functions built from angular modes, annular
//! envelopes and the logarithmic correction profiles.

use serde::Serialize;

use crate::barriers::power_log;
use crate::classifier::{indicial_roots, Roots, CRITICAL_TOL};
use crate::error::{Error, Result};
use crate::numerics::{adaptive_simpson, linear_fit, log_space, solve_tridiagonal};
use crate::spectral::{eigen_arc, SpectralBasis};

/// Largest number of angular modes a comparison function may use.
pub const MAX_MODES: usize = 512;
/// Bound on the discarded part of a mode expansion.
pub const TAIL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ModeKind {
    /// `(r/2)^{α⁻}`, normalised at `r = 2`.
    PowerMinus,
    /// `(r^{α⁺} - r^{α⁻}) / (R^{α⁺} - R^{α⁻})`, zero at 1 and one at `R`.
    TwoSidedR { big_r: f64 },
    /// `(log r / log R)(r/R)^{α*}`.
    StarR { big_r: f64 },
}

/// Radial factor of one separated solution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RadialMode {
    pub kind: ModeKind,
    pub roots: Roots,
    pub n: u32,
}

impl RadialMode {
    pub fn new(n: u32, kind: ModeKind, roots: Roots) -> Result<Self> {
        match (kind, roots) {
            (ModeKind::StarR { .. }, Roots::Double { .. }) => {}
            (ModeKind::StarR { .. }, _) => return Err(Error::InvalidParams("star profile needs a double root".into())),
            (_, Roots::Double { .. }) => return Err(Error::DoubleRootUseStar),
            _ => {}
        }
        Ok(Self { kind, roots, n })
    }

    /// Value and `-f'' - (N-1)f'/r`.
    pub fn eval(&self, r: f64) -> (f64, f64) {
        let n = self.n;
        match self.kind {
            ModeKind::PowerMinus => {
                let a = self.roots.minus();
                let (f, rad) = power_log(n, a, 0.0, r);
                let s = 2f64.powf(-a);
                (s * f, s * rad)
            }
            ModeKind::TwoSidedR { big_r } => {
                // ratio form: (r/R)^{α⁺}(1 - r^{-gap}) / (1 - R^{-gap}) stays finite for large modes
                let (am, ap) = (self.roots.minus(), self.roots.plus());
                let gap = ap - am;
                let f = (ap * (r / big_r).ln()).exp() * (-(-gap * r.ln()).exp_m1()) / (-(-gap * big_r.ln()).exp_m1());
                let lambda_v = ap * (ap + n as f64 - 2.0);
                (f, -lambda_v * f / (r * r))
            }
            ModeKind::StarR { big_r } => {
                let a = self.roots.minus();
                let s = big_r.powf(-a) / big_r.ln();
                let (f, rad) = power_log(n, a, 1.0, r);
                (s * f, s * rad)
            }
        }
    }

    pub fn value(&self, r: f64) -> f64 {
        self.eval(r).0
    }
}

/// Roots of `α(α + N - 2) = λ_k - μ`, collapsed to a double root within tolerance.
pub fn mode_roots(n: u32, mu: f64, lambda_k: f64) -> Result<Roots> {
    let ch = (n as f64 - 2.0).powi(2) / 4.0;
    if (mu - ch - lambda_k).abs() <= CRITICAL_TOL {
        return Ok(Roots::Double { star: (2.0 - n as f64) / 2.0 });
    }
    indicial_roots(n, mu, lambda_k)
}

/// `exp(-1/(1-t²))` rescaled to `[lo, hi]`, zero outside.
pub fn bump(lo: f64, hi: f64) -> impl Fn(f64) -> f64 {
    move |w: f64| {
        let t = (2.0 * w - lo - hi) / (hi - lo);
        if t.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - t * t)).exp()
        }
    }
}

/// Middle half of the arc `(0, θ0)`.
pub fn middle_half(theta0: f64) -> (f64, f64) {
    (theta0 / 4.0, 3.0 * theta0 / 4.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonKind {
    /// Decaying solution on `r >= 2`.
    Lower,
    /// Solution on `1 < r < R` vanishing at `r = 1`.
    Upper,
}

/// `Σ ψ_k v_k(r) φ_k(ω)` on a planar sector.
#[derive(Debug, Clone)]
pub struct ComparisonFunction {
    pub basis: SpectralBasis,
    pub coeffs: Vec<f64>,
    pub modes: Vec<RadialMode>,
    pub kind: ComparisonKind,
    pub critical: bool,
    pub mu: f64,
    pub tail_bound: f64,
}

impl ComparisonFunction {
    pub fn eval(&self, r: f64, omega: f64) -> f64 {
        self.coeffs.iter().zip(&self.modes).zip(&self.basis.profiles).map(|((c, m), p)| c * m.value(r) * p.value(omega)).sum()
    }

    /// `v_ψ - ψ1 v1`.
    pub fn remainder(&self, r: f64, omega: f64) -> f64 {
        self.eval(r, omega) - self.coeffs[0] * self.modes[0].value(r) * self.basis.profiles[0].value(omega)
    }

    pub fn modes_used(&self) -> usize {
        self.coeffs.len()
    }
}

/// Expands `ψ` in Dirichlet modes of the arc `(0, θ0)` and attaches the radial modes.
///
/// In the critical case `μ = λ1` the first mode uses `2^{-α*} r^{α*}` (lower) or the
/// star profile (upper).
pub fn build_comparison<F: Fn(f64) -> f64>(psi: F, theta0: f64, mu: f64, kind: ComparisonKind, big_r: f64) -> Result<ComparisonFunction> {
    let full = eigen_arc(theta0, MAX_MODES)?;
    if full.cone.is_full_sphere() {
        return Err(Error::InvalidParams("comparison functions need a proper arc".into()));
    }
    if kind == ComparisonKind::Upper && !(big_r > 2.0) {
        return Err(Error::InvalidParams(format!("upper comparison needs R > 2, got {big_r}")));
    }
    let nodes = 32769;
    let h = theta0 / (nodes - 1) as f64;
    let psi_samples: Vec<f64> = (0..nodes).map(|i| psi(i as f64 * h)).collect();
    let coeffs: Vec<f64> = full
        .profiles
        .iter()
        .map(|p| {
            let ys: Vec<f64> = psi_samples.iter().enumerate().map(|(i, v)| v * p.value(i as f64 * h)).collect();
            crate::numerics::simpson_samples(&ys, h)
        })
        .collect();
    // every radial factor is bounded by 1 on its domain, every φ_k by sqrt(2/θ0)
    let amp = (2.0 / theta0).sqrt();
    let mut tails = vec![0.0; MAX_MODES + 1];
    for k in (0..MAX_MODES).rev() {
        tails[k] = tails[k + 1] + coeffs[k].abs() * amp;
    }
    let k_used = (1..=MAX_MODES).find(|&k| tails[k] <= TAIL_TOL).ok_or(Error::TailTooLarge { k_max: MAX_MODES, tail: tails[MAX_MODES - 1] })?;
    let mut modes = Vec::with_capacity(k_used);
    let mut critical = false;
    for (k, &lambda) in full.lambdas.iter().take(k_used).enumerate() {
        let roots = mode_roots(2, mu, lambda)?;
        if k == 0 && matches!(roots, Roots::Double { .. }) {
            critical = true;
        }
        let mode_kind = match (kind, k == 0 && critical) {
            (ComparisonKind::Lower, _) => ModeKind::PowerMinus,
            (ComparisonKind::Upper, true) => ModeKind::StarR { big_r },
            (ComparisonKind::Upper, false) => ModeKind::TwoSidedR { big_r },
        };
        let mode = if k == 0 && critical && kind == ComparisonKind::Lower {
            // 2^{-α*} r^{α*}: same normalisation as the power profile
            RadialMode { kind: ModeKind::PowerMinus, roots, n: 2 }
        } else {
            RadialMode::new(2, mode_kind, roots)?
        };
        modes.push(mode);
    }
    let basis = SpectralBasis { lambdas: full.lambdas[..k_used].to_vec(), profiles: full.profiles[..k_used].to_vec(), ..full };
    Ok(ComparisonFunction { basis, coeffs: coeffs[..k_used].to_vec(), modes, kind, critical, mu, tail_bound: tails[k_used] })
}

/// Inner compact set `[2.25, 2.75] × Ω′` used to normalise upper comparison functions.
pub const K0_RADII: (f64, f64) = (2.25, 2.75);

/// `inf` of `field` over `K0_RADII × omegas`.
pub fn k0_infimum<F: Fn(f64, f64) -> f64>(field: &F, omegas: &[f64]) -> f64 {
    let mut lo = f64::INFINITY;
    for i in 0..=16 {
        let r = K0_RADII.0 + (K0_RADII.1 - K0_RADII.0) * i as f64 / 16.0;
        for &w in omegas {
            lo = lo.min(field(r, w));
        }
    }
    lo
}

/// `M` over the annulus at `R` of the upper comparison function divided by its `K0` infimum.
pub fn normalized_upper_max(upper: &ComparisonFunction, omegas: &[f64]) -> Result<f64> {
    let big_r = match upper.modes[0].kind {
        ModeKind::TwoSidedR { big_r } | ModeKind::StarR { big_r } => big_r,
        ModeKind::PowerMinus => return Err(Error::InvalidParams("expected an upper comparison function".into())),
    };
    let field = |r: f64, w: f64| upper.eval(r, w);
    let inf = k0_infimum(&field, omegas);
    if !(inf > 0.0) {
        return Err(Error::NonPositiveBarrier { r: K0_RADII.0, omega: f64::NAN });
    }
    Ok(envelope(&field, big_r, omegas).1 / inf)
}

/// `(min, max)` of `field` over `R/2 <= r <= R`, `ω ∈ omegas`.
pub fn envelope<F: Fn(f64, f64) -> f64>(field: &F, big_r: f64, omegas: &[f64]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for r in log_space(big_r / 2.0, big_r, 33) {
        for &w in omegas {
            let v = field(r, w);
            lo = lo.min(v);
            hi = hi.max(v);
        }
    }
    (lo, hi)
}

/// Largest `|Δ log(ratio)| / Δ log10 R` over consecutive radii at or beyond `from`.
pub fn drift_per_decade(ratios: &[(f64, f64)], from: f64) -> f64 {
    ratios
        .windows(2)
        .filter(|w| w[0].0 >= from * (1.0 - 1e-12))
        .map(|w| ((w[1].1 / w[0].1).ln() / (w[1].0 / w[0].0).log10()).abs())
        .fold(0.0, f64::max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    /// Envelopes `R^{α⁻}` and `R^{α⁺}`.
    Subcritical,
    /// Envelopes `R^{α*}` and `R^{α*} log R`.
    Critical,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnvelopeReport {
    pub regime: Regime,
    /// `(R, m(R) / lower envelope)`
    pub lower_ratios: Vec<(f64, f64)>,
    /// `(R, m(R) / upper envelope)`
    pub upper_ratios: Vec<(f64, f64)>,
    pub fitted_exponent: f64,
    /// Signed trailing drift per decade of the lower ratio; negative means decay below the envelope.
    pub lower_trend: f64,
    /// Signed trailing drift per decade of the upper ratio; positive means growth past the envelope.
    pub upper_trend: f64,
    pub lower_tight: bool,
    pub upper_tight: bool,
    pub violation: bool,
}

const DRIFT_TOL: f64 = 0.01;

fn trend(ratios: &[(f64, f64)], from: f64) -> f64 {
    let tail: Vec<&(f64, f64)> = ratios.iter().filter(|t| t.0 >= from * (1.0 - 1e-12)).collect();
    let tail = if tail.len() < 2 { ratios.iter().rev().take(2).rev().collect() } else { tail };
    let xs: Vec<f64> = tail.iter().map(|t| t.0.log10()).collect();
    let ys: Vec<f64> = tail.iter().map(|t| t.1.ln()).collect();
    linear_fit(&xs, &ys).0
}

/// Checks that `inf` over annuli stays between the two power envelopes.
pub fn two_sided_bound_check<F: Fn(f64, f64) -> f64>(field: F, roots: Roots, omegas: &[f64], radii: &[f64], trailing_from: f64) -> Result<EnvelopeReport> {
    if radii.len() < 4 {
        return Err(Error::TooFewSamples { needed: 4, got: radii.len() });
    }
    let regime = if matches!(roots, Roots::Double { .. }) { Regime::Critical } else { Regime::Subcritical };
    let mins: Vec<(f64, f64)> = radii.iter().map(|&r| (r, envelope(&field, r, omegas).0)).collect();
    if mins.iter().any(|m| !(m.1 > 0.0)) {
        return Err(Error::NonPositiveBarrier { r: mins.iter().find(|m| !(m.1 > 0.0)).unwrap().0, omega: f64::NAN });
    }
    let lower_env = |r: f64| r.powf(roots.minus());
    let upper_env = |r: f64| match regime {
        Regime::Subcritical => r.powf(roots.plus()),
        Regime::Critical => r.powf(roots.plus()) * r.ln(),
    };
    let lower_ratios: Vec<(f64, f64)> = mins.iter().map(|&(r, m)| (r, m / lower_env(r))).collect();
    let upper_ratios: Vec<(f64, f64)> = mins.iter().map(|&(r, m)| (r, m / upper_env(r))).collect();
    let window: Vec<&(f64, f64)> = mins.iter().filter(|t| t.0 >= trailing_from * (1.0 - 1e-12)).collect();
    let window = if window.len() < 2 { mins.iter().collect() } else { window };
    let xs: Vec<f64> = window.iter().map(|t| t.0.ln()).collect();
    let ys: Vec<f64> = window.iter().map(|t| t.1.ln()).collect();
    let fitted_exponent = linear_fit(&xs, &ys).0;
    let lower_trend = trend(&lower_ratios, trailing_from);
    let upper_trend = trend(&upper_ratios, trailing_from);
    Ok(EnvelopeReport {
        regime,
        lower_tight: lower_trend.abs() < DRIFT_TOL,
        upper_tight: upper_trend.abs() < DRIFT_TOL,
        violation: lower_trend < -DRIFT_TOL || upper_trend > DRIFT_TOL,
        lower_ratios,
        upper_ratios,
        fitted_exponent,
        lower_trend,
        upper_trend,
    })
}

/// Correction profile solving
/// `-η'' - (N-1)η'/r - C_H η/r² + δ² η/r² = r^{α*-2} / log^σ r` on `(ρ, R)`, zero at both ends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EtaProfile {
    pub n: u32,
    pub delta: f64,
    pub sigma: f64,
    pub rho: f64,
    pub big_r: f64,
}

/// Stable `sinh(δx)/sinh(δX)` for `0 <= x <= X`.
fn sinh_ratio(delta: f64, x: f64, big_x: f64) -> f64 {
    (-delta * (big_x - x)).exp() * (-(-2.0 * delta * x).exp_m1()) / (-(-2.0 * delta * big_x).exp_m1())
}

impl EtaProfile {
    pub fn new(n: u32, delta: f64, sigma: f64, rho: f64, big_r: f64) -> Result<Self> {
        if !(rho > 1.0 && big_r > rho) {
            return Err(Error::InvalidParams(format!("need 1 < rho < R, got rho={rho}, R={big_r}")));
        }
        if !(delta >= 0.0 && sigma > 0.0) {
            return Err(Error::InvalidParams("need delta >= 0 and sigma > 0".into()));
        }
        if delta == 0.0 && sigma != 1.0 {
            return Err(Error::InvalidParams("the k=1 closed form needs sigma = 1".into()));
        }
        Ok(Self { n, delta, sigma, rho, big_r })
    }

    fn star(&self) -> f64 {
        (2.0 - self.n as f64) / 2.0
    }

    /// `(A, B)` of the `k = 1` closed form `r^{α*}(A + B log r - log r log log r)`.
    pub fn first_mode_coefficients(&self) -> (f64, f64) {
        let (lr, lp) = (self.big_r.ln(), self.rho.ln());
        let (llr, llp) = (lr.ln(), lp.ln());
        let a = lr * lp * (llp - llr) / (lr - lp);
        let b = (lr * llr - lp * llp) / (lr - lp);
        (a, b)
    }

    /// Particular solution `η_k(r) r^{-α*}` in `t = log r`, with the tail bound of the
    /// outer integral cut at `r·10^6`.
    pub fn particular_scaled(&self, t: f64) -> (f64, f64) {
        let (d, s) = (self.delta, self.sigma);
        let t0 = self.rho.ln();
        let cut = t + 1e6f64.ln();
        let outer = adaptive_simpson(&|u: f64| (-d * (u - t)).exp() * u.powf(-s), t, cut, 1e-12);
        let inner = if t > t0 { adaptive_simpson(&|u: f64| (-d * (t - u)).exp() * u.powf(-s), t0, t, 1e-12) } else { 0.0 };
        let tail = (-d * (cut - t)).exp() / (d * cut.powf(s));
        ((outer + inner) / (2.0 * d), tail / (2.0 * d))
    }

    /// `η_k(r)` (no boundary correction).
    pub fn particular(&self, r: f64) -> f64 {
        r.powf(self.star()) * self.particular_scaled(r.ln()).0
    }

    /// `(A_{k,R}, B_{k,R})` multiplying `r^{α⁻}` and `r^{α⁺}`.
    pub fn boundary_coefficients(&self) -> (f64, f64) {
        let a = self.star();
        let (am, ap) = (a - self.delta, a + self.delta);
        let (rho, big) = (self.rho, self.big_r);
        let (e0, e1) = (self.particular(rho), self.particular(big));
        let ak = -(big.powf(ap) * e0 - rho.powf(ap) * e1) / (big.powf(ap) * rho.powf(am) - big.powf(am) * rho.powf(ap));
        let bk = -(big.powf(am) * e0 - rho.powf(am) * e1) / (big.powf(am) * rho.powf(ap) - big.powf(ap) * rho.powf(am));
        (ak, bk)
    }

    pub fn eval(&self, r: f64) -> f64 {
        let a = self.star();
        let t = r.ln();
        let (t0, t1) = (self.rho.ln(), self.big_r.ln());
        if self.delta == 0.0 {
            let (ca, cb) = self.first_mode_coefficients();
            return r.powf(a) * (ca + cb * t - t * t.ln());
        }
        let y0 = self.particular_scaled(t0).0;
        let y1 = self.particular_scaled(t1).0;
        let yp = self.particular_scaled(t).0;
        let d = self.delta;
        let span = t1 - t0;
        let yh = -y0 * sinh_ratio(d, t1 - t, span) - y1 * sinh_ratio(d, t - t0, span);
        r.powf(a) * (yp + yh)
    }
}

/// Profiles for modes `1..=k` of `basis`, with `δ_k = sqrt(λ_k - λ1)` and `σ = 1`.
pub fn eta_profiles(basis: &SpectralBasis, k: usize, rho: f64, big_r: f64) -> Result<Vec<EtaProfile>> {
    if basis.lambdas.len() < k {
        return Err(Error::InvalidParams(format!("basis has {} modes, need {k}", basis.lambdas.len())));
    }
    let l1 = basis.lambda1();
    basis.lambdas[..k].iter().map(|&l| EtaProfile::new(basis.n, (l - l1).max(0.0).sqrt(), 1.0, rho, big_r)).collect()
}

/// Boundary data and forcing for [`radial_bvp_oracle`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BvpData {
    pub left: f64,
    pub right: f64,
    /// Whether the `r^{α*-2}/log^σ r` forcing is present.
    pub forcing: bool,
}

/// Finite-difference solution of the radial problem on a grid uniform in `log r`.
/// Returns `(r_i, η_i)` for `nodes` points from `ρ` to `R`.
pub fn radial_bvp_oracle(n: u32, delta: f64, sigma: f64, rho: f64, big_r: f64, nodes: usize, data: BvpData) -> Result<Vec<(f64, f64)>> {
    if nodes < 64 {
        return Err(Error::TooFewSamples { needed: 64, got: nodes });
    }
    let nf = n as f64;
    let a = (2.0 - nf) / 2.0;
    let ch = (nf - 2.0).powi(2) / 4.0;
    let (t0, t1) = (rho.ln(), big_r.ln());
    let h = (t1 - t0) / (nodes - 1) as f64;
    let m = nodes - 2;
    // r²(-η'' - (N-1)η'/r) = -η_tt - (N-2)η_t
    let lo_c = -1.0 / (h * h) + (nf - 2.0) / (2.0 * h);
    let up_c = -1.0 / (h * h) - (nf - 2.0) / (2.0 * h);
    let di_c = 2.0 / (h * h) + delta * delta - ch;
    let mut rhs = vec![0.0; m];
    for (i, v) in rhs.iter_mut().enumerate() {
        let t = t0 + h * (i + 1) as f64;
        if data.forcing {
            *v = (a * t).exp() * t.powf(-sigma);
        }
    }
    rhs[0] -= lo_c * data.left;
    rhs[m - 1] -= up_c * data.right;
    let sol = solve_tridiagonal(&vec![lo_c; m], &vec![di_c; m], &vec![up_c; m], &rhs);
    let mut out = Vec::with_capacity(nodes);
    out.push((rho, data.left));
    for (i, v) in sol.into_iter().enumerate() {
        out.push(((t0 + h * (i + 1) as f64).exp(), v));
    }
    out.push((big_r, data.right));
    Ok(out)
}

/// [`radial_bvp_oracle`] on `nodes` and `2·nodes - 1` points, combined by one Richardson step
/// on the coarse nodes.
pub fn radial_bvp_richardson(n: u32, delta: f64, sigma: f64, rho: f64, big_r: f64, nodes: usize, data: BvpData) -> Result<Vec<(f64, f64)>> {
    let coarse = radial_bvp_oracle(n, delta, sigma, rho, big_r, nodes, data)?;
    let fine = radial_bvp_oracle(n, delta, sigma, rho, big_r, 2 * nodes - 1, data)?;
    Ok(coarse.iter().enumerate().map(|(i, &(r, c))| (r, (4.0 * fine[2 * i].1 - c) / 3.0)).collect())
}

/// Linear interpolation in `log r` of oracle output.
pub fn interpolate_log(pts: &[(f64, f64)], r: f64) -> f64 {
    let t = r.ln();
    let i = pts.partition_point(|p| p.0.ln() <= t).clamp(1, pts.len() - 1);
    let (ta, tb) = (pts[i - 1].0.ln(), pts[i].0.ln());
    let w = (t - ta) / (tb - ta);
    pts[i - 1].1 * (1.0 - w) + pts[i].1 * w
}

/// Least-squares slope of `η(r0)` against `log log R`.
pub fn loglog_slope(samples: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = samples.iter().map(|s| s.0.ln().ln()).collect();
    let ys: Vec<f64> = samples.iter().map(|s| s.1).collect();
    linear_fit(&xs, &ys).0
}

/// `max |oracle - closed| / max |closed|` over the oracle nodes.
pub fn oracle_deviation(profile: &EtaProfile, nodes: usize, richardson: bool) -> Result<f64> {
    let solve = if richardson { radial_bvp_richardson } else { radial_bvp_oracle };
    let pts = solve(profile.n, profile.delta, profile.sigma, profile.rho, profile.big_r, nodes, BvpData { left: 0.0, right: 0.0, forcing: true })?;
    let closed: Vec<f64> = pts.iter().map(|&(r, _)| profile.eval(r)).collect();
    let scale = closed.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let dev = pts.iter().zip(&closed).fold(0.0f64, |m, (p, c)| m.max((p.1 - c).abs()));
    Ok(dev / scale)
}
