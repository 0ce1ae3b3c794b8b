//! Indicial roots, critical lines and the existence verdict.
//!
//! In reduced variables the separated solutions `r^α φ1` of the linear problem satisfy
//! `α(α + N - 2) = λ1 - μ`.  Nonexistence in the exterior cone holds on or below
//! `Λ(p) = min{α⁻(p-1) + 2, α⁺(p-1) + 2}`.

use serde::Serialize;
use std::fmt;

use crate::error::{Error, Result};
use crate::params::{kelvin, Domain, ProblemParams, ReducedParams};
use crate::spectral::SpectralBasis;

/// Tolerance for equality with the threshold `C_H + λ1`.
pub const CRITICAL_TOL: f64 = 1e-12;
/// Tolerance for the discriminant in [`indicial_roots`].
pub const DOUBLE_ROOT_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Roots {
    Distinct { minus: f64, plus: f64 },
    Double { star: f64 },
}

impl Roots {
    pub fn minus(&self) -> f64 {
        match *self {
            Roots::Distinct { minus, .. } => minus,
            Roots::Double { star } => star,
        }
    }

    pub fn plus(&self) -> f64 {
        match *self {
            Roots::Distinct { plus, .. } => plus,
            Roots::Double { star } => star,
        }
    }

    /// Shifts both roots by `d`.
    pub fn shifted(&self, d: f64) -> Roots {
        match *self {
            Roots::Distinct { minus, plus } => Roots::Distinct { minus: minus + d, plus: plus + d },
            Roots::Double { star } => Roots::Double { star: star + d },
        }
    }
}

/// Roots of `x^2 + b x - c = 0` without cancellation; `disc` is `b^2 + 4c`.
fn stable_roots(b: f64, c: f64) -> Result<Roots> {
    let disc = b * b + 4.0 * c;
    if disc.abs() <= DOUBLE_ROOT_TOL {
        return Ok(Roots::Double { star: -b / 2.0 });
    }
    if disc < 0.0 {
        return Err(Error::NoRealRoots);
    }
    let sq = disc.sqrt();
    if b == 0.0 {
        return Ok(Roots::Distinct { minus: -sq / 2.0, plus: sq / 2.0 });
    }
    let q = -0.5 * (b + b.signum() * sq);
    let (r1, r2) = (q, -c / q);
    Ok(Roots::Distinct { minus: r1.min(r2), plus: r1.max(r2) })
}

/// Roots of `α(α + N - 2) = λ1 - μ`.
pub fn indicial_roots(n: u32, mu: f64, lambda1: f64) -> Result<Roots> {
    stable_roots(n as f64 - 2.0, lambda1 - mu)
}

/// Roots of `γ(γ + N - 2 + A) = λ1 - B` for the weighted equation.
pub fn original_roots(pp: &ProblemParams, lambda1: f64) -> Result<Roots> {
    stable_roots(pp.n as f64 - 2.0 + pp.a, lambda1 - pp.b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Minus,
    Plus,
    Both,
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Minus => "minus",
            Branch::Plus => "plus",
            Branch::Both => "both",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineKind {
    /// `min` of the two affine lines; exterior domains.
    ExteriorMin,
    /// `max` of the two affine lines; interior domains.
    InteriorMax,
}

/// Value of the critical line at `p` and the root that attains it.
pub fn critical_line(p: f64, roots: &Roots, kind: LineKind) -> (f64, Branch) {
    let lm = roots.minus() * (p - 1.0) + 2.0;
    let lp = roots.plus() * (p - 1.0) + 2.0;
    if matches!(roots, Roots::Double { .. }) || p == 1.0 {
        return (lm.min(lp), Branch::Both);
    }
    let take_minus = match kind {
        LineKind::ExteriorMin => lm <= lp,
        LineKind::InteriorMax => lm >= lp,
    };
    if take_minus {
        (lm, Branch::Minus)
    } else {
        (lp, Branch::Plus)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Exists,
    NoPositiveSupersolutions,
    OpenProblem,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Exists => "Exists",
            Verdict::NoPositiveSupersolutions => "NoPositiveSupersolutions",
            Verdict::OpenProblem => "OpenProblem",
        })
    }
}

/// Which argument decides the verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Justification {
    /// The linear point `(p, s) = (1, 2)`, decided by `μ + C` against `C_H + λ1`.
    LinearSpectral,
    /// `μ > C_H + λ1`: no positive supersolution of the linear inequality.
    SupercriticalPotential,
    /// `μ < C_H + λ1`, decided by the position relative to the critical line.
    SubcriticalLine,
    /// `μ = C_H + λ1`, decided by the position relative to the critical line.
    CriticalLine,
    /// An explicit barrier is available.
    BarrierExists,
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Justification::LinearSpectral => "linear-spectral",
            Justification::SupercriticalPotential => "supercritical-potential",
            Justification::SubcriticalLine => "subcritical-line",
            Justification::CriticalLine => "critical-line",
            Justification::BarrierExists => "barrier-exists",
        })
    }
}

/// Barrier family and its shape parameters; amplitudes and radii are fixed later.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum BarrierKind {
    /// `τ r^α φ1`
    SeparatedPower { alpha: f64 },
    /// `τ r^{α*} log^β r φ1`
    PowerLog { beta: f64 },
    /// `τ r^α φ` with `-Δφ - cφ = 1`
    SublinearInhom { alpha: f64 },
    /// `τ r^α (φ̄ + 1)` with `-Δφ̄ - c(φ̄ + 1) = 1`
    SublinearNeg { alpha: f64 },
    /// `τ (w_σ + r^{α*} log^{-β} r)`
    CriticalSublinear { beta: f64, eps: f64, sigma_aux: f64 },
    /// `τ r^{α*} log^β r` on the full sphere
    FullSphereLog { beta: f64 },
}

impl BarrierKind {
    pub fn name(&self) -> &'static str {
        match self {
            BarrierKind::SeparatedPower { .. } => "SeparatedPower",
            BarrierKind::PowerLog { .. } => "PowerLog",
            BarrierKind::SublinearInhom { .. } => "SublinearInhom",
            BarrierKind::SublinearNeg { .. } => "SublinearNeg",
            BarrierKind::CriticalSublinear { .. } => "CriticalSublinear",
            BarrierKind::FullSphereLog { .. } => "FullSphereLog",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub verdict: Verdict,
    pub justification: Justification,
    pub domain: Domain,
    pub n: u32,
    pub p: f64,
    pub s: f64,
    pub mu: f64,
    pub lambda1: f64,
    /// `C_H + λ1`.
    pub threshold: f64,
    pub roots: Option<Roots>,
    /// Critical line value at `p` (`Λ` for exterior, `Λ*` for interior).
    pub line: Option<f64>,
    pub branch: Option<Branch>,
    pub barrier: Option<BarrierKind>,
    /// For interior problems the barrier is the Kelvin image of an exterior one.
    pub via_kelvin: bool,
}

/// Whether `s` lies on a line of value `line`, with a relative tolerance.
pub fn on_line(s: f64, line: f64) -> bool {
    (s - line).abs() <= 1e-12 * s.abs().max(1.0)
}

fn is_linear_point(p: f64, s: f64) -> bool {
    (p - 1.0).abs() <= 1e-12 && (s - 2.0).abs() <= 1e-12
}

/// Classifies the reduced problem using the principal eigenvalue of `basis`.
pub fn classify(rp: &ReducedParams, basis: &SpectralBasis) -> Result<Classification> {
    classify_with_lambda1(rp, basis.lambda1())
}

/// Classifies the reduced problem given `λ1` directly.
pub fn classify_with_lambda1(rp: &ReducedParams, lambda1: f64) -> Result<Classification> {
    rp.validate()?;
    match rp.domain {
        Domain::Exterior => classify_exterior(rp, lambda1),
        Domain::Interior => classify_interior(rp, lambda1),
    }
}

fn midpoint(a: f64, b: f64) -> f64 {
    0.5 * (a + b)
}

fn classify_exterior(rp: &ReducedParams, lambda1: f64) -> Result<Classification> {
    let threshold = rp.hardy_constant() + lambda1;
    let gap = rp.mu - threshold;
    let (p, s) = (rp.p, rp.s);
    let star = (2.0 - rp.n as f64) / 2.0;
    let mut out = Classification {
        verdict: Verdict::NoPositiveSupersolutions,
        justification: Justification::SupercriticalPotential,
        domain: Domain::Exterior,
        n: rp.n,
        p,
        s,
        mu: rp.mu,
        lambda1,
        threshold,
        roots: None,
        line: None,
        branch: None,
        barrier: None,
        via_kelvin: false,
    };
    let critical = gap.abs() <= CRITICAL_TOL;
    if !critical && gap < 0.0 || critical {
        let roots = if critical { Roots::Double { star } } else { indicial_roots(rp.n, rp.mu, lambda1)? };
        let (line, branch) = critical_line(p, &roots, LineKind::ExteriorMin);
        out.roots = Some(roots);
        out.line = Some(line);
        out.branch = Some(branch);
    }

    if is_linear_point(p, s) {
        out.justification = Justification::LinearSpectral;
        if rp.mu + rp.c > threshold + CRITICAL_TOL {
            out.verdict = Verdict::NoPositiveSupersolutions;
        } else {
            // r^α φ1 solves the linear equation exactly when α(α + N - 2) = λ1 - μ - C.
            let shifted = indicial_roots(rp.n, rp.mu + rp.c, lambda1).unwrap_or(Roots::Double { star });
            out.verdict = Verdict::Exists;
            out.barrier = Some(BarrierKind::SeparatedPower { alpha: shifted.minus() });
        }
        return Ok(out);
    }

    if !critical && gap > 0.0 {
        return Ok(out);
    }

    let roots = out.roots.unwrap();
    let line = out.line.unwrap();
    let at_line = on_line(s, line);
    let below = s < line && !at_line;

    if !critical {
        out.justification = Justification::SubcriticalLine;
        if below || at_line {
            return Ok(out);
        }
        let (am, ap) = (roots.minus(), roots.plus());
        out.verdict = Verdict::Exists;
        out.justification = Justification::BarrierExists;
        out.barrier = Some(if p > 1.0 {
            let cap = ((s - 2.0) / (p - 1.0)).min(ap);
            BarrierKind::SeparatedPower { alpha: midpoint(am, cap) }
        } else if p == 1.0 {
            BarrierKind::SeparatedPower { alpha: midpoint(am, ap) }
        } else {
            let floor = ((s - 2.0) / (p - 1.0)).max(am);
            let alpha = midpoint(floor, ap);
            if p >= 0.0 {
                BarrierKind::SublinearInhom { alpha }
            } else {
                BarrierKind::SublinearNeg { alpha }
            }
        });
        return Ok(out);
    }

    out.justification = Justification::CriticalLine;
    if below || (at_line && p >= -1.0) {
        return Ok(out);
    }
    if at_line {
        if rp.cone.is_full_sphere() {
            out.verdict = Verdict::Exists;
            out.justification = Justification::BarrierExists;
            out.barrier = Some(BarrierKind::FullSphereLog { beta: midpoint(2.0 / (1.0 - p), 1.0) });
        } else {
            out.verdict = Verdict::OpenProblem;
        }
        return Ok(out);
    }
    out.verdict = Verdict::Exists;
    out.justification = Justification::BarrierExists;
    out.barrier = Some(if p >= 1.0 {
        BarrierKind::PowerLog { beta: 0.5 }
    } else {
        let sigma_aux = 1.75;
        BarrierKind::CriticalSublinear { beta: sigma_aux + 1.0, eps: 0.125, sigma_aux }
    });
    Ok(out)
}

/// Interior verdicts use `Λ* = max{...}` with the inequalities reversed.
fn classify_interior(rp: &ReducedParams, lambda1: f64) -> Result<Classification> {
    let threshold = rp.hardy_constant() + lambda1;
    let gap = rp.mu - threshold;
    let (p, s) = (rp.p, rp.s);
    let critical = gap.abs() <= CRITICAL_TOL;
    let mut out = Classification {
        verdict: Verdict::NoPositiveSupersolutions,
        justification: Justification::SupercriticalPotential,
        domain: Domain::Interior,
        n: rp.n,
        p,
        s,
        mu: rp.mu,
        lambda1,
        threshold,
        roots: None,
        line: None,
        branch: None,
        barrier: None,
        via_kelvin: true,
    };
    let dual = classify_exterior(&kelvin(rp), lambda1)?;
    if critical || gap < 0.0 {
        let roots = if critical { Roots::Double { star: (2.0 - rp.n as f64) / 2.0 } } else { indicial_roots(rp.n, rp.mu, lambda1)? };
        let (line, branch) = critical_line(p, &roots, LineKind::InteriorMax);
        out.roots = Some(roots);
        out.line = Some(line);
        out.branch = Some(branch);
    }
    if is_linear_point(p, s) {
        out.justification = Justification::LinearSpectral;
        out.verdict = dual.verdict;
        out.barrier = dual.barrier;
        return Ok(out);
    }
    if !critical && gap > 0.0 {
        return Ok(out);
    }
    let line = out.line.unwrap();
    let at_line = on_line(s, line);
    let above = s > line && !at_line;
    if !critical {
        out.justification = Justification::SubcriticalLine;
        if above || at_line {
            return Ok(out);
        }
    } else {
        out.justification = Justification::CriticalLine;
        if above || (at_line && p >= -1.0) {
            return Ok(out);
        }
        if at_line && !rp.cone.is_full_sphere() {
            out.verdict = Verdict::OpenProblem;
            return Ok(out);
        }
    }
    out.verdict = Verdict::Exists;
    out.justification = Justification::BarrierExists;
    out.barrier = dual.barrier;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::ConeSpec;

    fn rp(n: u32, mu: f64, s: f64, p: f64, cone: ConeSpec) -> ReducedParams {
        ReducedParams::new(n, mu, s, 1.0, p, cone)
    }

    #[test]
    fn roots_full_sphere_n3() {
        assert_eq!(indicial_roots(3, 0.0, 0.0).unwrap(), Roots::Distinct { minus: -1.0, plus: 0.0 });
        assert_eq!(indicial_roots(3, 0.25, 0.0).unwrap(), Roots::Double { star: -0.5 });
        assert_eq!(indicial_roots(3, 0.3, 0.0), Err(Error::NoRealRoots));
    }

    #[test]
    fn roots_cancellation_safe() {
        // tiny λ1 - μ: the small root must keep full relative precision
        let r = indicial_roots(12, 0.0, 1e-14).unwrap();
        let want = 1e-14 / 10.0;
        assert!((r.plus() - want).abs() < 1e-28);
    }

    #[test]
    fn critical_line_branches() {
        let roots = Roots::Distinct { minus: -1.0, plus: 0.0 };
        assert_eq!(critical_line(3.0, &roots, LineKind::ExteriorMin), (0.0, Branch::Minus));
        assert_eq!(critical_line(0.0, &roots, LineKind::ExteriorMin), (2.0, Branch::Plus));
        assert_eq!(critical_line(1.0, &roots, LineKind::ExteriorMin), (2.0, Branch::Both));
        assert_eq!(critical_line(3.0, &roots, LineKind::InteriorMax), (2.0, Branch::Plus));
    }

    #[test]
    fn serrin_exponent_full_sphere() {
        let below = classify_with_lambda1(&rp(3, 0.0, 0.0, 3.0, ConeSpec::FullSphere), 0.0).unwrap();
        assert_eq!(below.verdict, Verdict::NoPositiveSupersolutions);
        assert_eq!(below.line, Some(0.0));
        let above = classify_with_lambda1(&rp(3, 0.0, 0.0, 3.5, ConeSpec::FullSphere), 0.0).unwrap();
        assert_eq!(above.verdict, Verdict::Exists);
        assert_eq!(above.barrier, Some(BarrierKind::SeparatedPower { alpha: -0.9 }));
    }

    #[test]
    fn separated_power_exponent_choice() {
        let c = classify_with_lambda1(&rp(3, 0.0, 1.0, 3.0, ConeSpec::FullSphere), 0.0).unwrap();
        assert_eq!(c.verdict, Verdict::Exists);
        assert_eq!(c.barrier, Some(BarrierKind::SeparatedPower { alpha: -0.75 }));
    }

    #[test]
    fn supercritical_potential() {
        let c = classify_with_lambda1(&rp(3, 0.26, 5.0, 2.0, ConeSpec::FullSphere), 0.0).unwrap();
        assert_eq!(c.verdict, Verdict::NoPositiveSupersolutions);
        assert_eq!(c.justification, Justification::SupercriticalPotential);
    }

    #[test]
    fn linear_point() {
        let mut r = rp(3, 0.2, 2.0, 1.0, ConeSpec::FullSphere);
        r.c = 0.04;
        assert_eq!(classify_with_lambda1(&r, 0.0).unwrap().verdict, Verdict::Exists);
        r.c = 0.06;
        assert_eq!(classify_with_lambda1(&r, 0.0).unwrap().verdict, Verdict::NoPositiveSupersolutions);
    }

    #[test]
    fn critical_cases() {
        let star = -0.5;
        let cap = ConeSpec::Cap { theta0: 1.0 };
        let l1 = 3.0;
        let mu = 0.25 + l1;
        let line = |p: f64| star * (p - 1.0) + 2.0;
        let v = |p: f64, s: f64, cone| classify_with_lambda1(&rp(3, mu, s, p, cone), l1).unwrap();
        assert_eq!(v(-2.0, line(-2.0), cap).verdict, Verdict::OpenProblem);
        assert_eq!(v(-1.0, line(-1.0), cap).verdict, Verdict::NoPositiveSupersolutions);
        assert_eq!(v(0.0, line(0.0), cap).verdict, Verdict::NoPositiveSupersolutions);
        assert_eq!(v(0.0, line(0.0) + 0.1, cap).barrier.unwrap().name(), "CriticalSublinear");
        assert_eq!(v(2.0, line(2.0) + 0.1, cap).barrier.unwrap().name(), "PowerLog");
        assert_eq!(v(2.0, line(2.0) - 0.1, cap).verdict, Verdict::NoPositiveSupersolutions);
    }

    #[test]
    fn full_sphere_log_barrier() {
        let c = classify_with_lambda1(&rp(3, 0.25, -0.5 * -3.0 + 2.0, -2.0, ConeSpec::FullSphere), 0.0).unwrap();
        assert_eq!(c.verdict, Verdict::Exists);
        assert_eq!(c.barrier, Some(BarrierKind::FullSphereLog { beta: (2.0 / 3.0 + 1.0) / 2.0 }));
    }

    #[test]
    fn sublinear_selection() {
        let c = classify_with_lambda1(&rp(3, 0.0, 3.0, 0.5, ConeSpec::FullSphere), 0.0).unwrap();
        assert_eq!(c.barrier.unwrap().name(), "SublinearInhom");
        let c = classify_with_lambda1(&rp(3, 0.0, 4.0, -1.0, ConeSpec::FullSphere), 0.0).unwrap();
        assert_eq!(c.barrier.unwrap().name(), "SublinearNeg");
    }

    #[test]
    fn interior_matches_kelvin_dual() {
        let ext = rp(4, 0.5, 1.0, 2.5, ConeSpec::FullSphere);
        let int = kelvin(&ext);
        let a = classify_with_lambda1(&ext, 0.0).unwrap();
        let b = classify_with_lambda1(&int, 0.0).unwrap();
        assert_eq!(a.verdict, b.verdict);
    }
}
