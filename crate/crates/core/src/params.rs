//! Problem parameters, the reduction to the Hardy-form equation and the Kelvin map.
//!
//! The original equation carries a weight `|x|^A` in the divergence operator.  After
//! the substitution `w = |x|^{A/2} u` it becomes
//! `-Δw - μ|x|^{-2} w = C|x|^{-s} w^p` with
//! `μ = B - (A/2)(A/2 + N - 2)` and `s = σ + (A/2)(p - 1)`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Angular section of the cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ConeSpec {
    /// The whole unit sphere (the cone is `R^N` minus a ball).
    FullSphere,
    /// Planar sector `0 < ω < θ0`, only for `N = 2`.  `θ0 = 2π` is the full circle.
    Arc { theta0: f64 },
    /// Spherical cap of polar half-angle `θ0`, for `N >= 3`.
    Cap { theta0: f64 },
    /// Cone known only through its principal Dirichlet eigenvalue.
    Tabulated { lambda1: f64 },
}

impl ConeSpec {
    pub fn is_full_sphere(&self) -> bool {
        match *self {
            ConeSpec::FullSphere => true,
            ConeSpec::Arc { theta0 } => (theta0 - 2.0 * PI).abs() <= 1e-12,
            ConeSpec::Cap { theta0 } => (theta0 - PI).abs() <= 1e-12,
            ConeSpec::Tabulated { lambda1 } => lambda1 == 0.0,
        }
    }

    pub fn validate(&self, n: u32) -> Result<()> {
        match *self {
            ConeSpec::FullSphere => Ok(()),
            ConeSpec::Arc { theta0 } => {
                if n != 2 {
                    return Err(Error::InvalidParams(format!("arc cone requires N=2, got N={n}")));
                }
                if !(theta0 > 0.0 && theta0 <= 2.0 * PI + 1e-12) {
                    return Err(Error::InvalidParams(format!("arc opening {theta0} outside (0, 2π]")));
                }
                Ok(())
            }
            ConeSpec::Cap { theta0 } => {
                if n < 3 {
                    return Err(Error::InvalidParams(format!("cap cone requires N>=3, got N={n}")));
                }
                if !(theta0 > 0.0 && theta0 <= PI + 1e-12) {
                    return Err(Error::InvalidParams(format!("cap half-angle {theta0} outside (0, π]")));
                }
                Ok(())
            }
            ConeSpec::Tabulated { lambda1 } => {
                if !(lambda1.is_finite() && lambda1 >= 0.0) {
                    return Err(Error::InvalidParams(format!("tabulated lambda1 {lambda1} must be finite and >= 0")));
                }
                Ok(())
            }
        }
    }
}

/// Exterior cone `{|x| > ρ}` or, after the Kelvin map, the punctured interior `{|x| < 1/ρ}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Exterior,
    Interior,
}

/// Parameters of the weighted equation in original variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProblemParams {
    pub n: u32,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub sigma: f64,
    pub p: f64,
    pub cone: ConeSpec,
    pub rho: f64,
}

impl ProblemParams {
    pub fn new(n: u32, a: f64, b: f64, c: f64, sigma: f64, p: f64, cone: ConeSpec) -> Self {
        Self { n, a, b, c, sigma, p, cone, rho: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("N must be >= 2, got {}", self.n)));
        }
        for (name, v) in [("A", self.a), ("B", self.b), ("C", self.c), ("sigma", self.sigma), ("p", self.p), ("rho", self.rho)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} must be finite")));
            }
        }
        if self.c <= 0.0 {
            return Err(Error::InvalidParams(format!("C must be > 0, got {}", self.c)));
        }
        if self.rho <= 0.0 {
            return Err(Error::InvalidParams(format!("rho must be > 0, got {}", self.rho)));
        }
        self.cone.validate(self.n)
    }

    /// Hardy constant of the weighted operator, `(2 - N - A)^2 / 4`.
    pub fn hardy_constant(&self) -> f64 {
        let t = 2.0 - self.n as f64 - self.a;
        t * t / 4.0
    }

    /// Sets `B` so that the reduced potential sits exactly on the threshold `C_H + λ1`.
    pub fn with_critical_b(mut self, lambda1: f64) -> Self {
        self.b = self.hardy_constant() + lambda1;
        self
    }

    pub fn reduce(&self) -> Result<ReducedParams> {
        self.validate()?;
        let half_a = self.a / 2.0;
        Ok(ReducedParams {
            n: self.n,
            mu: self.b - half_a * (half_a + self.n as f64 - 2.0),
            s: self.sigma + half_a * (self.p - 1.0),
            c: self.c,
            p: self.p,
            cone: self.cone,
            rho: self.rho,
            domain: Domain::Exterior,
        })
    }
}

/// Parameters of `-Δw - μ|x|^{-2} w = C|x|^{-s} w^p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReducedParams {
    pub n: u32,
    pub mu: f64,
    pub s: f64,
    pub c: f64,
    pub p: f64,
    pub cone: ConeSpec,
    pub rho: f64,
    pub domain: Domain,
}

impl ReducedParams {
    pub fn new(n: u32, mu: f64, s: f64, c: f64, p: f64, cone: ConeSpec) -> Self {
        Self { n, mu, s, c, p, cone, rho: 1.0, domain: Domain::Exterior }
    }

    /// `(N - 2)^2 / 4`.
    pub fn hardy_constant(&self) -> f64 {
        let t = self.n as f64 - 2.0;
        t * t / 4.0
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::InvalidParams(format!("N must be >= 2, got {}", self.n)));
        }
        if !(self.mu.is_finite() && self.s.is_finite() && self.p.is_finite() && self.rho.is_finite()) {
            return Err(Error::InvalidParams("non-finite parameter".into()));
        }
        if !(self.c > 0.0) {
            return Err(Error::InvalidParams(format!("C must be > 0, got {}", self.c)));
        }
        if !(self.rho > 0.0) {
            return Err(Error::InvalidParams(format!("rho must be > 0, got {}", self.rho)));
        }
        self.cone.validate(self.n)
    }
}

/// Kelvin image: `w(x) -> |y|^{2-N} w(y/|y|^2)` maps the exterior problem to the interior
/// one with `s' = (N + 2) - p(N - 2) - s`.  Applying it twice is the identity.
/// The radius `rho` keeps its meaning: the interior image of `{|x| > ρ}` is `{|y| < 1/ρ}`.
pub fn kelvin(rp: &ReducedParams) -> ReducedParams {
    ReducedParams {
        s: kelvin_exponent(rp.n, rp.p, rp.s),
        domain: match rp.domain {
            Domain::Exterior => Domain::Interior,
            Domain::Interior => Domain::Exterior,
        },
        ..*rp
    }
}

/// `s' = (N + 2) - p(N - 2) - s`.
pub fn kelvin_exponent(n: u32, p: f64, s: f64) -> f64 {
    let n = n as f64;
    (n + 2.0) - p * (n - 2.0) - s
}

/// Exponent `(2 - s)/(p - 1)` of the scale-invariant profile `r^{(2-s)/(p-1)}`.
pub fn scale_solution(p: f64, s: f64) -> Result<f64> {
    if (p - 1.0).abs() <= 1e-12 {
        return Err(Error::ScalingUndefined);
    }
    Ok((2.0 - s) / (p - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_with_zero_weight_is_identity() {
        let pp = ProblemParams::new(3, 0.0, 0.1, 1.0, 0.5, 2.0, ConeSpec::FullSphere);
        let rp = pp.reduce().unwrap();
        assert_eq!(rp.mu, 0.1);
        assert_eq!(rp.s, 0.5);
    }

    #[test]
    fn reduction_shifts() {
        // A = 2, N = 3: μ = B - 1*(1 + 1) = B - 2; s = σ + (p - 1)
        let pp = ProblemParams::new(3, 2.0, 1.0, 1.0, 0.5, 3.0, ConeSpec::FullSphere);
        let rp = pp.reduce().unwrap();
        assert!((rp.mu + 1.0).abs() < 1e-15);
        assert!((rp.s - 2.5).abs() < 1e-15);
    }

    #[test]
    fn critical_b_hits_threshold() {
        for (n, a, l1) in [(3u32, 0.0, 0.0), (2, -2.0, 4.0), (5, 1.3, 2.7)] {
            let pp = ProblemParams::new(n, a, 0.0, 1.0, 0.0, 2.0, ConeSpec::FullSphere).with_critical_b(l1);
            let rp = pp.reduce().unwrap();
            assert!((rp.mu - (rp.hardy_constant() + l1)).abs() < 1e-12);
        }
    }

    #[test]
    fn kelvin_is_involution() {
        let rp = ReducedParams::new(4, 0.3, 1.7, 1.0, 2.5, ConeSpec::FullSphere);
        let back = kelvin(&kelvin(&rp));
        assert!((back.s - rp.s).abs() < 1e-14);
        assert_eq!(back.domain, Domain::Exterior);
    }

    #[test]
    fn kelvin_fixes_linear_point() {
        for n in 2..7 {
            assert!((kelvin_exponent(n, 1.0, 2.0) - 2.0).abs() < 1e-15);
        }
    }

    #[test]
    fn scaling_exponent() {
        assert_eq!(scale_solution(3.0, 0.0).unwrap(), 1.0);
        assert_eq!(scale_solution(1.0, 0.0), Err(Error::ScalingUndefined));
    }

    #[test]
    fn validation_rejects_bad_input() {
        assert!(ProblemParams::new(1, 0.0, 0.0, 1.0, 0.0, 2.0, ConeSpec::FullSphere).validate().is_err());
        assert!(ProblemParams::new(3, 0.0, 0.0, 0.0, 0.0, 2.0, ConeSpec::FullSphere).validate().is_err());
        assert!(ProblemParams::new(3, 0.0, 0.0, 1.0, 0.0, 2.0, ConeSpec::Arc { theta0: 1.0 }).validate().is_err());
        assert!(ProblemParams::new(2, 0.0, 0.0, 1.0, 0.0, 2.0, ConeSpec::Cap { theta0: 1.0 }).validate().is_err());
        assert!(ProblemParams::new(2, 0.0, 0.0, 1.0, 0.0, 2.0, ConeSpec::Arc { theta0: 7.0 }).validate().is_err());
    }
}
