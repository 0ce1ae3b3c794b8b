//! Dirichlet eigenpairs of the spherical Laplacian on the angular section of a cone,
//! and the inhomogeneous angular problems used by the sublinear barriers.
//!
//! Every profile carries its own Laplacian, taken from the equation it solves rather
//! than from numerical differentiation.

use serde::Serialize;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::numerics::{bisect, simpson, sturm_count, MonotoneCubic};
use crate::params::ConeSpec;

/// Default number of nodes for sampled profiles and angular quadrature.
pub const DEFAULT_NODES: usize = 4097;

/// Surface measure of the unit sphere `S^{d}` in `R^{d+1}`.
pub fn sphere_area(d: u32) -> f64 {
    match d {
        0 => 2.0,
        1 => 2.0 * PI,
        _ => 2.0 * PI / (d as f64 - 1.0) * sphere_area(d - 2),
    }
}

/// Coordinates on the angular section.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum AngularDomain {
    /// `ω ∈ (0, θ0)` with Dirichlet ends, unit weight.
    Arc { theta0: f64 },
    /// `ω ∈ [0, 2π)` periodic.
    Circle,
    /// Polar angle `θ ∈ [0, θ0)` on `S^{N-1}`, weight `|S^{N-2}| sin^{N-2} θ`.
    Axisymmetric { n: u32, theta0: f64 },
}

impl AngularDomain {
    pub fn for_cone(cone: ConeSpec, n: u32) -> Option<Self> {
        match cone {
            ConeSpec::FullSphere if n == 2 => Some(AngularDomain::Circle),
            ConeSpec::FullSphere => Some(AngularDomain::Axisymmetric { n, theta0: PI }),
            ConeSpec::Arc { theta0 } if cone.is_full_sphere() => {
                let _ = theta0;
                Some(AngularDomain::Circle)
            }
            ConeSpec::Arc { theta0 } => Some(AngularDomain::Arc { theta0 }),
            ConeSpec::Cap { theta0 } => Some(AngularDomain::Axisymmetric { n, theta0 }),
            ConeSpec::Tabulated { .. } => None,
        }
    }

    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            AngularDomain::Arc { theta0 } => (0.0, theta0),
            AngularDomain::Circle => (0.0, 2.0 * PI),
            AngularDomain::Axisymmetric { theta0, .. } => (0.0, theta0),
        }
    }

    pub fn weight(&self, omega: f64) -> f64 {
        match *self {
            AngularDomain::Arc { .. } | AngularDomain::Circle => 1.0,
            AngularDomain::Axisymmetric { n, .. } => sphere_area(n - 2) * omega.sin().powi(n as i32 - 2),
        }
    }

    /// `m` sample points in the open section (the pole is interior for caps).
    pub fn interior_nodes(&self, m: usize) -> Vec<f64> {
        match *self {
            AngularDomain::Arc { theta0 } => (0..m).map(|j| theta0 * (j + 1) as f64 / (m + 1) as f64).collect(),
            AngularDomain::Circle => (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect(),
            AngularDomain::Axisymmetric { theta0, .. } => (0..m).map(|j| theta0 * j as f64 / m as f64).collect(),
        }
    }

    /// `∫ f dω` over the section with the surface weight.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, nodes: usize) -> f64 {
        let (lo, hi) = self.bounds();
        simpson(|w| f(w) * self.weight(w), lo, hi, nodes)
    }
}

/// Piecewise-constant angular potential on an arc.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PiecewiseConstant {
    /// Interior breakpoints, strictly increasing.
    pub breaks: Vec<f64>,
    /// One value per piece, `breaks.len() + 1` entries.
    pub values: Vec<f64>,
}

impl PiecewiseConstant {
    pub fn constant(v: f64) -> Self {
        Self { breaks: vec![], values: vec![v] }
    }

    pub fn at(&self, omega: f64) -> f64 {
        let i = self.breaks.partition_point(|&b| b <= omega);
        self.values[i]
    }

    fn pieces(&self, theta0: f64) -> Vec<(f64, f64, f64)> {
        let mut edges = vec![0.0];
        edges.extend(self.breaks.iter().copied());
        edges.push(theta0);
        edges.windows(2).zip(&self.values).map(|(w, &v)| (w[0], w[1], v)).collect()
    }
}

/// Exact piecewise solution of `φ'' = -(λ + V)φ` started from `φ(0) = 0, φ'(0) = 1`.
#[derive(Debug, Clone)]
pub struct TransferSolution {
    lambda: f64,
    /// `(start, end, V, φ(start), φ'(start))`
    pieces: Vec<(f64, f64, f64, f64, f64)>,
    scale: f64,
}

fn propagate(kappa: f64, len: f64, phi: f64, dphi: f64) -> (f64, f64) {
    if kappa > 0.0 {
        let k = kappa.sqrt();
        let (s, c) = (k * len).sin_cos();
        (phi * c + dphi * s / k, -phi * k * s + dphi * c)
    } else if kappa < 0.0 {
        let k = (-kappa).sqrt();
        let (s, c) = ((k * len).sinh(), (k * len).cosh());
        (phi * c + dphi * s / k, phi * k * s + dphi * c)
    } else {
        (phi + dphi * len, dphi)
    }
}

impl TransferSolution {
    fn shoot(theta0: f64, lambda: f64, potential: &PiecewiseConstant) -> (Self, usize) {
        let mut pieces = Vec::new();
        let (mut phi, mut dphi) = (0.0, 1.0);
        let mut zeros = 0;
        let mut last_sign = 1.0;
        for (a, b, v) in potential.pieces(theta0) {
            pieces.push((a, b, v, phi, dphi));
            let kappa = lambda + v;
            let osc = if kappa > 0.0 { kappa.sqrt() * (b - a) / PI } else { 0.0 };
            let sub = (16.0 + 16.0 * osc).ceil() as usize;
            for j in 1..=sub {
                let t = (b - a) * j as f64 / sub as f64;
                let (val, _) = propagate(kappa, t, phi, dphi);
                if val != 0.0 && val.signum() != last_sign {
                    // a zero exactly at θ0 is not counted
                    if !(j == sub && b == theta0 && val.abs() < 1e-300) {
                        zeros += 1;
                    }
                    last_sign = val.signum();
                }
            }
            let next = propagate(kappa, b - a, phi, dphi);
            phi = next.0;
            dphi = next.1;
        }
        (Self { lambda, pieces, scale: 1.0 }, zeros)
    }

    fn raw(&self, omega: f64) -> f64 {
        let idx = self.pieces.partition_point(|p| p.0 <= omega).saturating_sub(1);
        let (a, _, v, phi, dphi) = self.pieces[idx];
        propagate(self.lambda + v, omega - a, phi, dphi).0
    }

    pub fn value(&self, omega: f64) -> f64 {
        self.scale * self.raw(omega)
    }
}

/// Rule for the angular Laplacian of a sampled profile: `Δφ = -(a + V)φ - b`.
#[derive(Debug, Clone)]
pub struct LaplacianRule {
    pub a: f64,
    pub b: f64,
    pub potential: Option<PiecewiseConstant>,
}

/// A function on the angular section together with its Laplacian.
#[derive(Debug, Clone)]
pub enum AngularProfile {
    Constant { value: f64 },
    /// `amp * sin(freq*ω + phase)`
    Sine { amp: f64, freq: f64, phase: f64 },
    /// Scaled solution of `-g'' - c g = 1` on `(0, θ0)` with zero ends.
    ArcInhomogeneous { c: f64, theta0: f64, scale: f64 },
    Sampled { interp: MonotoneCubic, rule: LaplacianRule },
    Transfer { solution: TransferSolution, potential: PiecewiseConstant },
    Sum { terms: Vec<(f64, AngularProfile)> },
    /// `base + offset`; the Laplacian is that of `base`.
    Offset { base: Box<AngularProfile>, offset: f64 },
}

fn arc_inhom(c: f64, theta0: f64, omega: f64) -> f64 {
    let m = omega - theta0 / 2.0;
    if c.abs() < 1e-12 {
        omega * (theta0 - omega) / 2.0
    } else if c > 0.0 {
        let k = c.sqrt();
        ((k * m).cos() / (k * theta0 / 2.0).cos() - 1.0) / c
    } else {
        let k = (-c).sqrt();
        ((k * m).cosh() / (k * theta0 / 2.0).cosh() - 1.0) / c
    }
}

impl AngularProfile {
    pub fn value(&self, omega: f64) -> f64 {
        match self {
            AngularProfile::Constant { value } => *value,
            AngularProfile::Sine { amp, freq, phase } => amp * (freq * omega + phase).sin(),
            AngularProfile::ArcInhomogeneous { c, theta0, scale } => scale * arc_inhom(*c, *theta0, omega),
            AngularProfile::Sampled { interp, .. } => interp.eval(omega),
            AngularProfile::Transfer { solution, .. } => solution.value(omega),
            AngularProfile::Sum { terms } => terms.iter().map(|(w, p)| w * p.value(omega)).sum(),
            AngularProfile::Offset { base, offset } => base.value(omega) + offset,
        }
    }

    pub fn laplacian(&self, omega: f64) -> f64 {
        match self {
            AngularProfile::Constant { .. } => 0.0,
            AngularProfile::Sine { amp, freq, phase } => -amp * freq * freq * (freq * omega + phase).sin(),
            AngularProfile::ArcInhomogeneous { c, theta0, scale } => scale * (-c * arc_inhom(*c, *theta0, omega) - 1.0),
            AngularProfile::Sampled { interp, rule } => {
                let v = rule.potential.as_ref().map_or(0.0, |p| p.at(omega));
                -(rule.a + v) * interp.eval(omega) - rule.b
            }
            AngularProfile::Transfer { solution, potential } => -(solution.lambda + potential.at(omega)) * solution.value(omega),
            AngularProfile::Sum { terms } => terms.iter().map(|(w, p)| w * p.laplacian(omega)).sum(),
            AngularProfile::Offset { base, .. } => base.laplacian(omega),
        }
    }

    /// Largest sampled value over `m` interior nodes.
    pub fn max_on(&self, domain: &AngularDomain, m: usize) -> f64 {
        domain.interior_nodes(m).into_iter().map(|w| self.value(w)).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Smallest sampled value over `m` interior nodes.
    pub fn min_on(&self, domain: &AngularDomain, m: usize) -> f64 {
        domain.interior_nodes(m).into_iter().map(|w| self.value(w)).fold(f64::INFINITY, f64::min)
    }
}

/// Eigenvalues and eigenfunctions of the angular problem.
#[derive(Debug, Clone)]
pub struct SpectralBasis {
    pub cone: ConeSpec,
    pub n: u32,
    pub lambdas: Vec<f64>,
    pub profiles: Vec<AngularProfile>,
    pub domain: Option<AngularDomain>,
}

impl SpectralBasis {
    pub fn lambda1(&self) -> f64 {
        self.lambdas[0]
    }

    pub fn phi1(&self) -> Result<&AngularProfile> {
        self.profiles.first().ok_or(Error::ProfileUnavailable)
    }

    pub fn domain(&self) -> Result<AngularDomain> {
        self.domain.ok_or(Error::ProfileUnavailable)
    }

    /// Gram matrix `∫ φ_i φ_j` computed on `nodes` points.
    pub fn gram(&self, nodes: usize) -> Result<Vec<Vec<f64>>> {
        let d = self.domain()?;
        let k = self.profiles.len();
        let mut g = vec![vec![0.0; k]; k];
        for i in 0..k {
            for j in i..k {
                let v = d.integrate(|w| self.profiles[i].value(w) * self.profiles[j].value(w), nodes);
                g[i][j] = v;
                g[j][i] = v;
            }
        }
        Ok(g)
    }
}

/// Principal eigenpair for any supported cone.
pub fn principal(cone: ConeSpec, n: u32) -> Result<SpectralBasis> {
    cone.validate(n)?;
    match cone {
        ConeSpec::FullSphere => Ok(eigen_full_sphere(n)),
        ConeSpec::Arc { theta0 } => eigen_arc(theta0, 1),
        ConeSpec::Cap { theta0 } => eigen_cap(n, theta0, 1),
        ConeSpec::Tabulated { lambda1 } => Ok(SpectralBasis { cone, n, lambdas: vec![lambda1], profiles: vec![], domain: None }),
    }
}

/// `λ1 = 0` with the normalised constant.
pub fn eigen_full_sphere(n: u32) -> SpectralBasis {
    let domain = AngularDomain::for_cone(ConeSpec::FullSphere, n);
    SpectralBasis {
        cone: ConeSpec::FullSphere,
        n,
        lambdas: vec![0.0],
        profiles: vec![AngularProfile::Constant { value: 1.0 / sphere_area(n - 1).sqrt() }],
        domain,
    }
}

/// First `k` Dirichlet eigenpairs on the arc `(0, θ0)`, or Fourier modes on the full circle.
pub fn eigen_arc(theta0: f64, k: usize) -> Result<SpectralBasis> {
    let cone = ConeSpec::Arc { theta0 };
    cone.validate(2)?;
    if k == 0 {
        return Err(Error::InvalidParams("need at least one mode".into()));
    }
    if cone.is_full_sphere() {
        let mut lambdas = vec![0.0];
        let mut profiles = vec![AngularProfile::Constant { value: 1.0 / (2.0 * PI).sqrt() }];
        let amp = 1.0 / PI.sqrt();
        let mut j = 1;
        while lambdas.len() < k {
            let f = j as f64;
            lambdas.push(f * f);
            profiles.push(AngularProfile::Sine { amp, freq: f, phase: 0.0 });
            if lambdas.len() < k {
                lambdas.push(f * f);
                profiles.push(AngularProfile::Sine { amp, freq: f, phase: PI / 2.0 });
            }
            j += 1;
        }
        return Ok(SpectralBasis { cone, n: 2, lambdas, profiles, domain: Some(AngularDomain::Circle) });
    }
    let amp = (2.0 / theta0).sqrt();
    let lambdas = (1..=k).map(|j| (j as f64 * PI / theta0).powi(2)).collect();
    let profiles = (1..=k).map(|j| AngularProfile::Sine { amp, freq: j as f64 * PI / theta0, phase: 0.0 }).collect();
    Ok(SpectralBasis { cone, n: 2, lambdas, profiles, domain: Some(AngularDomain::Arc { theta0 }) })
}

/// Eigenpairs of `-Δφ - Vφ = λφ` on `(0, θ0)` with Dirichlet ends and piecewise-constant `V`.
pub fn eigen_arc_with_potential(theta0: f64, potential: &PiecewiseConstant, k: usize) -> Result<SpectralBasis> {
    let cone = ConeSpec::Arc { theta0 };
    cone.validate(2)?;
    if cone.is_full_sphere() {
        return Err(Error::InvalidParams("potential eigenproblem needs a proper arc".into()));
    }
    if potential.values.len() != potential.breaks.len() + 1 {
        return Err(Error::InvalidParams("potential needs one value per piece".into()));
    }
    let vmax = potential.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let vmin = potential.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let mut lambdas = Vec::with_capacity(k);
    let mut profiles = Vec::with_capacity(k);
    for j in 1..=k {
        // Dirichlet eigenvalues of -φ'' - Vφ lie within [μ_j - vmax, μ_j - vmin].
        let free = (j as f64 * PI / theta0).powi(2);
        let (mut lo, mut hi) = (free - vmax - 1.0, free - vmin + 1.0);
        let zeros = |l: f64| TransferSolution::shoot(theta0, l, potential).1;
        while zeros(lo) >= j {
            lo -= (hi - lo).max(1.0);
        }
        while zeros(hi) < j {
            hi += (hi - lo).max(1.0);
        }
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if zeros(m) >= j {
                hi = m;
            } else {
                lo = m;
            }
            if hi - lo <= 1e-14 * hi.abs().max(1.0) {
                break;
            }
        }
        let lambda = 0.5 * (lo + hi);
        let (mut sol, _) = TransferSolution::shoot(theta0, lambda, potential);
        let mut norm2 = 0.0;
        for &(a, b, _, _, _) in &sol.pieces {
            norm2 += simpson(|w| sol.raw(w).powi(2), a, b, 1025);
        }
        sol.scale = 1.0 / norm2.sqrt();
        // positive near the left end
        if sol.raw(theta0 * 1e-3) < 0.0 {
            sol.scale = -sol.scale;
        }
        lambdas.push(lambda);
        profiles.push(AngularProfile::Transfer { solution: sol, potential: potential.clone() });
    }
    Ok(SpectralBasis { cone, n: 2, lambdas, profiles, domain: Some(AngularDomain::Arc { theta0 }) })
}

fn cot(x: f64) -> f64 {
    x.cos() / x.sin()
}

/// Integrates the regular solution of `φ'' + (N-2)cot θ φ' + λφ = -f` from the pole.
/// Returns samples of `(φ, φ')` on `θ_i = i*h`, `i = 0..=steps`, with `φ(0) = phi0`.
fn shoot_axisymmetric(n: u32, theta0: f64, lambda: f64, forcing: f64, phi0: f64, steps: usize) -> Vec<(f64, f64)> {
    let nf = n as f64;
    let h = theta0 / steps as f64;
    // series φ = φ0 + a θ^2 + b θ^4 about the pole
    let a = -(lambda * phi0 + forcing) / (2.0 * (nf - 1.0));
    let b = a * (2.0 * (nf - 2.0) / 3.0 - lambda) / (4.0 * (nf + 1.0));
    let rhs = |t: f64, y: (f64, f64)| -> (f64, f64) { (y.1, -(nf - 2.0) * cot(t) * y.1 - lambda * y.0 - forcing) };
    let mut out = Vec::with_capacity(steps + 1);
    out.push((phi0, 0.0));
    let mut y = (phi0 + a * h * h + b * h.powi(4), 2.0 * a * h + 4.0 * b * h.powi(3));
    out.push(y);
    for i in 1..steps {
        let t = h * i as f64;
        let k1 = rhs(t, y);
        let k2 = rhs(t + h / 2.0, (y.0 + h / 2.0 * k1.0, y.1 + h / 2.0 * k1.1));
        let k3 = rhs(t + h / 2.0, (y.0 + h / 2.0 * k2.0, y.1 + h / 2.0 * k2.1));
        let k4 = rhs(t + h, (y.0 + h * k3.0, y.1 + h * k3.1));
        y = (
            y.0 + h / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0),
            y.1 + h / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1),
        );
        out.push(y);
    }
    out
}

/// Finite-volume eigenvalue estimates for the cap, used to bracket the shooting.
fn cap_fd_eigenvalue(n: u32, theta0: f64, k: usize, cells: usize) -> f64 {
    let h = theta0 / cells as f64;
    let w = |t: f64| t.sin().powi(n as i32 - 2);
    let mut diag = vec![0.0; cells];
    let mut off = vec![0.0; cells - 1];
    for i in 0..cells {
        let c = (i as f64 + 0.5) * h;
        let wl = w(i as f64 * h);
        let wr = w((i + 1) as f64 * h);
        let wc = w(c);
        let right = if i + 1 == cells { 2.0 * wr } else { wr };
        diag[i] = (wl + right) / (h * h * wc);
        if i + 1 < cells {
            off[i] = -wr / (h * h * (wc * w(c + h)).sqrt());
        }
    }
    let mut lo = 0.0;
    let mut hi = diag.iter().cloned().fold(0.0, f64::max) * 4.0 + 10.0;
    for _ in 0..200 {
        let m = 0.5 * (lo + hi);
        if sturm_count(&diag, &off, m) >= k {
            hi = m;
        } else {
            lo = m;
        }
    }
    0.5 * (lo + hi)
}

/// First `k` axisymmetric Dirichlet eigenpairs on the cap `{θ < θ0} ⊂ S^{N-1}`.
pub fn eigen_cap(n: u32, theta0: f64, k: usize) -> Result<SpectralBasis> {
    let cone = ConeSpec::Cap { theta0 };
    cone.validate(n)?;
    if cone.is_full_sphere() {
        let mut b = eigen_full_sphere(n);
        b.cone = cone;
        return Ok(b);
    }
    let steps = DEFAULT_NODES - 1;
    let domain = AngularDomain::Axisymmetric { n, theta0 };
    let endpoint = |lambda: f64| shoot_axisymmetric(n, theta0, lambda, 0.0, 1.0, steps)[steps].0;
    let mut lambdas = Vec::with_capacity(k);
    let mut profiles = Vec::with_capacity(k);
    for j in 1..=k {
        let est = cap_fd_eigenvalue(n, theta0, j, 2000);
        let mut width = 0.01 * est + 1e-6;
        let mut bracket = None;
        for _ in 0..40 {
            let (lo, hi) = ((est - width).max(0.0), est + width);
            if endpoint(lo).signum() != endpoint(hi).signum() {
                bracket = Some((lo, hi));
                break;
            }
            width *= 1.5;
        }
        let (lo, hi) = bracket.ok_or(Error::NoConvergence { what: "cap eigenvalue bracket", iterations: 40 })?;
        let lambda = bisect(endpoint, lo, hi, 1e-15).ok_or(Error::NoConvergence { what: "cap shooting", iterations: 200 })?;
        let samples = shoot_axisymmetric(n, theta0, lambda, 0.0, 1.0, steps);
        let h = theta0 / steps as f64;
        let xs: Vec<f64> = (0..=steps).map(|i| i as f64 * h).collect();
        let mut ys: Vec<f64> = samples.iter().map(|s| s.0).collect();
        *ys.last_mut().unwrap() = 0.0;
        let weighted: Vec<f64> = xs.iter().zip(&ys).map(|(&t, &y)| y * y * domain.weight(t)).collect();
        let norm = crate::numerics::simpson_samples(&weighted, h).sqrt();
        ys.iter_mut().for_each(|y| *y /= norm);
        lambdas.push(lambda);
        profiles.push(AngularProfile::Sampled {
            interp: MonotoneCubic::new(xs, ys),
            rule: LaplacianRule { a: lambda, b: 0.0, potential: None },
        });
    }
    Ok(SpectralBasis { cone, n, lambdas, profiles, domain: Some(domain) })
}

/// Which inhomogeneous angular problem to solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InhomogeneousVariant {
    /// `-Δφ - cφ = 1`, zero on the boundary.
    Plain,
    /// `-Δφ̄ - c(φ̄ + 1) = 1`, zero on the boundary.
    Shifted,
}

/// Solves the inhomogeneous angular problem for `c < λ1`.
pub fn solve_angular_inhomogeneous(basis: &SpectralBasis, c: f64, variant: InhomogeneousVariant) -> Result<AngularProfile> {
    let lambda1 = basis.lambda1();
    if !(c < lambda1) {
        return Err(Error::Resonant { c, lambda1 });
    }
    let rhs = match variant {
        InhomogeneousVariant::Plain => 1.0,
        InhomogeneousVariant::Shifted => 1.0 + c,
    };
    match basis.domain()? {
        AngularDomain::Circle => Ok(AngularProfile::Constant { value: -rhs / c }),
        AngularDomain::Axisymmetric { theta0, .. } if (theta0 - PI).abs() < 1e-12 => Ok(AngularProfile::Constant { value: -rhs / c }),
        AngularDomain::Arc { theta0 } => Ok(AngularProfile::ArcInhomogeneous { c, theta0, scale: rhs }),
        AngularDomain::Axisymmetric { n, theta0 } => {
            let steps = DEFAULT_NODES - 1;
            let hom = shoot_axisymmetric(n, theta0, c, 0.0, 1.0, steps);
            let part = shoot_axisymmetric(n, theta0, c, rhs, 0.0, steps);
            let kappa = -part[steps].0 / hom[steps].0;
            let h = theta0 / steps as f64;
            let xs: Vec<f64> = (0..=steps).map(|i| i as f64 * h).collect();
            let mut ys: Vec<f64> = part.iter().zip(&hom).map(|(p, q)| p.0 + kappa * q.0).collect();
            *ys.last_mut().unwrap() = 0.0;
            Ok(AngularProfile::Sampled { interp: MonotoneCubic::new(xs, ys), rule: LaplacianRule { a: c, b: rhs, potential: None } })
        }
    }
}
