//! Command-line front end.  Every long flag doubles as a `key = value` config entry; flags
//! override the file.

use std::f64::consts::{E, PI};
use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::asymptotics::{
    build_comparison, bump, middle_half, normalized_upper_max, oracle_deviation, two_sided_bound_check, ComparisonKind, EtaProfile,
};
use crate::barriers::{construct_barrier_on, verify_residual, ResidualGrid};
use crate::classifier::{classify, BarrierKind, Classification, Roots, Verdict};
use crate::error::{Error, Result};
use crate::hardy::{sharpness_sweep, AngularConstants, SweepCase};
use crate::params::{ConeSpec, ProblemParams};
use crate::region::{boundary, region_grid, render_svg, write_csv, FigurePreset, Range, SvgStyle};
use crate::spectral::{eigen_arc, eigen_cap, eigen_full_sphere, principal};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_WRITE: i32 = 3;
pub const EXIT_NONEXISTENCE: i32 = 10;
pub const EXIT_PROPERTY_FAILED: i32 = 10;
pub const EXIT_OPEN: i32 = 20;

/// Exit code for a classification verdict.
pub fn verdict_exit_code(v: Verdict) -> i32 {
    match v {
        Verdict::Exists => EXIT_OK,
        Verdict::NoPositiveSupersolutions => EXIT_NONEXISTENCE,
        Verdict::OpenProblem => EXIT_OPEN,
    }
}

#[derive(Debug, Parser)]
#[command(name = "conecrit", version, about = "Critical exponents of semilinear problems in cone-like domains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Verdict, justification and critical line at one (p, σ).
    Classify(Settings),
    /// Classification grid as CSV and the nonexistence set as SVG.
    Region(Settings),
    /// Dirichlet eigenvalues of the cross-section.
    Eigen(Settings),
    /// Builds the barrier for an existence point and checks its residual.
    VerifyBarrier(Settings),
    /// Quadratic form on the cutoff family near the Hardy threshold.
    HardySweep(Settings),
    /// Annular envelopes of comparison functions and the correction-profile oracle.
    AsymptoticsCheck(Settings),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CliCone {
    Full,
    Arc,
    Cap,
    Tabulated,
}

/// All run settings.  Field names mirror the long flags and the config keys.
#[derive(Debug, Clone, Default, Args)]
pub struct Settings {
    /// Config file of `key = value` lines; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long = "N")]
    pub n: Option<u32>,
    #[arg(long = "A", allow_hyphen_values = true)]
    pub a: Option<f64>,
    #[arg(long = "B", allow_hyphen_values = true)]
    pub b: Option<f64>,
    #[arg(long = "C", allow_hyphen_values = true)]
    pub c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub sigma: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub p: Option<f64>,
    #[arg(long, value_enum)]
    pub cone: Option<CliCone>,
    /// Arc opening or cap half-angle.
    #[arg(long)]
    pub theta0: Option<f64>,
    /// Principal eigenvalue of a tabulated cone.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda1: Option<f64>,
    /// Shorthand for `--cone arc --theta0 X`.
    #[arg(long)]
    pub arc: Option<f64>,
    /// Shorthand for `--cone cap --theta0 X`.
    #[arg(long)]
    pub cap: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    /// Put B exactly on the threshold `C_H + λ1`.
    #[arg(long)]
    pub critical: bool,
    #[arg(long = "p-min", allow_hyphen_values = true)]
    pub p_min: Option<f64>,
    #[arg(long = "p-max", allow_hyphen_values = true)]
    pub p_max: Option<f64>,
    #[arg(long = "sigma-min", allow_hyphen_values = true)]
    pub sigma_min: Option<f64>,
    #[arg(long = "sigma-max", allow_hyphen_values = true)]
    pub sigma_max: Option<f64>,
    #[arg(long = "p-steps")]
    pub p_steps: Option<usize>,
    #[arg(long = "sigma-steps")]
    pub sigma_steps: Option<usize>,
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// One of the six reference pictures, `a` to `f`.
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub fill: Option<String>,
    #[arg(long)]
    pub stroke: Option<String>,
    /// Number of eigenvalues to report.
    #[arg(long)]
    pub modes: Option<usize>,
    /// Overrides the barrier's power exponent.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Overrides the barrier's logarithmic exponent.
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long = "radial-nodes")]
    pub radial_nodes: Option<usize>,
    #[arg(long = "angular-nodes")]
    pub angular_nodes: Option<usize>,
    #[arg(long)]
    pub span: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub eps: Option<f64>,
    #[arg(long = "mu-excess", allow_hyphen_values = true)]
    pub mu_excess: Option<f64>,
    /// Comma-separated outer radii.
    #[arg(long)]
    pub radii: Option<String>,
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| Error::Config(format!("bad value {v:?} for {key}")))
}

impl Settings {
    /// Applies one config entry.
    pub fn set(&mut self, key: &str, v: &str) -> Result<()> {
        macro_rules! num {
            ($field:ident) => {
                self.$field = Some(parse_value(key, v)?)
            };
        }
        match key {
            "N" => num!(n),
            "A" => num!(a),
            "B" => num!(b),
            "C" => num!(c),
            "sigma" => num!(sigma),
            "p" => num!(p),
            "cone" => self.cone = Some(CliCone::from_str(v, false).map_err(|_| Error::Config(format!("bad cone {v:?}")))?),
            "theta0" => num!(theta0),
            "lambda1" => num!(lambda1),
            "arc" => num!(arc),
            "cap" => num!(cap),
            "rho" => num!(rho),
            "critical" => self.critical = parse_value(key, v)?,
            "p-min" => num!(p_min),
            "p-max" => num!(p_max),
            "sigma-min" => num!(sigma_min),
            "sigma-max" => num!(sigma_max),
            "p-steps" => num!(p_steps),
            "sigma-steps" => num!(sigma_steps),
            "csv" => self.csv = Some(v.into()),
            "svg" => self.svg = Some(v.into()),
            "preset" => self.preset = Some(v.into()),
            "fill" => self.fill = Some(v.into()),
            "stroke" => self.stroke = Some(v.into()),
            "modes" => num!(modes),
            "alpha" => num!(alpha),
            "beta" => num!(beta),
            "radial-nodes" => num!(radial_nodes),
            "angular-nodes" => num!(angular_nodes),
            "span" => num!(span),
            "eps" => num!(eps),
            "mu-excess" => num!(mu_excess),
            "radii" => self.radii = Some(v.into()),
            _ => return Err(Error::Config(format!("unknown key {key:?}"))),
        }
        Ok(())
    }

    /// Parses a flat `key = value` file with `#` comments.
    pub fn from_config_str(text: &str) -> Result<Self> {
        let mut s = Settings::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            s.set(k.trim(), v.trim())?;
        }
        Ok(s)
    }

    pub fn from_config_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::from_config_str(&text)
    }

    /// `self` (flags) layered over `base` (file).
    pub fn over(self, base: Settings) -> Settings {
        macro_rules! pick {
            ($($f:ident),*) => { Settings { $($f: self.$f.or(base.$f),)* critical: self.critical || base.critical } };
        }
        pick!(
            config, n, a, b, c, sigma, p, cone, theta0, lambda1, arc, cap, rho, p_min, p_max, sigma_min, sigma_max, p_steps, sigma_steps, csv, svg, preset,
            fill, stroke, modes, alpha, beta, radial_nodes, angular_nodes, span, eps, mu_excess, radii
        )
    }

    fn resolved(self) -> Result<Settings> {
        match &self.config {
            Some(path) => {
                let base = Self::from_config_file(path)?;
                Ok(self.over(base))
            }
            None => Ok(self),
        }
    }

    pub fn cone_spec(&self) -> Result<ConeSpec> {
        if let Some(t) = self.arc {
            return Ok(ConeSpec::Arc { theta0: t });
        }
        if let Some(t) = self.cap {
            return Ok(ConeSpec::Cap { theta0: t });
        }
        let need_theta = || self.theta0.ok_or_else(|| Error::InvalidParams("--theta0 is required for this cone".into()));
        Ok(match self.cone.unwrap_or(CliCone::Full) {
            CliCone::Full => ConeSpec::FullSphere,
            CliCone::Arc => ConeSpec::Arc { theta0: need_theta()? },
            CliCone::Cap => ConeSpec::Cap { theta0: need_theta()? },
            CliCone::Tabulated => ConeSpec::Tabulated {
                lambda1: self.lambda1.ok_or_else(|| Error::InvalidParams("--lambda1 is required for a tabulated cone".into()))?,
            },
        })
    }

    /// Problem parameters; `N` defaults to 2 on arcs and 3 otherwise, `A = B = 0`, `C = 1`.
    pub fn problem(&self) -> Result<ProblemParams> {
        let cone = self.cone_spec()?;
        let n = self.n.unwrap_or(if matches!(cone, ConeSpec::Arc { .. }) { 2 } else { 3 });
        let mut pp = ProblemParams::new(n, self.a.unwrap_or(0.0), self.b.unwrap_or(0.0), self.c.unwrap_or(1.0), self.sigma.unwrap_or(0.0), self.p.unwrap_or(1.0), cone);
        if let Some(rho) = self.rho {
            pp.rho = rho;
        }
        pp.validate()?;
        Ok(pp)
    }

    fn residual_grid(&self) -> ResidualGrid {
        let d = ResidualGrid::default();
        ResidualGrid {
            radial_nodes: self.radial_nodes.unwrap_or(d.radial_nodes),
            angular_nodes: self.angular_nodes.unwrap_or(d.angular_nodes),
            span: self.span.unwrap_or(d.span),
        }
    }

    fn radii_list(&self, default: &[f64]) -> Result<Vec<f64>> {
        match &self.radii {
            None => Ok(default.to_vec()),
            Some(s) => s.split(',').map(|t| parse_value::<f64>("radii", t.trim())).collect(),
        }
    }
}

/// Problem parameters with `B` moved to the threshold when requested, and the spectral basis.
fn problem_and_basis(s: &Settings) -> Result<(ProblemParams, crate::spectral::SpectralBasis)> {
    let mut pp = s.problem()?;
    let basis = principal(pp.cone, pp.n)?;
    if s.critical {
        pp = pp.with_critical_b(basis.lambda1());
    }
    Ok((pp, basis))
}

struct Out<'a> {
    out: &'a mut dyn Write,
    color: bool,
}

impl Out<'_> {
    fn line(&mut self, text: &str) {
        let _ = writeln!(self.out, "{text}");
    }

    fn record(&mut self, v: &Value) {
        let _ = writeln!(self.out, "{v}");
    }

    fn paint(&self, text: &str, code: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

/// Parses `args` and runs one command, writing human and JSON lines to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write, color: bool) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_INPUT
                }
            };
        }
    };
    let mut o = Out { out, color };
    let result = match cli.command {
        Command::Classify(s) => s.resolved().and_then(|s| cmd_classify(&s, &mut o)),
        Command::Region(s) => s.resolved().and_then(|s| cmd_region(&s, &mut o)),
        Command::Eigen(s) => s.resolved().and_then(|s| cmd_eigen(&s, &mut o)),
        Command::VerifyBarrier(s) => s.resolved().and_then(|s| cmd_verify_barrier(&s, &mut o)),
        Command::HardySweep(s) => s.resolved().and_then(|s| cmd_hardy_sweep(&s, &mut o)),
        Command::AsymptoticsCheck(s) => s.resolved().and_then(|s| cmd_asymptotics_check(&s, &mut o)),
    };
    match result {
        Ok(code) => code,
        Err(Error::Io(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_WRITE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

/// Entry point for the binary: real arguments, stdout/stderr, `NO_COLOR` honoured.
pub fn main_with_env() -> i32 {
    let stdout = std::io::stdout();
    let color = std::env::var_os("NO_COLOR").is_none() && stdout.is_terminal();
    let mut out = stdout.lock();
    let mut err = std::io::stderr().lock();
    run(std::env::args_os(), &mut out, &mut err, color)
}

fn classification_record(pp: &ProblemParams, cls: &Classification) -> Value {
    let lambda_sigma = cls.line.map(|l| l - pp.a / 2.0 * (pp.p - 1.0));
    json!({
        "command": "classify",
        "params": pp,
        "verdict": cls.verdict.to_string(),
        "justification": cls.justification.to_string(),
        "Lambda": lambda_sigma,
        "branch": cls.branch.map(|b| b.to_string()).unwrap_or_else(|| "none".into()),
        "classification": cls,
    })
}

fn cmd_classify(s: &Settings, o: &mut Out<'_>) -> Result<i32> {
    let (pp, basis) = problem_and_basis(s)?;
    let cls = classify(&pp.reduce()?, &basis)?;
    let code = match cls.verdict {
        Verdict::Exists => "32",
        Verdict::NoPositiveSupersolutions => "31",
        Verdict::OpenProblem => "33",
    };
    let lambda = cls.line.map(|l| format!("{:.12}", l - pp.a / 2.0 * (pp.p - 1.0))).unwrap_or_else(|| "none".into());
    let branch = cls.branch.map(|b| b.to_string()).unwrap_or_else(|| "none".into());
    let verdict = o.paint(&cls.verdict.to_string(), code);
    o.line(&format!("{verdict} ({}) Lambda={lambda} branch={branch}", cls.justification));
    o.record(&classification_record(&pp, &cls));
    Ok(verdict_exit_code(cls.verdict))
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<()> {
    std::fs::write(path, bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn cmd_region(s: &Settings, o: &mut Out<'_>) -> Result<i32> {
    let (pp, lambda1) = match &s.preset {
        Some(name) => (FigurePreset::parse(name)?.params(), 0.0),
        None => {
            let (pp, basis) = problem_and_basis(s)?;
            (pp, basis.lambda1())
        }
    };
    let pr = Range::new(s.p_min.unwrap_or(-4.0), s.p_max.unwrap_or(4.0))?;
    let sr = Range::new(s.sigma_min.unwrap_or(-4.0), s.sigma_max.unwrap_or(8.0))?;
    let (np, ns) = (s.p_steps.unwrap_or(81), s.sigma_steps.unwrap_or(121));
    let grid = region_grid(&pp, lambda1, pr, sr, np, ns)?;
    let bd = boundary(&pp, lambda1, pr)?;
    if let Some(path) = &s.csv {
        let mut buf = Vec::new();
        write_csv(&mut buf, &grid)?;
        write_file(path, &buf)?;
    }
    if let Some(path) = &s.svg {
        let d = SvgStyle::default();
        let style = SvgStyle { fill: s.fill.clone().unwrap_or(d.fill), stroke: s.stroke.clone().unwrap_or(d.stroke) };
        write_file(path, render_svg(&bd, pr, sr, &style).as_bytes())?;
    }
    let nonexist = grid.iter().filter(|g| g.classification.verdict == Verdict::NoPositiveSupersolutions).count();
    o.line(&format!("region: {} points, {nonexist} without positive super-solutions", grid.len()));
    o.record(&json!({
        "command": "region",
        "params": pp,
        "points": grid.len(),
        "nonexistence_points": nonexist,
        "boundary": bd,
        "csv": s.csv,
        "svg": s.svg,
    }));
    Ok(EXIT_OK)
}

fn cmd_eigen(s: &Settings, o: &mut Out<'_>) -> Result<i32> {
    let pp = s.problem()?;
    let k = s.modes.unwrap_or(1).max(1);
    let basis = match pp.cone {
        ConeSpec::FullSphere => eigen_full_sphere(pp.n),
        ConeSpec::Arc { theta0 } => eigen_arc(theta0, k)?,
        ConeSpec::Cap { theta0 } => eigen_cap(pp.n, theta0, k)?,
        ConeSpec::Tabulated { .. } => principal(pp.cone, pp.n)?,
    };
    let lambdas: Vec<f64> = basis.lambdas.iter().take(k).copied().collect();
    o.line(&format!("lambda1 = {:.12}", lambdas[0]));
    o.record(&json!({ "command": "eigen", "n": pp.n, "cone": pp.cone, "lambdas": lambdas }));
    Ok(EXIT_OK)
}

fn override_kind(kind: BarrierKind, alpha: Option<f64>, beta: Option<f64>) -> BarrierKind {
    match kind {
        BarrierKind::SeparatedPower { alpha: a } => BarrierKind::SeparatedPower { alpha: alpha.unwrap_or(a) },
        BarrierKind::SublinearInhom { alpha: a } => BarrierKind::SublinearInhom { alpha: alpha.unwrap_or(a) },
        BarrierKind::SublinearNeg { alpha: a } => BarrierKind::SublinearNeg { alpha: alpha.unwrap_or(a) },
        BarrierKind::PowerLog { beta: b } => BarrierKind::PowerLog { beta: beta.unwrap_or(b) },
        BarrierKind::FullSphereLog { beta: b } => BarrierKind::FullSphereLog { beta: beta.unwrap_or(b) },
        BarrierKind::CriticalSublinear { beta: b, eps, sigma_aux } => BarrierKind::CriticalSublinear { beta: beta.unwrap_or(b), eps, sigma_aux },
    }
}

fn cmd_verify_barrier(s: &Settings, o: &mut Out<'_>) -> Result<i32> {
    let (pp, basis) = problem_and_basis(s)?;
    let rp = pp.reduce()?;
    let cls = classify(&rp, &basis)?;
    let grid = s.residual_grid();
    let spec = construct_barrier_on(&rp, &basis, &cls, grid)?;
    let spec = if s.alpha.is_some() || s.beta.is_some() { spec.with_kind(override_kind(spec.kind, s.alpha, s.beta)) } else { spec };
    let report = verify_residual(&spec, grid)?;
    let status = if report.passed { o.paint("PASS", "32") } else { o.paint("FAIL", "31") };
    o.line(&format!("{status} {} min_residual={:.6e} tau={:.6e} rho'={:.6e}", report.variant, report.min_residual, report.tau, report.rho_prime));
    o.record(&json!({ "command": "verify-barrier", "params": pp, "barrier": spec.kind, "report": report }));
    Ok(if report.passed { EXIT_OK } else { EXIT_PROPERTY_FAILED })
}

fn cmd_hardy_sweep(s: &Settings, o: &mut Out<'_>) -> Result<i32> {
    let pp = s.problem()?;
    let basis = principal(pp.cone, pp.n)?;
    let lambda1 = basis.lambda1();
    let eps = s.eps.unwrap_or(0.25);
    let mu_excess = s.mu_excess.unwrap_or(0.0);
    let rho = s.rho.unwrap_or(E);
    let radii = s.radii_list(&[1e3, 1e4, 1e5, 1e6])?;
    let rep = sharpness_sweep(pp.n, &AngularConstants::eigen(lambda1, 0.0), lambda1, eps, mu_excess, rho, &radii)?;
    let passed = match rep.case {
        SweepCase::Supercritical => rep.first_negative.is_some(),
        SweepCase::LogSharp if eps > 0.25 => rep.max_step_deviation.is_some_and(|d| d <= 0.05),
        SweepCase::LogSharp => rep.min_total >= -1e-8,
    };
    let status = if passed { o.paint("PASS", "32") } else { o.paint("FAIL", "31") };
    o.line(&format!("{status} divergence_rate={:.6} min_total={:.6e}", rep.divergence_rate, rep.min_total));
    o.record(&json!({ "command": "hardy-sweep", "passed": passed, "report": rep }));
    Ok(if passed { EXIT_OK } else { EXIT_PROPERTY_FAILED })
}

/// Relative drift per decade between the first and last value of a sequence of ratios.
fn ratio_trend(rs: &[(f64, f64)]) -> f64 {
    let xs: Vec<f64> = rs.iter().map(|t| t.0.log10()).collect();
    let ys: Vec<f64> = rs.iter().map(|t| t.1.ln()).collect();
    crate::numerics::linear_fit(&xs, &ys).0
}

fn cmd_asymptotics_check(s: &Settings, o: &mut Out<'_>) -> Result<i32> {
    let mut s = s.clone();
    if s.arc.is_none() && s.cone.is_none() {
        s.arc = Some(PI / 2.0);
    }
    let (pp, basis) = problem_and_basis(&s)?;
    let theta0 = match pp.cone {
        ConeSpec::Arc { theta0 } if pp.n == 2 => theta0,
        _ => return Err(Error::InvalidParams("asymptotics-check runs on N=2 arcs".into())),
    };
    let rp = pp.reduce()?;
    let lambda1 = basis.lambda1();
    let roots = crate::asymptotics::mode_roots(2, rp.mu, lambda1)?;
    let (lo, hi) = middle_half(theta0);
    let omegas: Vec<f64> = (0..=32).map(|i| lo + (hi - lo) * i as f64 / 32.0).collect();
    let radii = s.radii_list(&[1e3, 1e4, 1e5, 1e6])?;
    let lower = build_comparison(bump(lo, hi), theta0, rp.mu, ComparisonKind::Lower, 0.0)?;
    let env = two_sided_bound_check(|r, w| lower.eval(r, w), roots, &omegas, &radii, radii[0])?;
    let lower_drift = env.lower_trend.abs();
    let mut upper = Vec::new();
    for &big in &radii {
        let u = build_comparison(bump(lo, hi), theta0, rp.mu, ComparisonKind::Upper, big)?;
        let m = normalized_upper_max(&u, &omegas)?;
        let envelope = match roots {
            Roots::Double { star } => big.powf(star) * big.ln(),
            Roots::Distinct { plus, .. } => big.powf(plus),
        };
        upper.push((big, m / envelope));
    }
    let upper_drift = ratio_trend(&upper).abs();
    let more = eigen_arc(theta0, 3)?;
    let oracle: Vec<f64> = [0usize, 2]
        .iter()
        .map(|&k| {
            let delta = (more.lambdas[k] - more.lambdas[0]).max(0.0).sqrt();
            EtaProfile::new(2, delta, 1.0, s.rho.unwrap_or(E), 1e6).and_then(|p| oracle_deviation(&p, 1024, true))
        })
        .collect::<Result<_>>()?;
    let passed = lower_drift < 0.01 && upper_drift < 0.01 && oracle.iter().all(|d| *d <= 1e-4);
    let status = if passed { o.paint("PASS", "32") } else { o.paint("FAIL", "31") };
    o.line(&format!(
        "{status} lower_drift={lower_drift:.3e} upper_drift={upper_drift:.3e} oracle_eta1={:.3e} oracle_eta3={:.3e} modes={}",
        oracle[0],
        oracle[1],
        lower.modes_used()
    ));
    o.record(&json!({
        "command": "asymptotics-check",
        "theta0": theta0,
        "mu": rp.mu,
        "roots": roots,
        "critical": lower.critical,
        "modes": lower.modes_used(),
        "tail_bound": lower.tail_bound,
        "lower_ratios": env.lower_ratios,
        "lower_drift_per_decade": lower_drift,
        "upper_ratios": upper,
        "upper_drift_per_decade": upper_drift,
        "oracle_relative_error": oracle,
        "passed": passed,
    }));
    Ok(if passed { EXIT_OK } else { EXIT_PROPERTY_FAILED })
}
