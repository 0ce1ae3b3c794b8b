//! End-to-end acceptance suite.  Prints one PASS/FAIL line per criterion and exits non-zero
//! if any criterion fails.

use std::f64::consts::{E, PI};
use std::time::{Duration, Instant};

use conecrit::asymptotics::{
    build_comparison, bump, interpolate_log, loglog_slope, middle_half, mode_roots, normalized_upper_max, oracle_deviation, radial_bvp_richardson,
    two_sided_bound_check, BvpData, ComparisonKind, EtaProfile,
};
use conecrit::barriers::{construct_barrier, verify_residual, ResidualGrid};
use conecrit::classifier::{classify, classify_with_lambda1, critical_line, indicial_roots, original_roots, BarrierKind, LineKind, Verdict};
use conecrit::hardy::{barta_check, ground_state_identity, sharpness_sweep, AngularConstants, GroundState};
use conecrit::params::{kelvin, ConeSpec, ProblemParams};
use conecrit::region::{boundary, render_svg, FigurePreset, Range, SvgStyle};
use conecrit::spectral::{eigen_arc, eigen_arc_with_potential, eigen_cap, principal, AngularDomain, PiecewiseConstant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: String) -> Outcome {
    Outcome { ok, detail }
}

fn main() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 10] = [
        (1, "exterior critical exponent", 1, exterior_critical_exponent),
        (2, "linear threshold", 1, linear_threshold),
        (3, "reduction and Kelvin consistency", 5, reduction_and_kelvin),
        (4, "spectral accuracy", 5, spectral_accuracy),
        (5, "barrier residuals", 30, barrier_residuals),
        (6, "Hardy sharpness", 10, hardy_sharpness),
        (7, "asymptotic envelopes", 10, asymptotic_envelopes),
        (8, "radial oracle equivalence", 5, oracle_equivalence),
        (9, "ground-state and Barta identities", 5, ground_state_and_barta),
        (10, "phase-diagram topology", 2, figure_topology),
    ];
    let mut failures = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let pass = out.ok && in_time;
        if !pass {
            failures += 1;
        }
        let timing = if in_time { String::new() } else { " over runtime budget".to_string() };
        println!(
            "{} criterion {id:>2} {name}: {}{timing} [{:.3}s of {budget}s]",
            if pass { "PASS" } else { "FAIL" },
            out.detail,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failures} failed", 10 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}

fn exterior_critical_exponent() -> Outcome {
    let mut bad = Vec::new();
    for k in 0..=30 {
        let p = (10 + k) as f64 / 10.0;
        let pp = ProblemParams::new(3, 0.0, 0.0, 1.0, 0.0, p, ConeSpec::FullSphere);
        let v = classify_with_lambda1(&pp.reduce().unwrap(), 0.0).unwrap().verdict;
        let want = if p <= 3.0 { Verdict::NoPositiveSupersolutions } else { Verdict::Exists };
        if v != want {
            bad.push(p);
        }
    }
    outcome(bad.is_empty(), format!("31 exponents, mismatches at {bad:?}"))
}

fn linear_threshold() -> Outcome {
    let c = 0.1;
    let mut flips = Vec::new();
    let mut bad = 0;
    let mut prev = None;
    for i in 0..=1000 {
        let b = -0.5 + i as f64 * 1e-3;
        let pp = ProblemParams::new(3, 0.0, b, c, 2.0, 1.0, ConeSpec::FullSphere);
        let v = classify_with_lambda1(&pp.reduce().unwrap(), 0.0).unwrap().verdict;
        let want = if b + c - 0.25 > 1e-12 { Verdict::NoPositiveSupersolutions } else { Verdict::Exists };
        if v != want {
            bad += 1;
        }
        if prev.is_some_and(|p| p != v) {
            flips.push(b + c);
        }
        prev = Some(v);
    }
    let ok = bad == 0 && flips.len() == 1 && flips[0] > 0.25 && flips[0] - 0.25 < 1e-3 + 1e-12;
    outcome(ok, format!("{bad} mismatches, flips at B+C = {flips:?}"))
}

fn reduction_and_kelvin() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b65_6c76);
    let (mut root_err, mut kelvin_err, mut compared, mut mismatches) = (0.0f64, 0.0f64, 0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(2..=5u32);
        let (a, b, sigma) = (rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0), rng.gen_range(-5.0..5.0));
        let mut p: f64 = rng.gen_range(-4.0..4.0);
        while (p - 1.0).abs() <= 1e-6 {
            p = rng.gen_range(-4.0..4.0);
        }
        let pp = ProblemParams::new(n, a, b, 1.0, sigma, p, ConeSpec::FullSphere);
        let rp = pp.reduce().unwrap();
        let ext_roots = indicial_roots(n, rp.mu, 0.0).ok();
        if let (Ok(g), Some(al)) = (original_roots(&pp, 0.0), ext_roots) {
            root_err = root_err.max((g.minus() + a / 2.0 - al.minus()).abs()).max((g.plus() + a / 2.0 - al.plus()).abs());
        }
        let dual = kelvin(&rp);
        kelvin_err = kelvin_err.max((kelvin(&dual).s - rp.s).abs());
        if let Some(roots) = ext_roots {
            let ext = critical_line(p, &roots, LineKind::ExteriorMin).0;
            let int = critical_line(p, &roots, LineKind::InteriorMax).0;
            if (rp.s - ext).abs() <= 1e-6 || (dual.s - int).abs() <= 1e-6 {
                continue;
            }
        }
        compared += 1;
        let e = classify_with_lambda1(&rp, 0.0).unwrap().verdict;
        let i = classify_with_lambda1(&dual, 0.0).unwrap().verdict;
        if e != i {
            mismatches += 1;
        }
    }
    let ok = root_err <= 1e-12 && kelvin_err <= 1e-12 && mismatches == 0;
    outcome(ok, format!("root shift err {root_err:.1e}, Kelvin err {kelvin_err:.1e}, {mismatches}/{compared} dual mismatches"))
}

fn spectral_accuracy() -> Outcome {
    let arc = eigen_arc(PI / 2.0, 1).unwrap().lambda1();
    let h3 = eigen_cap(3, PI / 2.0, 1).unwrap().lambda1();
    let h4 = eigen_cap(4, PI / 2.0, 1).unwrap().lambda1();
    let ok = (arc - 4.0).abs() <= 1e-8 && (h3 - 2.0).abs() <= 1e-4 && (h4 - 3.0).abs() <= 1e-4;
    outcome(ok, format!("arc {:.2e}, N=3 cap {:.2e}, N=4 cap {:.2e} errors", (arc - 4.0).abs(), (h3 - 2.0).abs(), (h4 - 3.0).abs()))
}

struct BarrierCase {
    pp: ProblemParams,
    critical: bool,
    variant: &'static str,
}

fn case(n: u32, b: f64, c: f64, sigma: f64, p: f64, cone: ConeSpec, critical: bool, variant: &'static str) -> BarrierCase {
    BarrierCase { pp: ProblemParams::new(n, 0.0, b, c, sigma, p, cone), critical, variant }
}

fn barrier_residuals() -> Outcome {
    let full = ConeSpec::FullSphere;
    let quarter = ConeSpec::Arc { theta0: PI / 2.0 };
    let cap = ConeSpec::Cap { theta0: 1.0 };
    let cases = [
        case(3, 0.0, 1.0, 0.0, 3.5, full, false, "SeparatedPower"),
        case(3, 0.0, 1.0, 1.5, 2.0, full, false, "SeparatedPower"),
        case(3, 0.0, 1.0, 3.0, 1.0, full, false, "SeparatedPower"),
        case(3, 0.0, 0.1, 2.0, 1.0, full, false, "SeparatedPower"),
        case(2, 0.0, 1.0, 1.0, 2.0, quarter, false, "SeparatedPower"),
        case(3, 0.0, 1.0, 3.0, 0.5, full, false, "SublinearInhom"),
        case(2, 0.0, 1.0, 2.0, 0.5, quarter, false, "SublinearInhom"),
        case(4, 0.0, 1.0, 2.5, 0.0, full, false, "SublinearInhom"),
        case(3, 0.0, 1.0, 5.0, -2.0, full, false, "SublinearNeg"),
        case(2, 0.0, 1.0, 0.0, -1.0, quarter, false, "SublinearNeg"),
        case(3, 0.0, 1.0, 4.0, -0.5, cap, false, "SublinearNeg"),
        case(3, 0.0, 1.0, 3.0, 2.0, full, true, "PowerLog"),
        case(3, 0.0, 1.0, 3.0, 1.0, full, true, "PowerLog"),
        case(2, 0.0, 1.0, 2.5, 3.0, quarter, true, "PowerLog"),
        case(3, 0.0, 1.0, 3.0, 0.5, full, true, "CriticalSublinear"),
        case(3, 0.0, 1.0, 4.0, -2.0, full, true, "CriticalSublinear"),
        case(2, 0.0, 1.0, 2.5, 0.0, quarter, true, "CriticalSublinear"),
        case(3, 0.0, 1.0, 3.5, -2.0, full, true, "FullSphereLog"),
        case(4, 0.0, 1.0, 6.0, -3.0, full, true, "FullSphereLog"),
        case(2, 0.0, 1.0, 2.0, -2.0, full, true, "FullSphereLog"),
    ];
    let grid = ResidualGrid::default();
    let mut worst = f64::INFINITY;
    let mut problems = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (i, c) in cases.iter().enumerate() {
        let basis = principal(c.pp.cone, c.pp.n).unwrap();
        let pp = if c.critical { c.pp.clone().with_critical_b(basis.lambda1()) } else { c.pp.clone() };
        let rp = pp.reduce().unwrap();
        let cls = classify(&rp, &basis).unwrap();
        let spec = match construct_barrier(&rp, &basis, &cls) {
            Ok(s) => s,
            Err(e) => {
                problems.push(format!("#{i}: {e}"));
                continue;
            }
        };
        let rep = verify_residual(&spec, grid).unwrap();
        seen.insert(rep.variant);
        worst = worst.min(rep.min_residual);
        if rep.variant != c.variant || !rep.passed || rep.min_residual < -1e-8 {
            problems.push(format!("#{i}: {} min {:.2e}", rep.variant, rep.min_residual));
        }
    }
    // negative controls: exponents outside their admissible windows
    let controls = [
        (case(3, 0.0, 1.0, 0.0, 3.5, full, false, ""), BarrierKind::SeparatedPower { alpha: 0.1 }),
        (case(3, 0.0, 1.0, 0.0, 3.5, full, false, ""), BarrierKind::SeparatedPower { alpha: -1.5 }),
        (case(3, 0.0, 1.0, 3.5, -2.0, full, true, ""), BarrierKind::FullSphereLog { beta: 1.2 }),
        (case(3, 0.0, 1.0, 3.5, -2.0, full, true, ""), BarrierKind::FullSphereLog { beta: 0.3 }),
    ];
    let mut control_mins = Vec::new();
    for (c, kind) in controls {
        let basis = principal(c.pp.cone, c.pp.n).unwrap();
        let pp = if c.critical { c.pp.clone().with_critical_b(basis.lambda1()) } else { c.pp.clone() };
        let rp = pp.reduce().unwrap();
        let cls = classify(&rp, &basis).unwrap();
        let spec = construct_barrier(&rp, &basis, &cls).unwrap().with_kind(kind);
        control_mins.push(verify_residual(&spec, grid).unwrap().min_residual);
    }
    let controls_ok = control_mins.iter().all(|m| *m < -1e-8);
    let ok = problems.is_empty() && seen.len() == 6 && controls_ok;
    outcome(
        ok,
        format!(
            "20 samples over {} variants, worst min residual {worst:.2e}, controls {:?}{}",
            seen.len(),
            control_mins.iter().map(|m| format!("{m:.1e}")).collect::<Vec<_>>(),
            if problems.is_empty() { String::new() } else { format!(", problems {problems:?}") }
        ),
    )
}

fn hardy_sharpness() -> Outcome {
    let ang = AngularConstants::eigen(0.0, 0.0);
    let sharp = sharpness_sweep(3, &ang, 0.0, 0.35, 0.0, E, &[1e3, 1e4, 1e5, 1e6]).unwrap();
    let step = sharp.max_step_deviation.unwrap_or(f64::INFINITY);
    let rate_ok = (sharp.divergence_rate / 0.10 - 1.0).abs() <= 0.05;
    let radii: Vec<f64> = (3..=8).map(|k| 10f64.powi(k)).collect();
    let border = sharpness_sweep(3, &ang, 0.0, 0.25, 0.0, E, &radii).unwrap();
    let far: Vec<f64> = (3..=16).map(|k| 10f64.powi(k)).collect();
    let sup = sharpness_sweep(3, &ang, 0.0, 0.0, 0.1, E, &far).unwrap();
    let r_star = sup.first_negative;
    let stays_negative = r_star.is_some_and(|rs| sup.totals.iter().filter(|t| t.0 >= rs).all(|t| t.1 < 0.0));
    let ok = step <= 0.05 && rate_ok && border.min_total >= -1e-8 && stays_negative;
    outcome(
        ok,
        format!(
            "rate {:.4} (max step dev {:.2}%), eps=1/4 min total {:.2e}, R* = {:?}",
            sharp.divergence_rate,
            100.0 * step,
            border.min_total,
            r_star
        ),
    )
}

fn asymptotic_envelopes() -> Outcome {
    let theta0 = PI / 2.0;
    let (lo, hi) = middle_half(theta0);
    let omegas: Vec<f64> = (0..=32).map(|i| lo + (hi - lo) * i as f64 / 32.0).collect();
    let radii = [1e3, 1e4, 1e5, 1e6];
    let lambda1 = 4.0;
    // subcritical: μ = 0
    let roots = mode_roots(2, 0.0, lambda1).unwrap();
    let lower = build_comparison(bump(lo, hi), theta0, 0.0, ComparisonKind::Lower, 0.0).unwrap();
    let env = two_sided_bound_check(|r, w| lower.eval(r, w), roots, &omegas, &radii, 1e3).unwrap();
    let ratios: Vec<f64> = env.lower_ratios.iter().map(|t| t.1).collect();
    let c1 = ratios.iter().cloned().fold(f64::INFINITY, f64::min);
    let c2 = ratios.iter().cloned().fold(0.0, f64::max);
    let sub_drift = conecrit::asymptotics::drift_per_decade(&env.lower_ratios, 1e3);
    // critical: μ = λ1
    let star = mode_roots(2, lambda1, lambda1).unwrap();
    let mut crit = Vec::new();
    for &big in &radii {
        let upper = build_comparison(bump(lo, hi), theta0, lambda1, ComparisonKind::Upper, big).unwrap();
        let m = normalized_upper_max(&upper, &omegas).unwrap();
        crit.push((big, m / (big.powf(star.minus()) * big.ln())));
    }
    let crit_drift = conecrit::asymptotics::drift_per_decade(&crit, 1e3);
    let ok = c1 > 0.0 && c2.is_finite() && sub_drift < 0.01 && crit_drift < 0.01 && !env.violation;
    outcome(ok, format!("m R^-a1 in [{c1:.4}, {c2:.4}] drift {sub_drift:.1e}/decade, critical M/(R^a* log R) drift {crit_drift:.1e}/decade"))
}

fn oracle_equivalence() -> Outcome {
    let basis = eigen_arc(PI / 2.0, 3).unwrap();
    let delta3 = (basis.lambdas[2] - basis.lambdas[0]).sqrt();
    let eta1 = EtaProfile::new(2, 0.0, 1.0, E, 1e6).unwrap();
    let eta3 = EtaProfile::new(2, delta3, 1.0, E, 1e6).unwrap();
    let d1 = oracle_deviation(&eta1, 1024, true).unwrap();
    let d3 = oracle_deviation(&eta3, 1024, true).unwrap();
    let r0 = 10.0;
    let radii = [1e3, 1e4, 1e5, 1e6];
    let closed: Vec<(f64, f64)> = radii.iter().map(|&big| (big, EtaProfile::new(2, 0.0, 1.0, E, big).unwrap().eval(r0))).collect();
    let oracle: Vec<(f64, f64)> = radii
        .iter()
        .map(|&big| {
            let pts = radial_bvp_richardson(2, 0.0, 1.0, E, big, 1024, BvpData { left: 0.0, right: 0.0, forcing: true }).unwrap();
            (big, interpolate_log(&pts, r0))
        })
        .collect();
    let (sc, so) = (loglog_slope(&closed), loglog_slope(&oracle));
    let slope_err = (so / sc - 1.0).abs();
    let ok = d1 <= 1e-4 && d3 <= 1e-4 && slope_err <= 0.05 && sc > 0.0;
    outcome(ok, format!("eta1 {d1:.1e}, eta3 {d3:.1e} relative; log log R slope {so:.4} vs closed {sc:.4}"))
}

fn ground_state_and_barta() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6772_6f75);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let hemisphere = i % 4 == 3;
        let (n, theta0, lam) = if hemisphere { (3u32, PI / 2.0, 2.0) } else {
            let t: f64 = rng.gen_range(0.5..3.0);
            (2u32, t, (PI / t).powi(2))
        };
        let nf = n as f64;
        let alpha: f64 = rng.gen_range(-2.0..1.0);
        let mu: f64 = rng.gen_range(-1.0..2.0);
        let (a, b): (f64, f64) = (rng.gen_range(1.0..3.0), rng.gen_range(4.0..9.0));
        let (c1, c2): (f64, f64) = (rng.gen_range(-0.3..0.3), rng.gen_range(-0.5..0.5));
        let radial = move |r: f64| (r.powf(alpha), alpha * r.powf(alpha - 1.0));
        let angular = move |w: f64| {
            if hemisphere {
                (w.cos(), -w.sin())
            } else {
                ((PI * w / theta0).sin(), PI / theta0 * (PI * w / theta0).cos())
            }
        };
        let pot = move |r: f64| mu / (r * r);
        // -Δ(r^α Q) - μ r^{-2} r^α Q = (λ - α(α+N-2) - μ) r^{α-2} Q
        let ratio = move |r: f64| (lam - alpha * (alpha + nf - 2.0) - mu) / (r * r);
        let domain = if hemisphere { AngularDomain::Axisymmetric { n: 3, theta0 } } else { AngularDomain::Arc { theta0 } };
        let gs = GroundState { n, radial: &radial, angular: &angular, domain, potential: &pot, forcing_ratio: &ratio };
        let f = move |r: f64| {
            let x = (r - a) * (b - r);
            let poly = 1.0 + c1 * r;
            (x * x * poly, 2.0 * x * (a + b - 2.0 * r) * poly + x * x * c1)
        };
        let h = move |w: f64| (1.0 + c2 * w.cos(), -c2 * w.sin());
        let rep = ground_state_identity(&gs, f, &[a, (a + b) / 2.0, b], h, 8193);
        worst = worst.max(rep.gap);
    }
    let arc = eigen_arc(1.0, 1).unwrap();
    let b_arc = barta_check(arc.phi1().unwrap(), None, &arc.domain().unwrap(), arc.lambda1(), 257);
    let step = PiecewiseConstant { breaks: vec![0.5], values: vec![0.0, 3.0] };
    let pot_arc = eigen_arc_with_potential(1.0, &step, 1).unwrap();
    let b_pot = barta_check(pot_arc.phi1().unwrap(), Some(&step), &pot_arc.domain().unwrap(), pot_arc.lambda1(), 257);
    let cap = eigen_cap(3, 1.0, 1).unwrap();
    let b_cap = barta_check(cap.phi1().unwrap(), None, &cap.domain().unwrap(), cap.lambda1(), 257);
    let barta = b_arc.gap.max(b_pot.gap).max(b_cap.gap);
    let ok = worst <= 1e-6 && barta <= 1e-6;
    outcome(ok, format!("100 identities, worst gap {worst:.1e}; Barta gap {barta:.1e}"))
}

fn attr(tag: &str, name: &str) -> Option<String> {
    let key = format!(" {name}=\"");
    let start = tag.find(&key)? + key.len();
    let end = tag[start..].find('"')? + start;
    Some(tag[start..end].to_string())
}

fn num(tag: &str, name: &str) -> f64 {
    attr(tag, name).and_then(|v| v.parse().ok()).unwrap_or(f64::NAN)
}

fn figure_topology() -> Outcome {
    let pr = Range::new(-4.0, 4.0).unwrap();
    let sr = Range::new(-4.0, 8.0).unwrap();
    let mut problems = Vec::new();
    for preset in FigurePreset::ALL {
        let pp = preset.params();
        let bd = boundary(&pp, 0.0, pr).unwrap();
        let svg = render_svg(&bd, pr, sr, &SvgStyle::default());
        let tags: Vec<&str> = svg.split('<').collect();
        let find = |role: &str| tags.iter().filter(|t| t.contains(&format!("data-role=\"{role}\""))).copied().collect::<Vec<_>>();
        let segments: Vec<&str> = tags.iter().filter(|t| t.starts_with("polyline class=\"boundary\"")).copied().collect();
        // closed-form roots of γ(γ + N - 2 + A) = λ1 - B
        let k = pp.n as f64 - 2.0 + pp.a;
        let disc = k * k - 4.0 * pp.b;
        let (gm, gp) = ((-k - disc.max(0.0).sqrt()) / 2.0, (-k + disc.max(0.0).sqrt()) / 2.0);
        let double = disc.abs() < 1e-12;
        let name = preset.name();
        let seg_value = |p: f64| {
            segments.iter().find_map(|s| {
                let from: Vec<f64> = attr(s, "data-from")?.split(',').map(|x| x.parse().unwrap()).collect();
                let to: Vec<f64> = attr(s, "data-to")?.split(',').map(|x| x.parse().unwrap()).collect();
                (from[0] <= p && p <= to[0]).then(|| from[1] + (to[1] - from[1]) * (p - from[0]) / (to[0] - from[0]))
            })
        };
        if seg_value(1.0).is_none_or(|v| (v - 2.0).abs() > 1e-9) {
            problems.push(format!("{name}: boundary misses (1,2)"));
        }
        let kink = find("kink");
        if kink.len() != 1 || !kink[0].contains("marker open") || (num(kink[0], "data-p") - 1.0).abs() > 1e-9 || (num(kink[0], "data-sigma") - 2.0).abs() > 1e-9 {
            problems.push(format!("{name}: kink glyph"));
        }
        let icpt = find("sigma-intercept");
        if icpt.len() != 1 || (num(icpt[0], "data-sigma") - (2.0 - gp)).abs() > 1e-9 || seg_value(0.0).is_none_or(|v| (v - (2.0 - gp)).abs() > 1e-9) {
            problems.push(format!("{name}: sigma intercept"));
        }
        let mut crossings: Vec<f64> = Vec::new();
        if double {
            if gp != 0.0 {
                crossings.push(1.0 - 2.0 / gp);
            }
        } else {
            if gm < 0.0 {
                crossings.push(1.0 - 2.0 / gm);
            }
            if gp > 0.0 {
                crossings.push(1.0 - 2.0 / gp);
            }
        }
        let shown: Vec<f64> = find("p-crossing").iter().map(|t| num(t, "data-p")).collect();
        if shown.len() != crossings.len() || crossings.iter().any(|c| !shown.iter().any(|s| (s - c).abs() <= 1e-9)) {
            problems.push(format!("{name}: p crossings {shown:?} vs {crossings:?}"));
        }
        for c in &crossings {
            if pr.lo <= *c && *c <= pr.hi && seg_value(*c).is_none_or(|v| v.abs() > 1e-9) {
                problems.push(format!("{name}: boundary not zero at {c}"));
            }
        }
        let endpoints = find("endpoint");
        let dashed = segments.iter().filter(|s| s.contains("data-style=\"dashed\"")).count();
        if double {
            let want = pp.n as f64 + pp.a;
            let ok = endpoints.len() == 1
                && endpoints[0].contains("marker closed")
                && (num(endpoints[0], "data-p") + 1.0).abs() <= 1e-9
                && (num(endpoints[0], "data-sigma") - want).abs() <= 1e-9
                && dashed == 1
                && segments.len() == 2;
            if !ok {
                problems.push(format!("{name}: double-root glyphs"));
            }
        } else if !endpoints.is_empty() || dashed != 0 || segments.len() != 2 {
            problems.push(format!("{name}: distinct-root glyphs"));
        }
    }
    outcome(problems.is_empty(), if problems.is_empty() { "six presets match".into() } else { format!("{problems:?}") })
}
