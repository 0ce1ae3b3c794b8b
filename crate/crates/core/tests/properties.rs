//! Invariants of the reduction, the Kelvin map, the classifier and the improved Hardy inequality.

use conecrit::classifier::{classify_with_lambda1, critical_line, indicial_roots, original_roots, LineKind, Roots, Verdict};
use conecrit::hardy::{form_eval, AngularConstants};
use conecrit::params::{kelvin, kelvin_exponent, ConeSpec, Domain, ProblemParams};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = ProblemParams> {
    (2u32..=5, -5.0..5.0f64, -5.0..5.0f64, -5.0..5.0f64, -4.0..4.0f64, 0.1..10.0f64)
        .prop_filter("p away from 1", |t| (t.4 - 1.0).abs() > 1e-6)
        .prop_map(|(n, a, b, sigma, p, c)| ProblemParams::new(n, a, b, c, sigma, p, ConeSpec::FullSphere))
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn roots_shift_by_half_a(pp in params()) {
        let rp = pp.reduce().unwrap();
        match (original_roots(&pp, 0.0), indicial_roots(pp.n, rp.mu, 0.0)) {
            (Ok(g), Ok(a)) => {
                prop_assert!(close(g.minus() + pp.a / 2.0, a.minus()));
                prop_assert!(close(g.plus() + pp.a / 2.0, a.plus()));
            }
            (Err(_), Err(_)) => {}
            (g, a) => prop_assert!(false, "root existence differs: {g:?} vs {a:?}"),
        }
    }

    #[test]
    fn kelvin_is_an_involution(pp in params()) {
        let rp = pp.reduce().unwrap();
        let back = kelvin(&kelvin(&rp));
        prop_assert!(close(back.s, rp.s));
        prop_assert_eq!(back.domain, Domain::Exterior);
        prop_assert!(close(kelvin_exponent(rp.n, rp.p, kelvin_exponent(rp.n, rp.p, rp.s)), rp.s));
    }

    #[test]
    fn exterior_and_interior_verdicts_agree(pp in params()) {
        let rp = pp.reduce().unwrap();
        let dual = kelvin(&rp);
        if let Ok(roots) = indicial_roots(rp.n, rp.mu, 0.0) {
            let (ext, _) = critical_line(rp.p, &roots, LineKind::ExteriorMin);
            let (int, _) = critical_line(dual.p, &roots, LineKind::InteriorMax);
            prop_assume!((rp.s - ext).abs() > 1e-6 && (dual.s - int).abs() > 1e-6);
        }
        let e = classify_with_lambda1(&rp, 0.0).unwrap();
        let i = classify_with_lambda1(&dual, 0.0).unwrap();
        prop_assert_eq!(e.verdict, i.verdict);
    }

    #[test]
    fn existence_is_monotone_in_sigma(pp in params(), ds in 0.0..5.0f64) {
        let lo = classify_with_lambda1(&pp.reduce().unwrap(), 0.0).unwrap();
        let mut hi = pp.clone();
        hi.sigma += ds;
        let hi = classify_with_lambda1(&hi.reduce().unwrap(), 0.0).unwrap();
        if lo.verdict == Verdict::Exists {
            prop_assert_eq!(hi.verdict, Verdict::Exists);
        }
        if hi.verdict == Verdict::NoPositiveSupersolutions {
            prop_assert_eq!(lo.verdict, Verdict::NoPositiveSupersolutions);
        }
    }

    #[test]
    fn verdict_ignores_c_and_rho(pp in params(), c in 0.01..100.0f64, rho in 0.01..100.0f64) {
        let base = classify_with_lambda1(&pp.reduce().unwrap(), 0.0).unwrap();
        let mut other = pp.clone();
        other.c = c;
        other.rho = rho;
        let other = classify_with_lambda1(&other.reduce().unwrap(), 0.0).unwrap();
        prop_assert_eq!(base.verdict, other.verdict);
    }

    #[test]
    fn linear_threshold_depends_on_b_plus_c(n in 2u32..=5, b in -2.0..2.0f64, c in 0.01..2.0f64) {
        let pp = ProblemParams::new(n, 0.0, b, c, 2.0, 1.0, ConeSpec::FullSphere);
        let v = classify_with_lambda1(&pp.reduce().unwrap(), 0.0).unwrap().verdict;
        let ch = (n as f64 - 2.0).powi(2) / 4.0;
        let want = if b + c > ch { Verdict::NoPositiveSupersolutions } else { Verdict::Exists };
        prop_assert_eq!(v, want);
    }

    #[test]
    fn critical_line_passes_through_one_two(pp in params()) {
        let rp = pp.reduce().unwrap();
        if let Ok(roots) = indicial_roots(rp.n, rp.mu, 0.0) {
            for kind in [LineKind::ExteriorMin, LineKind::InteriorMax] {
                prop_assert!(close(critical_line(1.0, &roots, kind).0, 2.0));
            }
            if let Roots::Distinct { minus, plus } = roots {
                prop_assert!(minus < plus);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// `∫|∇v|² - (C_H + λ1)∫v²/r² >= (1/4)∫v²/(r² log² r)` for random `v = f(r) g(ω)` supported in `r > 1`.
    #[test]
    fn improved_hardy_is_nonnegative(
        n in 2u32..=5,
        lo in 1.05..20.0f64,
        width in 1.5..1e4f64,
        c1 in -3.0..3.0f64,
        c2 in -3.0..3.0f64,
        excess in 0.0..3.0f64,
        lambda1 in 0.0..10.0f64,
    ) {
        let hi = lo * width;
        let (tl, th) = (lo.ln(), hi.ln());
        // w(t) = (t - tl)^2 (th - t)^2 (1 + c1 s + c2 s^2), s the position in [tl, th]
        let radial = |r: f64| {
            let t = r.ln();
            let s = (t - tl) / (th - tl);
            let poly = 1.0 + c1 * s + c2 * s * s;
            let dpoly = (c1 + 2.0 * c2 * s) / (th - tl);
            let b = (t - tl).powi(2) * (th - t).powi(2);
            let db = 2.0 * (t - tl) * (th - t).powi(2) - 2.0 * (t - tl).powi(2) * (th - t);
            (b * poly, (db * poly + b * dpoly) / r)
        };
        let mid = (lo * hi).sqrt();
        let ang = AngularConstants { l2: 1.0, grad: lambda1 + excess, potential: 0.0 };
        let ch = (n as f64 - 2.0).powi(2) / 4.0;
        let form = form_eval(n, radial, &[lo, mid, hi], &ang, ch + lambda1, 0.25);
        prop_assert!(form.total >= -1e-8 * form.dirichlet.abs().max(1.0), "{form:?}");
    }
}
