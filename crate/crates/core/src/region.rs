//! Phase diagram in the `(p, σ)` plane: classification grids, the exact boundary of the
//! nonexistence set and its CSV/SVG renderings.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::classifier::{classify_with_lambda1, original_roots, Classification, Roots, Verdict};
use crate::error::{Error, Result};
use crate::params::{ConeSpec, ProblemParams};

/// One classified point of a region grid, in the original `(p, σ)` coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridPoint {
    pub p: f64,
    pub sigma: f64,
    pub classification: Classification,
    /// Critical line value in `σ` coordinates, absent above the threshold.
    pub lambda_sigma: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Range {
    pub lo: f64,
    pub hi: f64,
}

impl Range {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidParams(format!("invalid range [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi })
    }

    fn node(&self, i: usize, count: usize) -> f64 {
        self.lo + (self.hi - self.lo) * i as f64 / (count - 1) as f64
    }
}

/// Classifies every node of a `p_count × sigma_count` Cartesian grid, rows ordered by `p`
/// then `σ`.  `template` supplies `N, A, B, C` and the cone.
pub fn region_grid(template: &ProblemParams, lambda1: f64, p: Range, sigma: Range, p_count: usize, sigma_count: usize) -> Result<Vec<GridPoint>> {
    if p_count < 2 || sigma_count < 2 {
        return Err(Error::InvalidParams("grid resolution must be at least 2x2".into()));
    }
    template.validate()?;
    let half_a = template.a / 2.0;
    (0..p_count * sigma_count)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = (idx / sigma_count, idx % sigma_count);
            let mut pp = template.clone();
            pp.p = p.node(i, p_count);
            pp.sigma = sigma.node(j, sigma_count);
            let cls = classify_with_lambda1(&pp.reduce()?, lambda1)?;
            let lambda_sigma = cls.line.map(|l| l - half_a * (pp.p - 1.0));
            Ok(GridPoint { p: pp.p, sigma: pp.sigma, classification: cls, lambda_sigma })
        })
        .collect()
}

/// CSV with header `p,sigma,verdict,justification,Lambda,branch`.
pub fn write_csv<W: Write>(out: W, grid: &[GridPoint]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(["p", "sigma", "verdict", "justification", "Lambda", "branch"]).map_err(io)?;
    for g in grid {
        let c = &g.classification;
        let lambda = g.lambda_sigma.map(|l| format!("{l:.16e}")).unwrap_or_default();
        let branch = c.branch.map(|b| b.to_string()).unwrap_or_else(|| "none".into());
        w.write_record([format!("{:.16e}", g.p), format!("{:.16e}", g.sigma), c.verdict.to_string(), c.justification.to_string(), lambda, branch]).map_err(io)?;
    }
    w.flush().map_err(|e| Error::Io(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LineStyle {
    /// Boundary points belong to the nonexistence set.
    Solid,
    /// Boundary points are excluded (full sphere) or unresolved (proper cones).
    Dashed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Segment {
    pub from: (f64, f64),
    pub to: (f64, f64),
    pub style: LineStyle,
    /// Root whose line this is, in `σ` coordinates.
    pub slope: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Glyph {
    Open,
    Closed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MarkerRole {
    /// `(p, σ) = (1, 2)`.
    Kink,
    /// End of the included part of a double-root line, at `p = -1`.
    Endpoint,
    /// `σ` at `p = 0`, equal to `2 - γ⁺`.
    SigmaIntercept,
    /// Zero of the boundary on the `p` axis, `1 - 2/γ`.
    PCrossing,
    /// Line value `N + A` at `p = -1` for a double root.
    LineValue,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Marker {
    pub role: MarkerRole,
    pub p: f64,
    pub sigma: f64,
    pub glyph: Option<Glyph>,
    pub label: String,
}

/// Exact boundary of the nonexistence set in `σ` coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Boundary {
    /// `γ⁻ ≤ γ⁺` of `γ(γ + N - 2 + A) = λ1 - B`; `None` above the threshold where the set is the whole plane.
    pub roots: Option<Roots>,
    pub segments: Vec<Segment>,
    pub markers: Vec<Marker>,
    pub full_sphere: bool,
}

/// Builds the boundary over `p ∈ p_range` from the original roots.
pub fn boundary(template: &ProblemParams, lambda1: f64, p_range: Range) -> Result<Boundary> {
    template.validate()?;
    let full_sphere = template.cone.is_full_sphere();
    let kink = Marker { role: MarkerRole::Kink, p: 1.0, sigma: 2.0, glyph: Some(Glyph::Open), label: "(1,2)".into() };
    let roots = match original_roots(template, lambda1) {
        Ok(r) => r,
        Err(Error::NoRealRoots) => return Ok(Boundary { roots: None, segments: vec![], markers: vec![kink], full_sphere }),
        Err(e) => return Err(e),
    };
    let line = |g: f64, p: f64| g * (p - 1.0) + 2.0;
    let mut segments = Vec::new();
    let mut markers = vec![kink];
    let (lo, hi) = (p_range.lo, p_range.hi);
    match roots {
        Roots::Distinct { minus, plus } => {
            // p < 1 takes γ⁺, p > 1 takes γ⁻
            if lo < 1.0 {
                segments.push(Segment { from: (lo, line(plus, lo)), to: (1.0, 2.0), style: LineStyle::Solid, slope: plus });
            }
            if hi > 1.0 {
                segments.push(Segment { from: (1.0, 2.0), to: (hi, line(minus, hi)), style: LineStyle::Solid, slope: minus });
            }
            markers.push(Marker { role: MarkerRole::SigmaIntercept, p: 0.0, sigma: 2.0 - plus, glyph: None, label: "2-γ+".into() });
            if minus < 0.0 {
                markers.push(Marker { role: MarkerRole::PCrossing, p: 1.0 - 2.0 / minus, sigma: 0.0, glyph: None, label: "1-2/γ-".into() });
            }
            if plus > 0.0 {
                markers.push(Marker { role: MarkerRole::PCrossing, p: 1.0 - 2.0 / plus, sigma: 0.0, glyph: None, label: "1-2/γ+".into() });
            }
        }
        Roots::Double { star } => {
            let split = (-1.0f64).clamp(lo, hi);
            if lo < -1.0 {
                segments.push(Segment { from: (lo, line(star, lo)), to: (split, line(star, split)), style: LineStyle::Dashed, slope: star });
            }
            if hi > -1.0 {
                segments.push(Segment { from: (split, line(star, split)), to: (hi, line(star, hi)), style: LineStyle::Solid, slope: star });
            }
            let n_plus_a = template.n as f64 + template.a;
            markers.push(Marker { role: MarkerRole::Endpoint, p: -1.0, sigma: line(star, -1.0), glyph: Some(Glyph::Closed), label: "A+N".into() });
            markers.push(Marker { role: MarkerRole::LineValue, p: -1.0, sigma: n_plus_a, glyph: None, label: "A+N".into() });
            markers.push(Marker { role: MarkerRole::SigmaIntercept, p: 0.0, sigma: 2.0 - star, glyph: None, label: "2-γ+".into() });
            if star != 0.0 {
                markers.push(Marker { role: MarkerRole::PCrossing, p: 1.0 - 2.0 / star, sigma: 0.0, glyph: None, label: "1-2/γ".into() });
            }
        }
    }
    Ok(Boundary { roots: Some(roots), segments, markers, full_sphere })
}

impl Boundary {
    /// Value of the boundary at `p`, `None` above the threshold.
    pub fn value(&self, p: f64) -> Option<f64> {
        let r = self.roots?;
        let g = if p < 1.0 { r.plus() } else { r.minus() };
        Some(g * (p - 1.0) + 2.0)
    }
}

/// Parameter sets reproducing the six qualitative pictures of the nonexistence set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FigurePreset {
    /// `γ⁻ < 0 ≤ γ⁺`
    A,
    /// `γ⁻ = γ⁺ = 0`
    B,
    /// `0 ≤ γ⁻ < γ⁺`
    C,
    /// `γ⁻ = γ⁺ > 0`
    D,
    /// `γ⁻ < γ⁺ < 0`
    E,
    /// `γ⁻ = γ⁺ < 0`
    F,
}

impl FigurePreset {
    pub const ALL: [FigurePreset; 6] = [Self::A, Self::B, Self::C, Self::D, Self::E, Self::F];

    pub fn name(&self) -> &'static str {
        match self {
            Self::A => "a",
            Self::B => "b",
            Self::C => "c",
            Self::D => "d",
            Self::E => "e",
            Self::F => "f",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| Error::InvalidParams(format!("unknown figure preset {s:?}")))
    }

    /// `(N, A, B)` on the full sphere, `C = 1`.
    pub fn params(&self) -> ProblemParams {
        let (n, a, b) = match self {
            Self::A => (3, 0.0, 0.0),
            Self::B => (2, 0.0, 0.0),
            Self::C => (2, -2.0, 0.0),
            Self::D => (2, -2.0, 1.0),
            Self::E => (3, 2.0, 1.0),
            Self::F => (3, 2.0, 2.25),
        };
        ProblemParams::new(n, a, b, 1.0, 0.0, 1.0, ConeSpec::FullSphere)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SvgStyle {
    pub fill: String,
    pub stroke: String,
}

impl Default for SvgStyle {
    fn default() -> Self {
        Self { fill: "#c8d7ea".into(), stroke: "#1b2a41".into() }
    }
}

const SIZE: f64 = 800.0;
const MARGIN: f64 = 40.0;

/// Sutherland–Hodgman clip of a polygon against an axis-aligned box.
fn clip(poly: &[(f64, f64)], p: Range, s: Range) -> Vec<(f64, f64)> {
    let edges: [(usize, f64, bool); 4] = [(0, p.lo, true), (0, p.hi, false), (1, s.lo, true), (1, s.hi, false)];
    let mut out = poly.to_vec();
    for (axis, bound, keep_above) in edges {
        let coord = |q: &(f64, f64)| if axis == 0 { q.0 } else { q.1 };
        let inside = |q: &(f64, f64)| if keep_above { coord(q) >= bound } else { coord(q) <= bound };
        let input = std::mem::take(&mut out);
        for (i, cur) in input.iter().enumerate() {
            let prev = &input[(i + input.len() - 1) % input.len()];
            let cross = || {
                let t = (bound - coord(prev)) / (coord(cur) - coord(prev));
                (prev.0 + t * (cur.0 - prev.0), prev.1 + t * (cur.1 - prev.1))
            };
            match (inside(prev), inside(cur)) {
                (true, true) => out.push(*cur),
                (true, false) => out.push(cross()),
                (false, true) => {
                    out.push(cross());
                    out.push(*cur);
                }
                (false, false) => {}
            }
        }
        if out.is_empty() {
            break;
        }
    }
    out
}

/// Hand-written SVG of the nonexistence set with boundary, kink and endpoint glyphs.
/// Exact coordinates are carried in `data-*` attributes.
pub fn render_svg(bd: &Boundary, p: Range, s: Range, style: &SvgStyle) -> String {
    let span = SIZE - 2.0 * MARGIN;
    let x = |v: f64| MARGIN + (v - p.lo) / (p.hi - p.lo) * span;
    let y = |v: f64| SIZE - MARGIN - (v - s.lo) / (s.hi - s.lo) * span;
    let poly: Vec<(f64, f64)> = match bd.roots {
        None => vec![(p.lo, s.lo), (p.hi, s.lo), (p.hi, s.hi), (p.lo, s.hi)],
        Some(_) => {
            let mut v = vec![(p.lo, s.lo), (p.lo, bd.value(p.lo).unwrap_or(s.lo))];
            if p.lo < 1.0 && p.hi > 1.0 {
                v.push((1.0, 2.0));
            }
            v.push((p.hi, bd.value(p.hi).unwrap_or(s.lo)));
            v.push((p.hi, s.lo));
            v
        }
    };
    let region = clip(&poly, p, s);
    let mut o = String::new();
    let _ = writeln!(o, r#"<svg xmlns="http://www.w3.org/2000/svg" width="800" height="800" viewBox="0 0 800 800">"#);
    let _ = writeln!(o, r#"<rect width="800" height="800" fill="white"/>"#);
    if !region.is_empty() {
        let d: Vec<String> = region.iter().enumerate().map(|(i, q)| format!("{}{:.3},{:.3}", if i == 0 { "M" } else { "L" }, x(q.0), y(q.1))).collect();
        let _ = writeln!(o, r#"<path class="region" fill="{}" stroke="none" d="{} Z"/>"#, style.fill, d.join(" "));
    }
    let (ax, ay) = (x(0.0f64.clamp(p.lo, p.hi)), y(0.0f64.clamp(s.lo, s.hi)));
    let _ = writeln!(o, r#"<line class="axis" x1="{:.3}" y1="{ay:.3}" x2="{:.3}" y2="{ay:.3}" stroke="black"/>"#, MARGIN, SIZE - MARGIN);
    let _ = writeln!(o, r#"<line class="axis" x1="{ax:.3}" y1="{:.3}" x2="{ax:.3}" y2="{:.3}" stroke="black"/>"#, SIZE - MARGIN, MARGIN);
    let _ = writeln!(o, r#"<text x="{:.3}" y="{:.3}">p</text>"#, SIZE - MARGIN + 8.0, ay + 4.0);
    let _ = writeln!(o, r#"<text x="{:.3}" y="{:.3}">σ</text>"#, ax + 6.0, MARGIN - 8.0);
    for seg in &bd.segments {
        let clipped = clip(&[seg.from, seg.to, seg.to], p, s);
        if clipped.len() < 2 {
            continue;
        }
        let dash = if seg.style == LineStyle::Dashed { r#" stroke-dasharray="8,6""# } else { "" };
        let _ = writeln!(
            o,
            r#"<polyline class="boundary" data-style="{}" data-slope="{:.17e}" data-from="{:.17e},{:.17e}" data-to="{:.17e},{:.17e}" points="{:.3},{:.3} {:.3},{:.3}" fill="none" stroke="{}" stroke-width="2"{dash}/>"#,
            if seg.style == LineStyle::Dashed { "dashed" } else { "solid" },
            seg.slope,
            seg.from.0,
            seg.from.1,
            seg.to.0,
            seg.to.1,
            x(seg.from.0),
            y(seg.from.1),
            x(seg.to.0),
            y(seg.to.1),
            style.stroke
        );
    }
    for m in &bd.markers {
        let role = match m.role {
            MarkerRole::Kink => "kink",
            MarkerRole::Endpoint => "endpoint",
            MarkerRole::SigmaIntercept => "sigma-intercept",
            MarkerRole::PCrossing => "p-crossing",
            MarkerRole::LineValue => "line-value",
        };
        match m.glyph {
            Some(g) => {
                let (name, fill) = match g {
                    Glyph::Open => ("open", "white"),
                    Glyph::Closed => ("closed", style.stroke.as_str()),
                };
                let _ = writeln!(
                    o,
                    r#"<circle class="marker {name}" data-role="{role}" data-p="{:.17e}" data-sigma="{:.17e}" cx="{:.3}" cy="{:.3}" r="6" fill="{fill}" stroke="{}" stroke-width="2"/>"#,
                    m.p,
                    m.sigma,
                    x(m.p),
                    y(m.sigma),
                    style.stroke
                );
            }
            None => {
                let _ = writeln!(
                    o,
                    r#"<text class="label" data-role="{role}" data-p="{:.17e}" data-sigma="{:.17e}" x="{:.3}" y="{:.3}" font-size="14">{}</text>"#,
                    m.p,
                    m.sigma,
                    x(m.p) + 6.0,
                    y(m.sigma) - 6.0,
                    m.label
                );
            }
        }
    }
    o.push_str("</svg>\n");
    o
}

/// Whether every grid verdict agrees with the exact boundary (`σ ≤ Λ` nonexistence, excluding
/// the unresolved and excluded double-root ray).
pub fn grid_matches_boundary(grid: &[GridPoint], bd: &Boundary) -> bool {
    grid.iter().all(|g| {
        let v = g.classification.verdict;
        if g.p == 1.0 && g.sigma == 2.0 {
            return true;
        }
        match bd.value(g.p) {
            None => v == Verdict::NoPositiveSupersolutions,
            Some(l) if crate::classifier::on_line(g.sigma, l) => true,
            Some(l) => (g.sigma < l) == (v == Verdict::NoPositiveSupersolutions),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn full() -> Range {
        Range::new(-4.0, 4.0).unwrap()
    }

    #[test]
    fn preset_roots_match_regimes() {
        let roots: Vec<Roots> = FigurePreset::ALL.iter().map(|f| original_roots(&f.params(), 0.0).unwrap()).collect();
        assert_eq!(roots[0], Roots::Distinct { minus: -1.0, plus: 0.0 });
        assert_eq!(roots[1], Roots::Double { star: 0.0 });
        assert_eq!(roots[2], Roots::Distinct { minus: 0.0, plus: 2.0 });
        assert_eq!(roots[3], Roots::Double { star: 1.0 });
        assert!(matches!(roots[4], Roots::Distinct { minus, plus } if minus < plus && plus < 0.0));
        assert_eq!(roots[5], Roots::Double { star: -1.5 });
    }

    #[test]
    fn distinct_boundary_kinks_at_one_two() {
        let bd = boundary(&FigurePreset::E.params(), 0.0, full()).unwrap();
        assert_eq!(bd.segments.len(), 2);
        assert_eq!(bd.segments[0].to, (1.0, 2.0));
        assert_eq!(bd.segments[1].from, (1.0, 2.0));
        let gp = (-3.0 + 5f64.sqrt()) / 2.0;
        let icpt = bd.markers.iter().find(|m| m.role == MarkerRole::SigmaIntercept).unwrap();
        assert!((icpt.sigma - (2.0 - gp)).abs() < 1e-12);
    }

    #[test]
    fn double_root_has_dashed_ray_and_closed_endpoint() {
        let bd = boundary(&FigurePreset::F.params(), 0.0, full()).unwrap();
        assert_eq!(bd.segments[0].style, LineStyle::Dashed);
        assert_eq!(bd.segments[0].to.0, -1.0);
        assert_eq!(bd.segments[1].style, LineStyle::Solid);
        let end = bd.markers.iter().find(|m| m.role == MarkerRole::Endpoint).unwrap();
        assert_eq!(end.glyph, Some(Glyph::Closed));
        assert!((end.sigma - 5.0).abs() < 1e-12);
    }

    #[test]
    fn minimal_grid_csv() {
        let g = region_grid(&FigurePreset::A.params(), 0.0, Range::new(0.0, 4.0).unwrap(), Range::new(-1.0, 1.0).unwrap(), 2, 2).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &g).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "p,sigma,verdict,justification,Lambda,branch");
        assert_eq!(lines.len(), 5);
        assert!(!text.contains('\r'));
        assert!(lines[1].starts_with("0.0000000000000000e0,-1.0000000000000000e0,"));
    }

    #[test]
    fn supercritical_csv_has_empty_lambda() {
        let mut pp = FigurePreset::A.params();
        pp.b = 1.0;
        let g = region_grid(&pp, 0.0, full(), full(), 2, 2).unwrap();
        let mut buf = Vec::new();
        write_csv(&mut buf, &g).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.lines().skip(1).all(|l| l.ends_with(",,none")), "{text}");
    }

    #[test]
    fn grid_agrees_with_boundary() {
        for f in FigurePreset::ALL {
            let pp = f.params();
            let bd = boundary(&pp, 0.0, full()).unwrap();
            let g = region_grid(&pp, 0.0, full(), Range::new(-4.0, 8.0).unwrap(), 33, 49).unwrap();
            assert!(grid_matches_boundary(&g, &bd), "preset {}", f.name());
        }
    }

    #[test]
    fn clip_keeps_inside_polygon() {
        let sq = clip(&[(-10.0, -10.0), (10.0, -10.0), (10.0, 10.0), (-10.0, 10.0)], Range::new(-1.0, 1.0).unwrap(), Range::new(-1.0, 1.0).unwrap());
        assert_eq!(sq.len(), 4);
        assert!(sq.iter().all(|q| q.0.abs() <= 1.0 && q.1.abs() <= 1.0));
    }

    #[test]
    fn svg_is_deterministic_and_tagged() {
        let bd = boundary(&FigurePreset::A.params(), 0.0, full()).unwrap();
        let s1 = render_svg(&bd, full(), Range::new(-4.0, 8.0).unwrap(), &SvgStyle::default());
        let s2 = render_svg(&bd, full(), Range::new(-4.0, 8.0).unwrap(), &SvgStyle::default());
        assert_eq!(s1, s2);
        assert!(s1.contains(r#"class="marker open" data-role="kink""#));
        assert!(s1.contains(r#"viewBox="0 0 800 800""#));
    }
}
