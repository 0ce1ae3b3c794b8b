//! Quadrature, interpolation and small linear-algebra helpers shared by the solvers.

/// Composite Simpson rule on uniformly spaced samples.  `ys.len()` must be odd and >= 3.
pub fn simpson_samples(ys: &[f64], h: f64) -> f64 {
    let n = ys.len();
    assert!(n >= 3 && n % 2 == 1, "simpson needs an odd number of samples >= 3");
    let mut acc = ys[0] + ys[n - 1];
    for (i, y) in ys.iter().enumerate().take(n - 1).skip(1) {
        acc += if i % 2 == 1 { 4.0 * y } else { 2.0 * y };
    }
    acc * h / 3.0
}

/// Composite Simpson rule for `f` on `[a, b]` with `nodes` (odd) points.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, nodes: usize) -> f64 {
    let nodes = if nodes % 2 == 0 { nodes + 1 } else { nodes.max(3) };
    let h = (b - a) / (nodes - 1) as f64;
    let ys: Vec<f64> = (0..nodes).map(|i| f(a + h * i as f64)).collect();
    simpson_samples(&ys, h)
}

/// Adaptive Simpson quadrature with a relative tolerance on the running total.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, rel_tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    // Seed with a coarse composite rule so the recursion starts on resolved panels.
    let panels = 16;
    let h = (b - a) / panels as f64;
    let coarse = simpson(|x| f(x).abs(), a, b, 8 * panels + 1);
    let abs_tol = rel_tol * coarse.max(1e-300);
    let mut total = 0.0;
    for i in 0..panels {
        let x0 = a + h * i as f64;
        let x1 = if i + 1 == panels { b } else { x0 + h };
        let xm = 0.5 * (x0 + x1);
        let (f0, fm, f1) = (f(x0), f(xm), f(x1));
        let whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
        total += recurse(f, x0, x1, f0, fm, f1, whole, abs_tol / panels as f64, 40);
    }
    total
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Monotone piecewise-cubic Hermite interpolant (Fritsch–Carlson slopes).
#[derive(Debug, Clone)]
pub struct MonotoneCubic {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
}

impl MonotoneCubic {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        let n = xs.len();
        assert!(n >= 2 && ys.len() == n);
        let secants: Vec<f64> = (0..n - 1).map(|i| (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])).collect();
        let mut ds = vec![0.0; n];
        ds[0] = secants[0];
        ds[n - 1] = secants[n - 2];
        for i in 1..n - 1 {
            let (d0, d1) = (secants[i - 1], secants[i]);
            ds[i] = if d0 * d1 <= 0.0 {
                0.0
            } else {
                let (h0, h1) = (xs[i] - xs[i - 1], xs[i + 1] - xs[i]);
                let w1 = 2.0 * h1 + h0;
                let w2 = h1 + 2.0 * h0;
                (w1 + w2) / (w1 / d0 + w2 / d1)
            };
        }
        Self { xs, ys, ds }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => return self.ys[i],
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let t = (x - self.xs[i]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[i] + h10 * h * self.ds[i] + h01 * self.ys[i + 1] + h11 * h * self.ds[i + 1]
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }
}

/// Solves a tridiagonal system in place (Thomas algorithm).  `lower[0]` and `upper[n-1]` are ignored.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    c[0] = upper[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..n {
        let m = diag[i] - lower[i] * c[i - 1];
        c[i] = if i + 1 < n { upper[i] / m } else { 0.0 };
        d[i] = (rhs[i] - lower[i] * d[i - 1]) / m;
    }
    let mut x = vec![0.0; n];
    x[n - 1] = d[n - 1];
    for i in (0..n - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

/// Number of eigenvalues below `x` of the symmetric tridiagonal matrix (Sturm count).
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let denom = if q.abs() < 1e-300 { 1e-300 } else { q };
        q = diag[i] - x - off[i - 1] * off[i - 1] / denom;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Least-squares slope and intercept of `ys` against `xs`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// `n` log-spaced points from `a` to `b` inclusive.
pub fn log_space(a: f64, b: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| {
            if i == 0 {
                a
            } else if i + 1 == n {
                b
            } else {
                (la + (lb - la) * i as f64 / (n - 1) as f64).exp()
            }
        })
        .collect()
}

/// Finds a root of `f` on `[a, b]` by bisection; `f(a)` and `f(b)` must differ in sign.
pub fn bisect<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> Option<f64> {
    let (mut fa, fb) = (f(a), f(b));
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        let fm = f(m);
        if fm == 0.0 || (b - a).abs() <= tol * m.abs().max(1.0) {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_on_cubics() {
        let v = simpson(|x| x * x * x - 2.0 * x + 1.0, 0.0, 2.0, 3);
        assert!((v - 2.0).abs() < 1e-14);
    }

    #[test]
    fn adaptive_simpson_handles_sqrt_endpoint() {
        let v = adaptive_simpson(&|x: f64| x.sqrt(), 0.0, 1.0, 1e-10);
        assert!((v - 2.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn adaptive_simpson_oscillatory() {
        let v = adaptive_simpson(&|x: f64| (10.0 * x).sin(), 0.0, std::f64::consts::PI, 1e-11);
        assert!(v.abs() < 1e-9);
    }

    #[test]
    fn monotone_cubic_preserves_monotonicity() {
        let xs: Vec<f64> = (0..10).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| if x < 5.0 { 0.0 } else { 1.0 }).collect();
        let m = MonotoneCubic::new(xs, ys);
        let mut prev = -1.0;
        for i in 0..=900 {
            let v = m.eval(i as f64 / 100.0);
            assert!(v >= prev - 1e-15 && (0.0..=1.0).contains(&v));
            prev = v;
        }
    }

    #[test]
    fn monotone_cubic_reproduces_smooth_data() {
        let xs: Vec<f64> = (0..=4096).map(|i| i as f64 / 4096.0 * 3.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x.sin()).collect();
        let m = MonotoneCubic::new(xs, ys);
        for i in 0..100 {
            let x = 0.013 + i as f64 * 0.0297;
            assert!((m.eval(x) - x.sin()).abs() < 1e-9, "{x}: {}", (m.eval(x) - x.sin()).abs());
        }
    }

    #[test]
    fn thomas_matches_dense() {
        // -x'' = 1 on (0,1) with zero ends: x = t(1-t)/2
        let n = 99;
        let h = 1.0 / (n + 1) as f64;
        let lower = vec![-1.0; n];
        let upper = vec![-1.0; n];
        let diag = vec![2.0; n];
        let rhs = vec![h * h; n];
        let x = solve_tridiagonal(&lower, &diag, &upper, &rhs);
        for (i, xi) in x.iter().enumerate() {
            let t = (i + 1) as f64 * h;
            assert!((xi - t * (1.0 - t) / 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn sturm_count_laplacian() {
        let n = 50;
        let diag = vec![2.0; n];
        let off = vec![-1.0; n - 1];
        // eigenvalues 2 - 2cos(kπ/(n+1))
        let l1 = 2.0 - 2.0 * (std::f64::consts::PI / (n + 1) as f64).cos();
        assert_eq!(sturm_count(&diag, &off, l1 * 0.999), 0);
        assert_eq!(sturm_count(&diag, &off, l1 * 1.001), 1);
        assert_eq!(sturm_count(&diag, &off, 5.0), n);
    }

    #[test]
    fn fit_recovers_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x - 1.0).collect();
        let (m, b) = linear_fit(&xs, &ys);
        assert!((m - 3.0).abs() < 1e-14 && (b + 1.0).abs() < 1e-14);
    }

    #[test]
    fn bisection_finds_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-15).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-14);
    }
}
