//! Scalar numerical primitives shared by the analysis modules: uniform
//! sampling grids, bracketing and bisection, golden-section refinement,
//! Gauss-Legendre quadrature and the trapezoid rule.

use crate::error::{Error, Result};

/// `n` uniformly spaced interior points of the open interval `(lo, hi)`.
pub fn interior_grid(lo: f64, hi: f64, n: usize) -> impl Iterator<Item = f64> + Clone {
    let step = (hi - lo) / (n as f64 + 1.0);
    (1..=n).map(move |i| lo + step * i as f64)
}

/// Brackets `[a, b]` in which `f` changes sign, found by sampling `n`
/// interior points of `(lo, hi)`. A sample that is exactly zero produces
/// a degenerate bracket `[x, x]`.
pub fn sign_change_brackets<F>(f: F, lo: f64, hi: f64, n: usize) -> Result<Vec<(f64, f64)>>
where
    F: Fn(f64) -> f64,
{
    let mut brackets = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for x in interior_grid(lo, hi, n) {
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::NonFinite {
                what: "bracketing scan",
                at: x,
            });
        }
        if y == 0.0 {
            brackets.push((x, x));
            prev = None;
            continue;
        }
        if let Some((px, py)) = prev {
            if py.signum() != y.signum() {
                brackets.push((px, x));
            }
        }
        prev = Some((x, y));
    }
    Ok(brackets)
}

/// Bisection on a sign-changing bracket until the bracket width is below
/// `rtol * max(|a|, |b|)` (or machine resolution).
pub fn bisect<F>(f: F, mut a: f64, mut b: f64, rtol: f64) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    if a == b {
        return Ok(a);
    }
    let mut fa = f(a);
    let fb = f(b);
    if !fa.is_finite() || !fb.is_finite() {
        return Err(Error::NonFinite {
            what: "bisection endpoint",
            at: if fa.is_finite() { b } else { a },
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Root(format!(
            "no sign change on [{a}, {b}] (f = {fa}, {fb})"
        )));
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b || (b - a) <= rtol * a.abs().max(b.abs()) {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// Golden-section search for the minimum of a unimodal `f` on `[a, b]`.
/// Returns `(x, f(x))`.
pub fn golden_section_min<F>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// Minimum of `f` over a dense uniform scan of `[lo, hi]` (`n` points,
/// endpoints included), refined by golden-section search on the two
/// cells adjacent to the best sample.
pub fn scan_min<F>(f: F, lo: f64, hi: f64, n: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let n = n.max(3);
    let h = (hi - lo) / (n - 1) as f64;
    let (mut best_i, mut best) = (0, f(lo));
    for i in 1..n {
        let y = f(lo + h * i as f64);
        if y < best {
            best = y;
            best_i = i;
        }
    }
    let x_best = lo + h * best_i as f64;
    let a = (x_best - h).max(lo);
    let b = (x_best + h).min(hi);
    let (x, y) = golden_section_min(&f, a, b, 1e-12 * (1.0 + x_best.abs()));
    if y < best {
        (x, y)
    } else {
        (x_best, best)
    }
}

/// Maximum counterpart of [`scan_min`].
pub fn scan_max<F>(f: F, lo: f64, hi: f64, n: usize) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let (x, y) = scan_min(|u| -f(u), lo, hi, n);
    (x, -y)
}

/// Composite trapezoid rule for samples on a uniform grid of spacing `dx`.
pub fn trapezoid(values: &[f64], dx: f64) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => 0.0,
        n => {
            let inner: f64 = values[1..n - 1].iter().sum();
            dx * (inner + 0.5 * (values[0] + values[n - 1]))
        }
    }
}

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    /// Builds the `n`-point rule; nodes are the roots of `P_n`, found by
    /// Newton iteration from the Chebyshev-like initial guesses.
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        let nf = n as f64;
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre_with_derivative(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        Self { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Integral of `f` over `[a, b]` with this rule (no subdivision).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let sum: f64 = self
            .nodes
            .iter()
            .zip(&self.weights)
            .map(|(x, w)| w * f(mid + half * x))
            .sum();
        half * sum
    }

    /// Adaptive integration: an interval is accepted when the rule on the
    /// whole and on its two halves agree to `rtol` (relative) or `atol`.
    pub fn integrate_adaptive<F: Fn(f64) -> f64>(
        &self,
        f: F,
        a: f64,
        b: f64,
        rtol: f64,
        atol: f64,
    ) -> f64 {
        let whole = self.integrate(&f, a, b);
        self.adapt(&f, a, b, whole, rtol, atol, 0)
    }

    #[allow(clippy::too_many_arguments)]
    fn adapt<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        whole: f64,
        rtol: f64,
        atol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let left = self.integrate(f, a, m);
        let right = self.integrate(f, m, b);
        let refined = left + right;
        if (refined - whole).abs() <= atol.max(rtol * refined.abs()) || depth >= 40 {
            return refined;
        }
        self.adapt(f, a, m, left, rtol, 0.5 * atol, depth + 1)
            + self.adapt(f, m, b, right, rtol, 0.5 * atol, depth + 1)
    }
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let nf = n as f64;
    let dp = nf * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisection_finds_sqrt2() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 1e-14).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn bisection_rejects_same_sign() {
        assert!(matches!(
            bisect(|x| x * x + 1.0, -1.0, 1.0, 1e-12),
            Err(Error::Root(_))
        ));
    }

    #[test]
    fn brackets_count_sign_changes() {
        let b = sign_change_brackets(|x| (x - 0.3) * (x - 0.7), 0.0, 1.0, 100).unwrap();
        assert_eq!(b.len(), 2);
        assert!(b[0].0 <= 0.3 && 0.3 <= b[0].1);
    }

    #[test]
    fn gauss_legendre_is_exact_for_polynomials() {
        let rule = GaussLegendre::new(8);
        // degree 15 is the limit for 8 nodes
        let exact = 1.0 / 16.0;
        let got = rule.integrate(|x| x.powi(15) + 0.0 * x, 0.0, 1.0);
        assert!((got - exact).abs() < 1e-14, "{got}");
        let w: f64 = rule.weights.iter().sum();
        assert!((w - 2.0).abs() < 1e-14);
    }

    #[test]
    fn gauss_legendre_nodes_large_rule() {
        let rule = GaussLegendre::new(64);
        let got = rule.integrate(|x| x.exp(), 0.0, 1.0);
        assert!((got - (1f64.exp() - 1.0)).abs() < 1e-14);
    }

    #[test]
    fn adaptive_handles_peaked_integrand() {
        let rule = GaussLegendre::new(8);
        let f = |x: f64| 1.0 / (1e-4 + x * x);
        let exact = 2.0 * (1.0 / 1e-2) * (1.0f64 / 1e-2).atan();
        let got = rule.integrate_adaptive(f, -1.0, 1.0, 1e-12, 0.0);
        assert!(((got - exact) / exact).abs() < 1e-10);
    }

    #[test]
    fn golden_section_on_parabola() {
        let (x, y) = golden_section_min(|x| (x - 0.37).powi(2), 0.0, 1.0, 1e-10);
        assert!((x - 0.37).abs() < 1e-8);
        assert!(y < 1e-16);
    }

    #[test]
    fn trapezoid_is_exact_for_linear() {
        let xs: Vec<f64> = (0..11).map(|i| 2.0 * i as f64 / 10.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x + 1.0).collect();
        assert!((trapezoid(&ys, 0.2) - 8.0).abs() < 1e-12);
    }
}
