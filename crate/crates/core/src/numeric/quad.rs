//! Adaptive Gauss–Legendre quadrature.
//!
//! Each panel is integrated with a 10-point and a 20-point rule; their
//! difference is the panel error estimate. The worst panel is bisected
//! until the summed estimate meets the tolerance. Integrable endpoint
//! singularities (e.g. `log|t|`) converge through repeated bisection toward
//! the singular point; callers should place such points at panel breaks.

use super::dd::KahanSum;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("quadrature did not converge on [{a}, {b}] (estimated error {error:e}, tolerance {tol:e})")]
    NoConvergence { a: f64, b: f64, error: f64, tol: f64 },
    #[error("integrand returned a non-finite value at t = {0}")]
    NonFinite(f64),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Gauss–Legendre nodes and weights on [-1, 1], computed by Newton iteration
/// on the Legendre polynomial.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2, "rule needs at least two nodes");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            // p1 = P_n(x), p0 = P_{n-1}(x)
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

struct Rule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

fn rules() -> &'static (Rule, Rule) {
    static RULES: OnceLock<(Rule, Rule)> = OnceLock::new();
    RULES.get_or_init(|| {
        let (n1, w1) = gauss_legendre(10);
        let (n2, w2) = gauss_legendre(20);
        (Rule { nodes: n1, weights: w1 }, Rule { nodes: n2, weights: w2 })
    })
}

fn apply<F: FnMut(f64) -> f64>(rule: &Rule, f: &mut F, a: f64, b: f64) -> Result<f64, QuadratureError> {
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = KahanSum::new();
    for (x, w) in rule.nodes.iter().zip(&rule.weights) {
        let t = mid + half * x;
        let v = f(t);
        if !v.is_finite() {
            return Err(QuadratureError::NonFinite(t));
        }
        acc.add(w * v);
    }
    Ok(half * acc.value())
}

#[derive(Debug, Clone, Copy)]
pub struct QuadOptions {
    /// Absolute tolerance over the whole interval.
    pub abs_tol: f64,
    /// Relative tolerance against the magnitude of the integral.
    pub rel_tol: f64,
    /// Cap on the number of panels before giving up.
    pub max_panels: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { abs_tol: 1e-10, rel_tol: 1e-12, max_panels: 20_000 }
    }
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> Result<Panel, QuadratureError> {
    let (lo, hi) = rules();
    let coarse = apply(lo, f, a, b)?;
    let value = apply(hi, f, a, b)?;
    Ok(Panel { a, b, value, error: (value - coarse).abs() })
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: FnMut(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Integral, QuadratureError> {
    integrate_with_breaks(f, &[a, b], opts)
}

/// Integrates over consecutive panels `[breaks[i], breaks[i+1]]`, always
/// bisecting the panel with the largest error estimate until the summed
/// estimate meets the tolerance.
pub fn integrate_with_breaks<F: FnMut(f64) -> f64>(
    mut f: F,
    breaks: &[f64],
    opts: QuadOptions,
) -> Result<Integral, QuadratureError> {
    let mut heap = std::collections::BinaryHeap::new();
    let (mut value, mut error) = (0.0, 0.0);
    for w in breaks.windows(2) {
        if w[0] != w[1] {
            let p = panel(&mut f, w[0], w[1])?;
            value += p.value;
            error += p.error;
            heap.push(p);
        }
    }
    loop {
        let tol = opts.abs_tol.max(opts.rel_tol * value.abs());
        if error <= tol {
            let value = heap.iter().map(|p| p.value).collect::<KahanSum>().value();
            let error = heap.iter().map(|p| p.error).sum();
            return Ok(Integral { value, error });
        }
        let Some(worst) = heap.pop() else {
            return Ok(Integral { value: 0.0, error: 0.0 });
        };
        let m = 0.5 * (worst.a + worst.b);
        if heap.len() + 2 > opts.max_panels || m == worst.a || m == worst.b {
            return Err(QuadratureError::NoConvergence { a: worst.a, b: worst.b, error, tol });
        }
        let left = panel(&mut f, worst.a, m)?;
        let right = panel(&mut f, m, worst.b)?;
        value += left.value + right.value - worst.value;
        error = (error + left.error + right.error - worst.error).max(0.0);
        heap.push(left);
        heap.push(right);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        let (x, w) = gauss_legendre(10);
        // exact for degree <= 19
        let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(18)).sum();
        assert!((s - 2.0 / 19.0).abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn smooth_integral() {
        let r = integrate(|t| t.sin(), 0.0, std::f64::consts::PI, QuadOptions::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn log_endpoint_singularity() {
        // int_0^1 log t dt = -1
        let r = integrate(|t| t.ln(), 0.0, 1.0, QuadOptions { abs_tol: 1e-10, ..Default::default() }).unwrap();
        assert!((r.value + 1.0).abs() < 1e-9, "{}", r.value);
    }

    #[test]
    fn interior_log_singularity_at_break() {
        // int_{-1}^{2} log|t| dt = -1 + (2 log 2 - 2)
        let exact = -1.0 + 2.0 * 2f64.ln() - 2.0;
        let r = integrate_with_breaks(|t: f64| t.abs().ln(), &[-1.0, 0.0, 2.0], QuadOptions::default()).unwrap();
        assert!((r.value - exact).abs() < 1e-9);
    }

    #[test]
    fn nan_is_reported() {
        let r = integrate(|_| f64::NAN, 0.0, 1.0, QuadOptions::default());
        assert!(matches!(r, Err(QuadratureError::NonFinite(_))));
    }
}
