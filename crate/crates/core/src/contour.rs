//! Argument-principle machinery: continuous phase tracking along segments,
//! winding numbers of rectangles, and zero location by subdivision.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ContourError {
    #[error("degenerate rectangle [{0}, {1}] x [{2}, {3}]")]
    Degenerate(f64, f64, f64, f64),
    #[error("phase tracking failed near {at} on edge {edge:?}")]
    PhaseStep { at: Complex64, edge: Option<Edge> },
    #[error("function is not finite at {0}")]
    NonFinite(Complex64),
    #[error("winding {0} is not close to an integer")]
    NonInteger(f64),
    #[error("zero refinement did not converge in {0:?}")]
    NoConvergence(Rectangle),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Edge {
    Bottom,
    Right,
    Top,
    Left,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl Rectangle {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self, ContourError> {
        let ok = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite()) && re_min < re_max && im_min < im_max;
        if !ok {
            return Err(ContourError::Degenerate(re_min, re_max, im_min, im_max));
        }
        Ok(Rectangle { re_min, re_max, im_min, im_max })
    }

    pub fn width(&self) -> f64 {
        self.re_max - self.re_min
    }

    pub fn height(&self) -> f64 {
        self.im_max - self.im_min
    }

    pub fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))
    }

    pub fn contains(&self, z: Complex64) -> bool {
        z.re >= self.re_min && z.re <= self.re_max && z.im >= self.im_min && z.im <= self.im_max
    }

    /// Counter-clockwise boundary edges as (edge, start, end).
    pub fn edges(&self) -> [(Edge, Complex64, Complex64); 4] {
        let a = Complex64::new(self.re_min, self.im_min);
        let b = Complex64::new(self.re_max, self.im_min);
        let c = Complex64::new(self.re_max, self.im_max);
        let d = Complex64::new(self.re_min, self.im_max);
        [(Edge::Bottom, a, b), (Edge::Right, b, c), (Edge::Top, c, d), (Edge::Left, d, a)]
    }

    /// Moves one edge outward by `delta`.
    pub fn pushed(&self, edge: Edge, delta: f64) -> Rectangle {
        let mut r = *self;
        match edge {
            Edge::Bottom => r.im_min -= delta,
            Edge::Right => r.re_max += delta,
            Edge::Top => r.im_max += delta,
            Edge::Left => r.re_min -= delta,
        }
        r
    }

    /// Splits across the longer side at fraction `t` of that side.
    pub fn split(&self, t: f64) -> (Rectangle, Rectangle) {
        let mut lo = *self;
        let mut hi = *self;
        if self.width() >= self.height() {
            let m = self.re_min + t * self.width();
            lo.re_max = m;
            hi.re_min = m;
        } else {
            let m = self.im_min + t * self.height();
            lo.im_max = m;
            hi.im_min = m;
        }
        (lo, hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindingOptions {
    /// Largest accepted phase increment between neighbouring samples.
    pub max_step: f64,
    /// Initial samples per unit of path length.
    pub samples_per_unit: f64,
    pub min_samples: usize,
    /// Bisection depth before a segment is declared to pass through a zero.
    pub max_depth: u32,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions { max_step: PI / 4.0, samples_per_unit: 8.0, min_samples: 8, max_depth: 36 }
    }
}

fn checked<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64) -> Result<Complex64, ContourError> {
    let v = f(z);
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err(ContourError::NonFinite(z))
    }
}

fn refine<F: Fn(Complex64) -> Complex64>(
    f: &F,
    (a, fa): (Complex64, Complex64),
    (b, fb): (Complex64, Complex64),
    depth: u32,
    opts: &WindingOptions,
) -> Result<f64, ContourError> {
    let whole = (fb / fa).arg();
    let m = 0.5 * (a + b);
    let fm = checked(f, m)?;
    let d1 = (fm / fa).arg();
    let d2 = (fb / fm).arg();
    // a bounded relative change keeps the image chord away from the origin,
    // which rules out a full turn hidden between samples near a close zero
    let tame = |u: Complex64, v: Complex64| (v - u).norm() <= 0.5 * u.norm().min(v.norm());
    if d1.abs() < opts.max_step
        && d2.abs() < opts.max_step
        && (d1 + d2 - whole).abs() < 1e-9
        && tame(fa, fm)
        && tame(fm, fb)
    {
        return Ok(d1 + d2);
    }
    if depth == 0 || fm == Complex64::new(0.0, 0.0) {
        return Err(ContourError::PhaseStep { at: m, edge: None });
    }
    Ok(refine(f, (a, fa), (m, fm), depth - 1, opts)? + refine(f, (m, fm), (b, fb), depth - 1, opts)?)
}

/// Continuous change of `arg f` along the segment from `a` to `b`.
pub fn phase_change<F>(f: &F, a: Complex64, b: Complex64, opts: &WindingOptions) -> Result<f64, ContourError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let len = (b - a).norm();
    let n = opts.min_samples.max((len * opts.samples_per_unit).ceil() as usize);
    let pts: Vec<Complex64> = (0..=n).map(|k| a + (b - a) * (k as f64 / n as f64)).collect();
    let vals: Vec<Complex64> = pts.par_iter().map(|&z| checked(f, z)).collect::<Result<_, _>>()?;
    if vals.iter().any(|v| *v == Complex64::new(0.0, 0.0)) {
        let at = pts[vals.iter().position(|v| *v == Complex64::new(0.0, 0.0)).unwrap()];
        return Err(ContourError::PhaseStep { at, edge: None });
    }
    let parts: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|k| refine(f, (pts[k], vals[k]), (pts[k + 1], vals[k + 1]), opts.max_depth, opts))
        .collect::<Result<_, _>>()?;
    Ok(parts.iter().sum())
}

/// Total phase change of `f` around the rectangle, divided by 2 pi.
pub fn winding<F>(f: &F, rect: Rectangle, opts: &WindingOptions) -> Result<f64, ContourError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let mut total = 0.0;
    for (edge, a, b) in rect.edges() {
        total += phase_change(f, a, b, opts).map_err(|e| match e {
            ContourError::PhaseStep { at, .. } => ContourError::PhaseStep { at, edge: Some(edge) },
            other => other,
        })?;
    }
    Ok(total / (2.0 * PI))
}

/// Zeros minus poles of `f` inside `rect`.
pub fn count_zeros<F>(f: &F, rect: Rectangle, opts: &WindingOptions) -> Result<i64, ContourError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let w = winding(f, rect, opts)?;
    let n = w.round();
    if (w - n).abs() > 0.05 {
        return Err(ContourError::NonInteger(w));
    }
    Ok(n as i64)
}

/// [`count_zeros`], pushing a failing edge outward by `1e-4 (1 + |T|)` up to
/// five times, where `T` is the coordinate of that edge.
pub fn count_zeros_perturbed<F>(f: &F, rect: Rectangle, opts: &WindingOptions) -> Result<i64, ContourError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    perturbed(f, rect, opts).map(|(n, _)| n)
}

/// As [`count_zeros_perturbed`], also returning the rectangle actually used.
pub fn perturbed<F>(f: &F, rect: Rectangle, opts: &WindingOptions) -> Result<(i64, Rectangle), ContourError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let mut r = rect;
    let mut last = None;
    for _ in 0..=5 {
        match count_zeros(f, r, opts) {
            Ok(n) => return Ok((n, r)),
            Err(ContourError::PhaseStep { at, edge: Some(edge) }) => {
                let coord = match edge {
                    Edge::Bottom => r.im_min,
                    Edge::Top => r.im_max,
                    Edge::Left => r.re_min,
                    Edge::Right => r.re_max,
                };
                r = r.pushed(edge, 1e-4 * (1.0 + coord.abs()));
                last = Some(ContourError::PhaseStep { at, edge: Some(edge) });
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("loop ran at least once"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocatedZero {
    pub z: Complex64,
    pub multiplicity: u32,
    pub certified_by: Rectangle,
}

fn central_derivative<F: Fn(Complex64) -> Complex64>(f: &F, z: Complex64) -> Complex64 {
    let h = 1e-6 * (1.0 + z.norm());
    (f(z + h) - f(z - h)) / (2.0 * h)
}

fn newton<F: Fn(Complex64) -> Complex64>(f: &F, rect: &Rectangle, m: u32, tol: f64) -> Option<Complex64> {
    let mut z = rect.center();
    for _ in 0..60 {
        let fz = f(z);
        if fz == Complex64::new(0.0, 0.0) {
            return Some(z);
        }
        let step = fz / central_derivative(f, z) * m as f64;
        if !step.re.is_finite() || !step.im.is_finite() {
            return None;
        }
        z -= step;
        if !rect.contains(z) {
            return None;
        }
        if step.norm() < tol {
            return Some(z);
        }
    }
    None
}

const SPLITS: [f64; 4] = [0.5, 0.4713, 0.5319, 0.4407];

/// Zeros of `f` inside `rect` (which must contain no poles), located by
/// subdividing until each box holds one zero cluster and refining by Newton
/// iteration with the counted multiplicity.
pub fn locate_zeros<F>(f: &F, rect: Rectangle, tol: f64, opts: &WindingOptions) -> Result<Vec<LocatedZero>, ContourError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let (n, r) = perturbed(f, rect, opts)?;
    let mut out = Vec::new();
    locate_in(f, r, n, tol, opts, &mut out)?;
    out.sort_by(|a, b| a.z.im.total_cmp(&b.z.im).then(a.z.re.total_cmp(&b.z.re)));
    Ok(out)
}

fn locate_in<F>(
    f: &F,
    rect: Rectangle,
    n: i64,
    tol: f64,
    opts: &WindingOptions,
    out: &mut Vec<LocatedZero>,
) -> Result<(), ContourError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if n <= 0 {
        return Ok(());
    }
    let size = rect.width().max(rect.height());
    if size < 0.25 {
        if let Some(z) = newton(f, &rect, n as u32, tol) {
            let confirmed = n == 1 || {
                let h = (1e3 * tol).max(1e-6);
                Rectangle::new(z.re - h, z.re + h, z.im - h, z.im + h)
                    .ok()
                    .and_then(|small| count_zeros(f, small, opts).ok())
                    == Some(n)
            };
            if confirmed {
                out.push(LocatedZero { z, multiplicity: n as u32, certified_by: rect });
                return Ok(());
            }
        }
    }
    if size < tol {
        return Err(ContourError::NoConvergence(rect));
    }
    for t in SPLITS {
        let (lo, hi) = rect.split(t);
        if let (Ok(a), Ok(b)) = (count_zeros(f, lo, opts), count_zeros(f, hi, opts)) {
            if a + b == n && a >= 0 && b >= 0 {
                locate_in(f, lo, a, tol, opts, out)?;
                return locate_in(f, hi, b, tol, opts, out);
            }
        }
    }
    Err(ContourError::NoConvergence(rect))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn unit() -> Rectangle {
        Rectangle::new(0.0, 2.0, 0.0, 2.0).unwrap()
    }

    #[test]
    fn simple_and_double_zero() {
        let o = WindingOptions::default();
        assert_eq!(count_zeros(&|s: Complex64| s - c(1.0, 1.0), unit(), &o).unwrap(), 1);
        assert_eq!(count_zeros(&|s: Complex64| (s - c(1.0, 1.0)).powi(2), unit(), &o).unwrap(), 2);
        assert_eq!(count_zeros(&|s: Complex64| (s - c(1.0, 1.0)).inv(), unit(), &o).unwrap(), -1);
        assert_eq!(count_zeros(&|s: Complex64| s - c(5.0, 1.0), unit(), &o).unwrap(), 0);
    }

    #[test]
    fn fast_rotation_is_tracked() {
        // exp(20 i s) has no zeros but winds quickly along horizontal edges
        let o = WindingOptions::default();
        let f = |s: Complex64| (c(0.0, 20.0) * s).exp() * (s - c(1.3, 0.4));
        assert_eq!(count_zeros(&f, unit(), &o).unwrap(), 1);
    }

    #[test]
    fn zero_on_edge_fails_then_perturbs() {
        let o = WindingOptions::default();
        let f = |s: Complex64| s - c(1.0, 2.0);
        assert!(matches!(count_zeros(&f, unit(), &o), Err(ContourError::PhaseStep { edge: Some(Edge::Top), .. })));
        assert_eq!(count_zeros_perturbed(&f, unit(), &o).unwrap(), 1);
    }

    #[test]
    fn degenerate_rectangle() {
        assert!(Rectangle::new(0.0, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn locate_quadratic() {
        let o = WindingOptions::default();
        let r = Rectangle::new(-2.0, 2.0, 0.0, 2.0).unwrap();
        let z = locate_zeros(&|s: Complex64| s * s + 1.0, r, 1e-12, &o).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].multiplicity, 1);
        assert!((z[0].z - c(0.0, 1.0)).norm() < 1e-10);
    }

    #[test]
    fn locate_mixed_multiplicities() {
        let o = WindingOptions::default();
        let r = Rectangle::new(-3.0, 3.0, -3.0, 3.0).unwrap();
        let f = |s: Complex64| (s - c(0.5, 0.5)).powi(2) * (s - c(-1.0, 2.0)) * (s - c(0.52, 0.5));
        let z = locate_zeros(&f, r, 1e-12, &o).unwrap();
        let total: u32 = z.iter().map(|z| z.multiplicity).sum();
        assert_eq!(total, 4);
        let dbl = z.iter().find(|z| z.multiplicity == 2).unwrap();
        assert!((dbl.z - c(0.5, 0.5)).norm() < 1e-6);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn count_is_additive(t in 0.2f64..0.8, x in 0.05f64..1.95, y in 0.05f64..1.95) {
            let o = WindingOptions::default();
            let f = move |s: Complex64| (s - c(x, y)) * (s - c(0.77, 1.31)) * (s - c(3.0, 1.0));
            let r = unit();
            let (a, b) = r.split(t);
            let whole = count_zeros(&f, r, &o).unwrap();
            let pa = count_zeros(&f, a, &o).unwrap();
            let pb = count_zeros(&f, b, &o).unwrap();
            prop_assert_eq!(whole, 2);
            prop_assert_eq!(pa + pb, whole);
        }
    }
}
