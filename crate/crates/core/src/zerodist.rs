//! Zeros of `L*` to the right of the critical line and the statistics built
//! from them: the sums `F_1(alpha, T)` and `F(alpha, T)`, Littlewood's
//! formula, the smoothed critical-line integral and the scattering phase.

pub use crate::contour::{count_zeros, locate_zeros, ContourError, Rectangle, WindingOptions};
use crate::numeric::quad::{integrate_with_breaks, QuadOptions, QuadratureError};
use crate::scattering::{ScatteringError, ScatteringModel};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZerodistError {
    #[error(transparent)]
    Contour(#[from] ContourError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Scattering(#[from] ScatteringError),
    #[error("{0} zeros of L* found in the strip |Im s| <= 1")]
    LowZeros(i64),
    #[error("census holds {found} zeros with multiplicity, rectangle count is {counted}")]
    CensusMismatch { found: i64, counted: i64 },
    #[error("zeros are certified only up to {complete_to}, need {needed}")]
    Incomplete { complete_to: f64, needed: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A zero `beta + i gamma` with `gamma >= 0`; its conjugate is implied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroRecord {
    pub beta: f64,
    pub gamma: f64,
    pub multiplicity: u32,
    pub certified_by: Rectangle,
    pub precision: String,
}

impl ZeroRecord {
    pub fn synthetic(beta: f64, gamma: f64, multiplicity: u32) -> Self {
        let certified_by = Rectangle { re_min: beta, re_max: beta, im_min: gamma, im_max: gamma };
        ZeroRecord { beta, gamma, multiplicity, certified_by, precision: "synthetic".into() }
    }
}

/// Zeros of `L*` in `(d-1)/2 < beta <= d`, `0 <= gamma <= T`, complete up to `complete_to`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Census {
    pub zeros: Vec<ZeroRecord>,
    pub rectangle: Rectangle,
    pub rectangle_count: i64,
    pub complete_to: f64,
}

impl Census {
    pub fn total_multiplicity(&self) -> i64 {
        self.zeros.iter().map(|z| z.multiplicity as i64).sum()
    }
}

const LEFT_OFFSET: f64 = 1e-6;

/// Locates every zero of `L*` with `beta > (d-1)/2` and `0 < gamma <= t_max`.
///
/// The band `|gamma| <= 1` is checked separately: its winding must equal
/// minus the number of real poles, so it holds no zeros.
pub fn l_star_census(
    model: &ScatteringModel,
    t_max: f64,
    tol: f64,
    opts: &WindingOptions,
) -> Result<Census, ZerodistError> {
    if model.is_series() {
        return Err(ZerodistError::Precondition("the census needs the continued (closed-form) L*".into()));
    }
    let f = |s: Complex64| model.l_star(s).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let left = model.critical_line() + LEFT_OFFSET;
    let right = model.d as f64;
    let low = Rectangle::new(left, right, -1.0, 1.0)?;
    let low_count = crate::contour::count_zeros_perturbed(&f, low, opts)?;
    let poles = model.poles.len() as i64;
    if low_count + poles != 0 {
        return Err(ZerodistError::LowZeros(low_count + poles));
    }
    let precision = model.profile.tag();
    if t_max <= 1.0 {
        let rectangle = Rectangle::new(left, right, 1.0, 1.0 + f64::EPSILON.sqrt())?;
        return Ok(Census { zeros: vec![], rectangle, rectangle_count: 0, complete_to: t_max.max(0.0) });
    }
    let rect = Rectangle::new(left, right, 1.0, t_max)?;
    let (rectangle_count, used) = crate::contour::perturbed(&f, rect, opts)?;
    let located = locate_zeros(&f, used, tol, opts)?;
    let zeros: Vec<ZeroRecord> = located
        .into_iter()
        .map(|z| ZeroRecord {
            beta: z.z.re,
            gamma: z.z.im,
            multiplicity: z.multiplicity,
            certified_by: z.certified_by,
            precision: precision.clone(),
        })
        .collect();
    let found = zeros.iter().map(|z| z.multiplicity as i64).sum();
    if found != rectangle_count {
        return Err(ZerodistError::CensusMismatch { found, counted: rectangle_count });
    }
    // the top edge may have been pushed upward; completeness holds to the requested height
    Ok(Census { zeros, rectangle: used, rectangle_count, complete_to: t_max })
}

fn weighted_sum(zeros: &[ZeroRecord], alpha: f64, t: f64, weight: impl Fn(f64) -> f64) -> f64 {
    zeros
        .iter()
        .filter(|z| z.beta > alpha && z.gamma.abs() <= t)
        .map(|z| {
            let mirror = if z.gamma > 0.0 { 2.0 } else { 1.0 };
            mirror * z.multiplicity as f64 * weight(z.gamma.abs()) * (z.beta - alpha)
        })
        .sum::<f64>()
        + 0.0
}

/// `F_1(alpha, T) = sum_{|gamma| <= T, beta > alpha} (beta - alpha)`, each
/// record with `gamma > 0` counted together with its conjugate.
pub fn f1_sum(zeros: &[ZeroRecord], alpha: f64, t: f64) -> f64 {
    weighted_sum(zeros, alpha, t, |_| 1.0)
}

/// `F(alpha, T) = sum_{|gamma| <= T, beta > alpha} (T - |gamma|)(beta - alpha)`.
pub fn f_smoothed_sum(zeros: &[ZeroRecord], alpha: f64, t: f64) -> f64 {
    weighted_sum(zeros, alpha, t, |g| t - g)
}

/// `F(T) - F(T-1) <= F_1(T) <= F(T+1) - F(T)`.
pub fn sandwich_check(f_prev: f64, f_t: f64, f_next: f64, f1: f64) -> bool {
    let slack = 1e-12 * (1.0 + f1.abs());
    f_t - f_prev <= f1 + slack && f1 <= f_next - f_t + slack
}

/// Local minima of `|f(x + it)|` for `t` in `[a, b]`, refined by golden-section search.
fn modulus_minima<F>(f: &F, x: f64, a: f64, b: f64, threshold: f64) -> Vec<f64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let n = ((b - a) / 0.01).ceil().max(2.0) as usize;
    let h = (b - a) / n as f64;
    // endpoints are quadrature breaks already and may be singular
    let vals: Vec<f64> = (0..=n)
        .into_par_iter()
        .map(|k| if k == 0 || k == n { f64::INFINITY } else { f(Complex64::new(x, a + k as f64 * h)).norm() })
        .collect();
    let g = |t: f64| f(Complex64::new(x, t)).norm();
    let mut out = Vec::new();
    for k in 1..n {
        if vals[k] <= vals[k - 1] && vals[k] <= vals[k + 1] && vals[k] < threshold {
            let (mut lo, mut hi) = (a + (k - 1) as f64 * h, a + (k + 1) as f64 * h);
            let r = 0.5 * (5f64.sqrt() - 1.0);
            let mut c = hi - r * (hi - lo);
            let mut d = lo + r * (hi - lo);
            let (mut gc, mut gd) = (g(c), g(d));
            while hi - lo > 1e-13 * (1.0 + hi.abs()) {
                if gc < gd {
                    hi = d;
                    d = c;
                    gd = gc;
                    c = hi - r * (hi - lo);
                    gc = g(c);
                } else {
                    lo = c;
                    c = d;
                    gc = gd;
                    d = lo + r * (hi - lo);
                    gd = g(d);
                }
            }
            out.push(0.5 * (lo + hi));
        }
    }
    out
}

fn line_breaks<F>(f: &F, x: f64, t: f64) -> Vec<f64>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let mut breaks = vec![0.0];
    breaks.extend(modulus_minima(f, x, 0.0, t, 0.05).into_iter().filter(|&m| m > 0.0 && m < t));
    breaks.push(t);
    breaks
}

fn quad_opts() -> QuadOptions {
    QuadOptions { abs_tol: 1e-9, rel_tol: 1e-11, max_panels: 50_000 }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LittlewoodParts {
    /// `(1/2 pi) int_{-T}^{T} log|f(alpha + it)| dt`.
    pub vertical: f64,
    /// `(1/pi) int_alpha^infinity arg f(sigma + iT) d sigma`.
    pub horizontal: f64,
    pub pole_sum: f64,
    pub total: f64,
    pub sigma_cut: f64,
    pub error_bound: f64,
}

/// Right side of Littlewood's formula for a function with conjugate-symmetric
/// values, `f(conj s) = conj f(s)`, and `f -> 1` as `Re s -> infinity`:
/// the result equals `F_1(alpha, T)` when `T` is not the ordinate of a zero.
pub fn littlewood_rhs<F>(
    f: &F,
    alpha: f64,
    t: f64,
    poles: &[f64],
    opts: &WindingOptions,
) -> Result<LittlewoodParts, ZerodistError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let breaks = line_breaks(f, alpha, t);
    let v = integrate_with_breaks(|y| f(Complex64::new(alpha, y)).norm().ln(), &breaks, quad_opts())?;
    let vertical = v.value / PI;

    let mut sigma_cut = alpha.max(1.0) + 1.0;
    let mut deviation = (f(Complex64::new(sigma_cut, t)) - 1.0).norm();
    while deviation >= 1e-12 {
        sigma_cut += 1.0;
        if sigma_cut > alpha + 400.0 {
            return Err(ZerodistError::Precondition("L* does not approach 1 along the horizontal line".into()));
        }
        deviation = (f(Complex64::new(sigma_cut, t)) - 1.0).norm();
    }
    let (h20, h10) = horizontal_arg_integral(f, alpha, sigma_cut, t, opts)?;
    let horizontal = h20 / PI;
    let tail = 2.0 * deviation / std::f64::consts::LN_2;
    let pole_sum: f64 = poles.iter().filter(|&&p| p > alpha).map(|p| p - alpha).sum();
    Ok(LittlewoodParts {
        vertical,
        horizontal,
        pole_sum,
        total: vertical + horizontal + pole_sum,
        sigma_cut,
        error_bound: v.error / PI + ((h20 - h10).abs() + tail) / PI,
    })
}

/// `int_alpha^sigma_cut arg f(sigma + iT) d sigma`, with the argument tracked
/// continuously leftward from `sigma_cut`, by 20- and 10-point composite rules.
fn horizontal_arg_integral<F>(f: &F, alpha: f64, sigma_cut: f64, t: f64, opts: &WindingOptions) -> Result<(f64, f64), ZerodistError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    let panels = ((sigma_cut - alpha) / 0.25).ceil() as usize;
    let w = (sigma_cut - alpha) / panels as f64;
    let mut results = [0.0; 2];
    for (slot, n) in [20usize, 10].into_iter().enumerate() {
        let (x, wt) = crate::numeric::quad::gauss_legendre(n);
        let mut nodes: Vec<(f64, f64)> = Vec::with_capacity(panels * n);
        for p in 0..panels {
            let a = alpha + p as f64 * w;
            for (xi, wi) in x.iter().zip(&wt) {
                nodes.push((a + 0.5 * w * (xi + 1.0), 0.5 * w * wi));
            }
        }
        nodes.sort_by(|a, b| b.0.total_cmp(&a.0));
        let start = Complex64::new(sigma_cut, t);
        let mut arg = f(start).arg();
        let mut prev = start;
        let mut sum = 0.0;
        for (sigma, weight) in nodes {
            let z = Complex64::new(sigma, t);
            arg += crate::contour::phase_change(f, prev, z, opts)?;
            prev = z;
            sum += weight * arg;
        }
        results[slot] = sum;
    }
    Ok((results[0], results[1]))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormConstants {
    /// Coefficient of `T^2 log T`: `kappa (d-1) / (4 pi)`.
    pub leading: f64,
    pub b_gamma: f64,
    pub c_gamma: f64,
    /// `(4 log a_Gamma - kappa (d - 1 + 2 nu log pi)) / (8 pi)`, kept for comparison.
    pub b_gamma_uncorrected: f64,
    /// Linear coefficient of the main term of `F_1((d-1)/2, T)`: `2 B_Gamma + kappa (d-1)/(4 pi)`.
    pub a_gamma_linear: f64,
}

impl ClosedFormConstants {
    pub fn model(&self, t: f64) -> f64 {
        self.leading * t * t * t.ln() + self.b_gamma * t * t + self.c_gamma * t
    }
}

/// Constants of `(1/2pi) int (T - |t|) log|L*((d-1)/2 + it)| dt
/// = leading T^2 log T + B T^2 + C T + O(log T)`, with `d - 1 = 2m + nu`.
///
/// The `T^2` coefficient follows from `|Gamma(1/2 + it)/Gamma(it)|^2 = t tanh(pi t)`
/// and `int_0^T (T - t) log t dt = T^2 log T / 2 - 3 T^2 / 4`.
pub fn closed_form_constants(d: usize, kappa: usize, a_gamma: f64) -> ClosedFormConstants {
    let dm1 = d as f64 - 1.0;
    let m = ((d - 1) / 2) as f64;
    let nu = ((d - 1) % 2) as f64;
    let k = kappa as f64;
    let leading = k * dm1 / (4.0 * PI);
    let b_gamma = (4.0 * a_gamma.ln() - 3.0 * k * dm1) / (8.0 * PI);
    ClosedFormConstants {
        leading,
        b_gamma,
        c_gamma: k * (2.0 * m * (m + nu - 1.0) - nu) / 16.0,
        b_gamma_uncorrected: (4.0 * a_gamma.ln() - k * (dm1 + 2.0 * nu * PI.ln())) / (8.0 * PI),
        a_gamma_linear: 2.0 * b_gamma + k * dm1 / (4.0 * PI),
    }
}

/// `(1/2 pi) int_{-T}^{T} (T - |t|) log|f(x + it)| dt` for conjugate-symmetric `f`.
pub fn smoothed_critical_integral<F>(f: &F, x: f64, t: f64) -> Result<f64, ZerodistError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if t < 5.0 {
        return Err(ZerodistError::Precondition(format!("T = {t} below 5")));
    }
    let breaks = line_breaks(f, x, t);
    let v = integrate_with_breaks(|y| (t - y) * f(Complex64::new(x, y)).norm().ln(), &breaks, quad_opts())?;
    Ok(v.value / PI)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseIntegral {
    /// `-(1/2 pi) int_{-T}^{T} (phi'/phi)(x + it) dt`, tracked over the full segment.
    pub full: f64,
    /// The same from `[0, T]` doubled.
    pub doubled_half: f64,
}

/// Winding of `phi` along the critical segment. On that line `phi = e^{i Theta}`
/// and `phi'/phi = Theta'`, so the integral is `-(Theta(T) - Theta(-T)) / (2 pi)`.
pub fn phase_integral<F>(phi: &F, x: f64, t: f64, opts: &WindingOptions) -> Result<PhaseIntegral, ZerodistError>
where
    F: Fn(Complex64) -> Complex64 + Sync,
{
    if t == 0.0 {
        return Ok(PhaseIntegral { full: 0.0, doubled_half: 0.0 });
    }
    let a = Complex64::new(x, -t);
    let m = Complex64::new(x, 0.0);
    let b = Complex64::new(x, t);
    let full = -crate::contour::phase_change(phi, a, b, opts)? / (2.0 * PI);
    let doubled_half = -crate::contour::phase_change(phi, m, b, opts)? / PI;
    Ok(PhaseIntegral { full, doubled_half })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MainTermRow {
    pub t: f64,
    pub f1: f64,
    pub model: f64,
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MainTermFit {
    pub leading: f64,
    pub a_fitted: f64,
    pub rows: Vec<MainTermRow>,
    pub sup_residual_over_log: f64,
}

/// Fits `F_1((d-1)/2, T) = (kappa (d-1) / 2pi) T log T + A T` over `t_grid`,
/// with the leading coefficient fixed.
pub fn verify_main_term(
    census: &Census,
    d: usize,
    kappa: usize,
    t_grid: &[f64],
) -> Result<MainTermFit, ZerodistError> {
    let needed = t_grid.iter().cloned().fold(0.0, f64::max);
    if needed > census.complete_to || t_grid.is_empty() {
        return Err(ZerodistError::Incomplete { complete_to: census.complete_to, needed });
    }
    let leading = kappa as f64 * (d as f64 - 1.0) / (2.0 * PI);
    let alpha = 0.5 * (d as f64 - 1.0);
    let f1: Vec<f64> = t_grid.iter().map(|&t| f1_sum(&census.zeros, alpha, t)).collect();
    let num: f64 = t_grid.iter().zip(&f1).map(|(&t, &f)| t * (f - leading * t * t.ln())).sum();
    let den: f64 = t_grid.iter().map(|t| t * t).sum();
    let a_fitted = num / den;
    let rows: Vec<MainTermRow> = t_grid
        .iter()
        .zip(&f1)
        .map(|(&t, &f)| {
            let model = leading * t * t.ln() + a_fitted * t;
            MainTermRow { t, f1: f, model, residual: f - model }
        })
        .collect();
    let sup_residual_over_log = rows.iter().map(|r| r.residual.abs() / r.t.ln()).fold(0.0, f64::max);
    Ok(MainTermFit { leading, a_fitted, rows, sup_residual_over_log })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StripRow {
    pub t: f64,
    pub f1: f64,
    pub scale: f64,
    pub ratio: f64,
}

/// `F_1(alpha, T) / (T min(log(1/(alpha - alpha_0)), log log T))` with `alpha_0 = d - 5/4`.
pub fn verify_strip_concentration(
    zeros: &[ZeroRecord],
    d: usize,
    alpha: f64,
    t_grid: &[f64],
) -> Result<Vec<StripRow>, ZerodistError> {
    let alpha0 = d as f64 - 1.25;
    if alpha < alpha0 {
        return Err(ZerodistError::Precondition(format!("alpha = {alpha} below alpha_0 = {alpha0}")));
    }
    t_grid
        .iter()
        .map(|&t| {
            if t <= std::f64::consts::E {
                return Err(ZerodistError::Precondition(format!("T = {t} too small for log log T")));
            }
            let gap = alpha - alpha0;
            let first = if gap > 0.0 { (1.0 / gap).ln() } else { f64::INFINITY };
            let scale = t * first.min(t.ln().ln());
            let f1 = f1_sum(zeros, alpha, t);
            Ok(StripRow { t, f1, scale, ratio: f1 / scale })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::LatticeId;
    use crate::specfun::PrecisionProfile;

    fn opts() -> WindingOptions {
        WindingOptions::default()
    }

    #[test]
    fn sums_on_a_single_zero() {
        let z = vec![ZeroRecord::synthetic(0.75, 7.0674, 1)];
        assert!((f1_sum(&z, 0.5, 10.0) - 0.5).abs() < 1e-15);
        assert!((f_smoothed_sum(&z, 0.5, 10.0) - 2.0 * (10.0 - 7.0674) * 0.25).abs() < 1e-12);
        assert_eq!(f1_sum(&z, 0.8, 10.0), 0.0);
        assert_eq!(f_smoothed_sum(&z, 0.5, 5.0), 0.0);
        assert_eq!(f1_sum(&[], 0.5, 10.0), 0.0);
        assert!(sandwich_check(0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn sandwich_detects_a_deleted_zero() {
        let zeros: Vec<ZeroRecord> = [3.2, 5.5, 7.9, 8.1].iter().map(|&g| ZeroRecord::synthetic(0.8, g, 1)).collect();
        let t = 9.0;
        let f = |t: f64| f_smoothed_sum(&zeros, 0.5, t);
        assert!(sandwich_check(f(t - 1.0), f(t), f(t + 1.0), f1_sum(&zeros, 0.5, t)));
        let fewer = &zeros[1..];
        assert!(!sandwich_check(f(t - 1.0), f(t), f(t + 1.0), f1_sum(fewer, 0.5, t)));
    }

    #[test]
    fn sl2z_census_maps_zeta_zeros() {
        let m = ScatteringModel::closed_form(LatticeId::SL2Z, PrecisionProfile::default());
        let census = l_star_census(&m, 30.0, 1e-10, &opts()).unwrap();
        let zeta = crate::specfun::zeta_zeros_up_to(60.0, &PrecisionProfile::default()).unwrap();
        assert_eq!(census.zeros.len(), zeta.len());
        for (z, r) in census.zeros.iter().zip(&zeta) {
            assert!((z.beta - 0.75).abs() < 1e-6 && (z.gamma - r.ordinate / 2.0).abs() < 1e-6);
        }
        let first = l_star_census(&m, 10.0, 1e-10, &opts()).unwrap();
        assert_eq!(first.zeros.len(), 1);
        assert!((first.zeros[0].gamma - 7.0674).abs() < 1e-3);
    }

    #[test]
    fn littlewood_matches_zero_sum() {
        let m = ScatteringModel::closed_form(LatticeId::SL2Z, PrecisionProfile::default());
        let census = l_star_census(&m, 30.0, 1e-10, &opts()).unwrap();
        let f = |s: Complex64| m.l_star(s).unwrap();
        for alpha in [0.6, 0.75] {
            let rhs = littlewood_rhs(&f, alpha, 30.0, &m.poles, &opts()).unwrap();
            let lhs = f1_sum(&census.zeros, alpha, 30.0);
            assert!((rhs.total - lhs).abs() < 1e-3, "alpha {alpha}: {rhs:?} vs {lhs}");
        }
        let far = littlewood_rhs(&f, 5.0, 30.0, &m.poles, &opts()).unwrap();
        assert!(far.total.abs() < 1e-6, "{far:?}");
    }

    #[test]
    fn constants_for_the_trivial_case() {
        let c = closed_form_constants(2, 0, 1.0);
        assert_eq!(c.model(17.0), 0.0);
        let g = closed_form_constants(3, 1, 1.0 / PI);
        assert_eq!(g.c_gamma, 0.0);
        let s = closed_form_constants(2, 1, 1.0 / PI.sqrt());
        assert!((s.a_gamma_linear + (1.0 + PI.ln()) / (2.0 * PI)).abs() < 1e-14);
    }

    #[test]
    fn smoothed_integral_tracks_the_model() {
        let m = ScatteringModel::closed_form(LatticeId::SL2Z, PrecisionProfile::default());
        let f = |s: Complex64| m.l_star(s).unwrap();
        let c = closed_form_constants(2, 1, m.a_gamma);
        let limit = 7.0 * 1.202_056_903_159_594_2 / (32.0 * PI.powi(3));
        for t in [20.0, 40.0] {
            let diff = smoothed_critical_integral(&f, 0.5, t).unwrap() - c.model(t);
            assert!((diff - limit).abs() < 1e-6, "T = {t}: {diff}");
        }
        let k = ScatteringModel::closed_form(LatticeId::SL2ZiGaussian, PrecisionProfile::default());
        let fk = |s: Complex64| k.l_star(s).unwrap();
        let ck = closed_form_constants(3, 1, k.a_gamma);
        let diff = smoothed_critical_integral(&fk, 1.0, 20.0).unwrap() - ck.model(20.0);
        assert!(diff.abs() < 1e-6, "{diff}");
    }

    #[test]
    fn phase_integral_symmetry() {
        let m = ScatteringModel::closed_form(LatticeId::SL2Z, PrecisionProfile::default());
        let phi = |s: Complex64| m.scattering_determinant(s).unwrap();
        let p = phase_integral(&phi, 0.5, 30.0, &opts()).unwrap();
        assert!((p.full - p.doubled_half).abs() < 1e-8);
        assert_eq!(phase_integral(&phi, 0.5, 0.0, &opts()).unwrap().full, 0.0);
        let zeta = crate::specfun::zeta_zeros_up_to(60.0, &PrecisionProfile::default()).unwrap();
        assert!((p.full - 2.0 * zeta.len() as f64).abs() < 2.0 * 30f64.ln(), "{p:?}");
    }

    #[test]
    fn main_term_fit_recovers_a_synthetic_curve() {
        // zeros chosen so that F_1(1/2, T) is exact on the grid
        let leading = 1.0 / (2.0 * PI);
        let a = -0.3;
        let grid = [20.0, 40.0, 60.0];
        let mut zeros = Vec::new();
        let mut prev = 0.0;
        for &t in &grid {
            let target = leading * t * t.ln() + a * t;
            zeros.push(ZeroRecord::synthetic(0.5 + (target - prev) / 2.0, t - 0.5, 1));
            prev = target;
        }
        let census = Census { zeros, rectangle: Rectangle::new(0.5, 2.0, 1.0, 60.0).unwrap(), rectangle_count: 3, complete_to: 60.0 };
        let fit = verify_main_term(&census, 2, 1, &grid).unwrap();
        assert!((fit.a_fitted - a).abs() < 1e-12);
        assert!(fit.sup_residual_over_log < 1e-12);
        assert!(verify_main_term(&census, 2, 1, &[80.0]).is_err());
    }

    #[test]
    fn strip_table() {
        let zeros = vec![ZeroRecord::synthetic(0.9, 10.0, 1)];
        let rows = verify_strip_concentration(&zeros, 2, 0.75, &[25.0, 50.0]).unwrap();
        assert!(rows.iter().all(|r| r.ratio.is_finite() && r.ratio > 0.0));
        assert!((rows[0].scale - 25.0 * 25f64.ln().ln()).abs() < 1e-12);
        assert!(verify_strip_concentration(&zeros, 2, 0.7, &[25.0]).is_err());
        let none = verify_strip_concentration(&[], 2, 0.8, &[25.0, 50.0, 100.0]).unwrap();
        assert!(none.iter().all(|r| r.ratio == 0.0));
    }
}
