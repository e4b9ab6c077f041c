//! Special functions on the complex plane.
//!
//! Log-gamma uses the Stirling series after shifting the argument to
//! `|z| >= 16`, with reflection for `Re z < 1/2`. Zeta-type functions are
//! evaluated by Euler–Maclaurin summation of Hurwitz zeta; Bernoulli
//! coefficients come from `B_2k / (2k)! = (-1)^{k+1} 2 zeta(2k) / (2 pi)^{2k}`.

use crate::contour::{self, ContourError, Rectangle, WindingOptions};
use crate::numeric::{ComplexAccumulator, WorkingPrecision};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecfunError {
    #[error("pole at s = {0}")]
    Pole(Complex64),
    #[error("height {0} exceeds the supported range T <= {1}")]
    OutOfRange(f64, f64),
    #[error("zero count mismatch up to T = {t}: {sign_changes} sign changes, {argument_principle} by argument principle")]
    CountMismatch { t: f64, sign_changes: usize, argument_principle: i64 },
    #[error(transparent)]
    Contour(#[from] ContourError),
    #[error("cache i/o: {0}")]
    Cache(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionProfile {
    pub working_precision: WorkingPrecision,
    pub euler_maclaurin_terms: usize,
    pub series_cutoff: usize,
}

impl Default for PrecisionProfile {
    fn default() -> Self {
        PrecisionProfile { working_precision: WorkingPrecision::Double, euler_maclaurin_terms: 24, series_cutoff: 10 }
    }
}

impl PrecisionProfile {
    pub fn double_double() -> Self {
        PrecisionProfile { working_precision: WorkingPrecision::DoubleDouble, euler_maclaurin_terms: 30, series_cutoff: 16 }
    }

    pub fn validate(&self) -> Result<(), String> {
        if self.euler_maclaurin_terms < 4 {
            return Err("euler_maclaurin_terms must be >= 4".into());
        }
        if self.euler_maclaurin_terms > MAX_EM_TERMS {
            return Err(format!("euler_maclaurin_terms must be <= {MAX_EM_TERMS}"));
        }
        if self.series_cutoff < 10 {
            return Err("series_cutoff must be >= 10".into());
        }
        Ok(())
    }

    pub fn tag(&self) -> String {
        format!("{}-em{}-n{}", self.working_precision.tag(), self.euler_maclaurin_terms, self.series_cutoff)
    }
}

const MAX_EM_TERMS: usize = 40;

/// `B_{2k}/(2k)!` for `k = 1..=MAX_EM_TERMS` (index 0 is k = 1).
fn bernoulli_over_factorial() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        (1..=MAX_EM_TERMS)
            .map(|k| {
                let p = 2 * k;
                let zeta_even = if k == 1 { PI * PI / 6.0 } else { zeta_even_direct(p) };
                let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
                sign * 2.0 * zeta_even / (2.0 * PI).powi(p as i32)
            })
            .collect()
    })
}

/// zeta(p) for even p >= 4 by direct summation with a three-term tail.
fn zeta_even_direct(p: usize) -> f64 {
    let n = 2000usize;
    let pf = p as f64;
    let mut s = 0.0;
    for k in (1..n).rev() {
        s += (k as f64).powf(-pf);
    }
    let nf = n as f64;
    s + nf.powf(1.0 - pf) / (pf - 1.0) + 0.5 * nf.powf(-pf) + pf * nf.powf(-pf - 1.0) / 12.0
}

/// Bernoulli numbers B_{2k} for the Stirling series, k = 1..=10.
const STIRLING_B: [f64; 10] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
];

fn is_nonpositive_integer(s: Complex64) -> bool {
    s.im == 0.0 && s.re <= 0.0 && s.re.fract() == 0.0
}

/// Log-gamma. For `Re s >= 1/2` this is the principal branch (analytic on the
/// right half-plane); to the left it is a branch produced by reflection.
pub fn ln_gamma(s: Complex64) -> Result<Complex64, SpecfunError> {
    if is_nonpositive_integer(s) {
        return Err(SpecfunError::Pole(s));
    }
    if s.re < 0.5 {
        let sin = (Complex64::from(PI) * s).sin();
        let rest = ln_gamma(Complex64::new(1.0, 0.0) - s)?;
        return Ok(Complex64::from(PI.ln()) - sin.ln() - rest);
    }
    Ok(ln_gamma_right(s))
}

fn ln_gamma_right(s: Complex64) -> Complex64 {
    let mut z = s;
    let mut shift = Complex64::new(0.0, 0.0);
    while z.norm() < 16.0 {
        shift += z.ln();
        z += 1.0;
    }
    let zinv = z.inv();
    let zinv2 = zinv * zinv;
    let mut corr = Complex64::new(0.0, 0.0);
    let mut pow = zinv;
    for (k, b) in STIRLING_B.iter().enumerate() {
        let n = 2.0 * (k as f64 + 1.0);
        corr += pow * (b / (n * (n - 1.0)));
        pow *= zinv2;
    }
    (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln() + corr - shift
}

pub fn gamma(s: Complex64) -> Result<Complex64, SpecfunError> {
    Ok(ln_gamma(s)?.exp())
}

/// `Gamma(a) / Gamma(b)` evaluated in log space.
pub fn gamma_ratio(a: Complex64, b: Complex64) -> Result<Complex64, SpecfunError> {
    Ok((ln_gamma(a)? - ln_gamma(b)?).exp())
}

/// `(e^z - 1) / z`, accurate near zero.
fn exprel(z: Complex64) -> Complex64 {
    if z.norm() < 1e-3 {
        Complex64::new(1.0, 0.0) + z / 2.0 + z * z / 6.0 + z * z * z / 24.0
    } else {
        (z.exp() - 1.0) / z
    }
}

fn em_cutoff(s: Complex64, profile: &PrecisionProfile) -> usize {
    let needed = (s.norm() + 2.0 * profile.euler_maclaurin_terms as f64) / PI;
    profile.series_cutoff.max(needed.ceil() as usize)
}

/// Euler–Maclaurin correction terms at `w = N + a`, without the integral term.
fn em_tail(s: Complex64, w: f64, profile: &PrecisionProfile) -> Complex64 {
    let lw = w.ln();
    let w_s = (-s * lw).exp();
    let mut total = 0.5 * w_s;
    // term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * w^{-s-2k+1}
    let mut poch_pow = s * w_s / w;
    let b = bernoulli_over_factorial();
    for (k, bk) in b.iter().enumerate().take(profile.euler_maclaurin_terms) {
        let term = poch_pow * *bk;
        total += term;
        if term.norm() < 1e-18 * total.norm() {
            break;
        }
        let j = 2.0 * (k as f64 + 1.0);
        poch_pow *= (s + (j - 1.0)) * (s + j) / (w * w);
    }
    total
}

fn partial_sum(s: Complex64, a: f64, n: usize, profile: &PrecisionProfile) -> Complex64 {
    let mut acc = ComplexAccumulator::new(profile.working_precision);
    for k in 0..n {
        acc.add((-s * (k as f64 + a).ln()).exp());
    }
    acc.value()
}

/// Hurwitz zeta `sum_{n>=0} (n + a)^{-s}`, `a > 0`.
pub fn hurwitz_zeta_with(s: Complex64, a: f64, profile: &PrecisionProfile) -> Result<Complex64, SpecfunError> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(SpecfunError::Pole(s));
    }
    let n = em_cutoff(s, profile);
    let w = n as f64 + a;
    let head = partial_sum(s, a, n, profile);
    let integral = (Complex64::new(1.0, 0.0) - s).scale(w.ln()).exp() / (s - 1.0);
    Ok(head + integral + em_tail(s, w, profile))
}

/// `zeta(s, a) - zeta(s, b)`, analytic at `s = 1`.
pub fn hurwitz_difference_with(s: Complex64, a: f64, b: f64, profile: &PrecisionProfile) -> Complex64 {
    let n = em_cutoff(s, profile);
    let (wa, wb) = (n as f64 + a, n as f64 + b);
    let head = partial_sum(s, a, n, profile) - partial_sum(s, b, n, profile);
    // (wa^{1-s} - wb^{1-s}) / (s - 1)
    let u = Complex64::new(1.0, 0.0) - s;
    let delta = wa.ln() - wb.ln();
    let integral = -(u * wb.ln()).exp() * delta * exprel(u * delta);
    head + integral + em_tail(s, wa, profile) - em_tail(s, wb, profile)
}

pub fn riemann_zeta_with(s: Complex64, profile: &PrecisionProfile) -> Result<Complex64, SpecfunError> {
    hurwitz_zeta_with(s, 1.0, profile)
}

pub fn riemann_zeta(s: Complex64) -> Result<Complex64, SpecfunError> {
    riemann_zeta_with(s, &PrecisionProfile::default())
}

/// Dirichlet L-function of the non-principal character mod 4.
pub fn dirichlet_l_chi4_with(s: Complex64, profile: &PrecisionProfile) -> Complex64 {
    (-s * 4f64.ln()).exp() * hurwitz_difference_with(s, 0.25, 0.75, profile)
}

pub fn dirichlet_l_chi4(s: Complex64) -> Complex64 {
    dirichlet_l_chi4_with(s, &PrecisionProfile::default())
}

/// Dedekind zeta of Q(i), `zeta(s) L(s, chi_-4)`.
pub fn dedekind_zeta_qi_with(s: Complex64, profile: &PrecisionProfile) -> Result<Complex64, SpecfunError> {
    Ok(riemann_zeta_with(s, profile)? * dirichlet_l_chi4_with(s, profile))
}

pub fn dedekind_zeta_qi(s: Complex64) -> Result<Complex64, SpecfunError> {
    dedekind_zeta_qi_with(s, &PrecisionProfile::default())
}

/// Riemann–Siegel theta, `arg Gamma(1/4 + it/2) - (t/2) log pi`.
pub fn hardy_theta(t: f64) -> f64 {
    ln_gamma_right(Complex64::new(0.25, 0.5 * t)).im - 0.5 * t * PI.ln()
}

/// `e^{i theta(t)} zeta(1/2 + it)` before discarding the (vanishing) imaginary part.
pub fn hardy_z_complex_with(t: f64, profile: &PrecisionProfile) -> Complex64 {
    let z = riemann_zeta_with(Complex64::new(0.5, t), profile).expect("critical line avoids the pole");
    Complex64::from_polar(1.0, hardy_theta(t)) * z
}

pub fn hardy_z_with(t: f64, profile: &PrecisionProfile) -> f64 {
    hardy_z_complex_with(t, profile).re
}

pub fn hardy_z(t: f64) -> f64 {
    hardy_z_with(t, &PrecisionProfile::default())
}

/// Largest height accepted by [`zeta_zeros_up_to`].
pub const MAX_ZERO_HEIGHT: f64 = 200.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaZero {
    pub ordinate: f64,
    pub refinement_error: f64,
}

const SCAN_STEP: f64 = 0.02;
const REFINE_TOL: f64 = 1e-11;

/// Zeros `1/2 + i gamma` of zeta with `0 < gamma <= t_max`, certified by sign
/// changes of the Hardy function and cross-checked against an
/// argument-principle count on `[-1, 2] x [1, t_max]`.
pub fn zeta_zeros_up_to(t_max: f64, profile: &PrecisionProfile) -> Result<Vec<ZetaZero>, SpecfunError> {
    if t_max > MAX_ZERO_HEIGHT {
        return Err(SpecfunError::OutOfRange(t_max, MAX_ZERO_HEIGHT));
    }
    if t_max <= 1.0 {
        return Ok(Vec::new());
    }
    let steps = ((t_max - 1.0) / SCAN_STEP).ceil() as usize;
    let grid: Vec<f64> = (0..=steps).map(|k| (1.0 + k as f64 * SCAN_STEP).min(t_max)).collect();
    let values: Vec<f64> = {
        use rayon::prelude::*;
        grid.par_iter().map(|&t| hardy_z_with(t, profile)).collect()
    };
    let mut zeros = Vec::new();
    for k in 0..grid.len() - 1 {
        let (a, b) = (grid[k], grid[k + 1]);
        let (fa, fb) = (values[k], values[k + 1]);
        if fa == 0.0 {
            zeros.push(ZetaZero { ordinate: a, refinement_error: 0.0 });
        } else if fa * fb < 0.0 {
            zeros.push(bisect_hardy(a, b, fa, profile));
        }
    }
    if values.last() == Some(&0.0) {
        zeros.push(ZetaZero { ordinate: t_max, refinement_error: 0.0 });
    }
    let counted = count_zeta_zeros_rectangle(t_max, profile)?;
    if counted != zeros.len() as i64 {
        return Err(SpecfunError::CountMismatch { t: t_max, sign_changes: zeros.len(), argument_principle: counted });
    }
    Ok(zeros)
}

fn bisect_hardy(mut a: f64, mut b: f64, mut fa: f64, profile: &PrecisionProfile) -> ZetaZero {
    while b - a > REFINE_TOL {
        let m = 0.5 * (a + b);
        let fm = hardy_z_with(m, profile);
        if fm == 0.0 {
            return ZetaZero { ordinate: m, refinement_error: 0.0 };
        }
        if fa * fm < 0.0 {
            b = m;
        } else {
            a = m;
            fa = fm;
        }
    }
    ZetaZero { ordinate: 0.5 * (a + b), refinement_error: 0.5 * (b - a) }
}

/// Number of zeta zeros with `1 <= Im s <= t_max` by the argument principle;
/// the top edge is nudged upward if it passes too close to a zero.
pub fn count_zeta_zeros_rectangle(t_max: f64, profile: &PrecisionProfile) -> Result<i64, SpecfunError> {
    let p = *profile;
    let f = move |s: Complex64| riemann_zeta_with(s, &p).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let rect = Rectangle::new(-1.0, 2.0, 1.0, t_max).expect("valid rectangle");
    Ok(contour::count_zeros_perturbed(&f, rect, &WindingOptions::default())?)
}

/// On-disk cache of [`zeta_zeros_up_to`] keyed by height and precision profile.
#[derive(Debug, Clone)]
pub struct ZeroCache {
    dir: PathBuf,
}

impl ZeroCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        ZeroCache { dir: dir.into() }
    }

    pub fn path_for(&self, t_max: f64, profile: &PrecisionProfile) -> PathBuf {
        self.dir.join(format!("zeta_zeros_T{t_max}_{}.csv", profile.tag()))
    }

    /// Loads cached zeros, recomputing (and rewriting) when the file is
    /// missing or unreadable.
    pub fn zeros(&self, t_max: f64, profile: &PrecisionProfile) -> Result<Vec<ZetaZero>, SpecfunError> {
        let path = self.path_for(t_max, profile);
        if let Some(z) = read_zero_csv(&path) {
            return Ok(z);
        }
        let zeros = zeta_zeros_up_to(t_max, profile)?;
        std::fs::create_dir_all(&self.dir).map_err(|e| SpecfunError::Cache(e.to_string()))?;
        write_zero_csv(&path, &zeros).map_err(|e| SpecfunError::Cache(e.to_string()))?;
        Ok(zeros)
    }
}

fn read_zero_csv(path: &Path) -> Option<Vec<ZetaZero>> {
    let mut rdr = csv::Reader::from_path(path).ok()?;
    let headers = rdr.headers().ok()?.clone();
    if headers.iter().collect::<Vec<_>>() != ["ordinate", "refinement_error"] {
        return None;
    }
    let mut out = Vec::new();
    for rec in rdr.deserialize::<ZetaZero>() {
        let z = rec.ok()?;
        if !z.ordinate.is_finite() || !z.refinement_error.is_finite() {
            return None;
        }
        out.push(z);
    }
    if out.windows(2).any(|w| w[0].ordinate >= w[1].ordinate) {
        return None;
    }
    Some(out)
}

fn write_zero_csv(path: &Path, zeros: &[ZetaZero]) -> std::io::Result<()> {
    let rows: Vec<Vec<String>> =
        zeros.iter().map(|z| vec![format!("{:.12}", z.ordinate), format!("{:.3e}", z.refinement_error)]).collect();
    crate::io::write_csv_atomic(path, &["ordinate", "refinement_error"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn gamma_special_values() {
        assert_relative_eq!(gamma(c(1.0, 0.0)).unwrap().re, 1.0, max_relative = 1e-14);
        assert_relative_eq!(gamma(c(0.5, 0.0)).unwrap().re, PI.sqrt(), max_relative = 1e-14);
        assert_relative_eq!(gamma(c(6.0, 0.0)).unwrap().re, 120.0, max_relative = 1e-13);
        let g = gamma(c(0.5, 5.0)).unwrap();
        assert_relative_eq!(g.norm_sqr(), PI / (5.0 * PI).cosh(), max_relative = 1e-12);
    }

    #[test]
    fn gamma_reflection_and_recurrence() {
        for &s in &[c(-2.5, 0.3), c(0.1, -7.0), c(-0.7, 40.0), c(3.3, 90.0)] {
            let lhs = gamma(s + 1.0).unwrap();
            let rhs = s * gamma(s).unwrap();
            assert_relative_eq!((lhs - rhs).norm() / lhs.norm(), 0.0, epsilon = 1e-12);
        }
        // |Gamma(it)|^2 = pi / (t sinh(pi t))
        let t = 3.0;
        assert_relative_eq!(gamma(c(0.0, t)).unwrap().norm_sqr(), PI / (t * (PI * t).sinh()), max_relative = 1e-12);
    }

    #[test]
    fn gamma_large_argument_against_stirling_identity() {
        // Gamma(100) = 99!
        let lg = ln_gamma(c(100.0, 0.0)).unwrap().re;
        let exact: f64 = (1..100).map(|k| (k as f64).ln()).sum();
        assert_relative_eq!(lg, exact, max_relative = 1e-14);
    }

    #[test]
    fn gamma_poles() {
        assert!(gamma(c(0.0, 0.0)).is_err());
        assert!(gamma(c(-3.0, 0.0)).is_err());
    }

    #[test]
    fn zeta_special_values() {
        assert_relative_eq!(riemann_zeta(c(2.0, 0.0)).unwrap().re, PI * PI / 6.0, max_relative = 1e-14);
        assert_relative_eq!(riemann_zeta(c(0.0, 0.0)).unwrap().re, -0.5, max_relative = 1e-14);
        assert_relative_eq!(riemann_zeta(c(-1.0, 0.0)).unwrap().re, -1.0 / 12.0, max_relative = 1e-11);
        assert!(riemann_zeta(c(-2.0, 0.0)).unwrap().norm() < 1e-11);
        assert!(riemann_zeta(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn zeta_vanishes_at_first_zero() {
        assert!(riemann_zeta(c(0.5, 14.134725141734693)).unwrap().norm() < 1e-8);
    }

    #[test]
    fn zeta_functional_equation_grid() {
        for i in 0..10 {
            for j in 0..10 {
                let s = c(0.05 + 0.09 * i as f64, 1.0 + 10.0 * j as f64);
                let lhs = riemann_zeta(s).unwrap();
                let one = c(1.0, 0.0);
                let rhs = (s * 2f64.ln()).exp()
                    * ((s - 1.0) * PI.ln()).exp()
                    * (s * (PI / 2.0)).sin()
                    * gamma(one - s).unwrap()
                    * riemann_zeta(one - s).unwrap();
                assert!((lhs - rhs).norm() < 1e-8 * (1.0 + lhs.norm()), "s = {s}: {lhs} vs {rhs}");
            }
        }
    }

    #[test]
    fn profiles_agree() {
        let s = c(0.5, 150.0);
        let a = riemann_zeta_with(s, &PrecisionProfile::default()).unwrap();
        let b = riemann_zeta_with(s, &PrecisionProfile::double_double()).unwrap();
        assert!((a - b).norm() < 1e-11 * a.norm().max(1.0));
    }

    #[test]
    fn l_function_values() {
        assert_relative_eq!(dirichlet_l_chi4(c(1.0, 0.0)).re, PI / 4.0, max_relative = 1e-13);
        assert_relative_eq!(dirichlet_l_chi4(c(0.0, 0.0)).re, 0.5, max_relative = 1e-13);
        // Catalan's constant
        assert_relative_eq!(dirichlet_l_chi4(c(2.0, 0.0)).re, 0.915_965_594_177_219, max_relative = 1e-13);
        let s = c(2.0, 0.0);
        assert_relative_eq!(
            dedekind_zeta_qi(s).unwrap().re,
            riemann_zeta(s).unwrap().re * dirichlet_l_chi4(s).re,
            max_relative = 1e-15
        );
    }

    #[test]
    fn l_function_direct_series() {
        let s = c(3.0, 2.0);
        let direct: Complex64 = (0..200_000)
            .map(|m| {
                let a = (4 * m + 1) as f64;
                let b = (4 * m + 3) as f64;
                (-s * a.ln()).exp() - (-s * b.ln()).exp()
            })
            .sum();
        assert!((direct - dirichlet_l_chi4(s)).norm() < 1e-12);
    }

    #[test]
    fn hardy_z_is_real() {
        for k in 0..=100 {
            let t = k as f64;
            let z = hardy_z_complex_with(t, &PrecisionProfile::default());
            assert!(z.im.abs() < 1e-10, "t = {t}: {z}");
        }
    }

    #[test]
    fn zero_scan_small_heights() {
        let p = PrecisionProfile::default();
        assert!(zeta_zeros_up_to(10.0, &p).unwrap().is_empty());
        let z = zeta_zeros_up_to(20.0, &p).unwrap();
        assert_eq!(z.len(), 1);
        assert!((z[0].ordinate - 14.134725141734693).abs() < 1e-8);
        assert_eq!(zeta_zeros_up_to(50.0, &p).unwrap().len(), 10);
        assert!(zeta_zeros_up_to(250.0, &p).is_err());
    }

    #[test]
    fn zero_counts_match_known_values() {
        let p = PrecisionProfile::default();
        for (t, n) in [(30.0, 3), (60.0, 13), (100.0, 29), (200.0, 79)] {
            assert_eq!(zeta_zeros_up_to(t, &p).unwrap().len(), n, "T = {t}");
        }
    }

    #[test]
    fn cache_roundtrip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ZeroCache::new(dir.path());
        let p = PrecisionProfile::default();
        let first = cache.zeros(30.0, &p).unwrap();
        let second = cache.zeros(30.0, &p).unwrap();
        assert_eq!(first.len(), second.len());
        std::fs::write(cache.path_for(30.0, &p), "garbage,\n1,2,3\n").unwrap();
        let third = cache.zeros(30.0, &p).unwrap();
        assert_eq!(third.len(), first.len());
    }
}
