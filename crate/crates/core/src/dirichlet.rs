//! Dirichlet series `f(s) = sum a_n lambda_n^{-s}` with positive coefficients,
//! normalized so the abscissa of absolute convergence is 1.
//!
//! Tail bounds use a linear summatory bound `A_f(x) <= K x`; by partial
//! summation the terms with `lambda_n > X` contribute at most
//! `sigma K X^{1-sigma} / (sigma - 1)` at `Re s = sigma > 1`.

use crate::numeric::{integrate, KahanSum, QuadOptions, QuadratureError};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DirichletError {
    #[error("Re s = {0} is not in the half-plane of absolute convergence")]
    OutsideConvergence(f64),
    #[error("invalid series: {0}")]
    InvalidSeries(String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("least-squares system is singular")]
    SingularFit,
    #[error("x = {x} exceeds the range {complete_to} where the series is complete")]
    BeyondCompleteness { x: f64, complete_to: f64 },
    #[error("sigma = {sigma} is below sigma_1 = {sigma1}")]
    BelowSigma1 { sigma: f64, sigma1: f64 },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error("i/o: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RealPole {
    pub location: f64,
    /// Degree of the polynomial in `log x` multiplying `x^rho` in `A_f(x)`.
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesMeta {
    pub residue_at_1: f64,
    pub real_poles: Vec<RealPole>,
    pub growth_exponent: f64,
    /// Every term with `lambda <= complete_to` is stored; `f64::INFINITY` for finite series.
    pub complete_to: f64,
    /// `K` with `A_f(x) <= K x` for all `x`.
    pub summatory_bound: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PositiveDirichletSeries {
    lambdas: Vec<f64>,
    coefficients: Vec<f64>,
    meta: SeriesMeta,
    prefix: Vec<f64>,
}

impl PositiveDirichletSeries {
    pub fn new(lambdas: Vec<f64>, coefficients: Vec<f64>, meta: SeriesMeta) -> Result<Self, DirichletError> {
        if lambdas.len() != coefficients.len() {
            return Err(DirichletError::InvalidSeries("lambdas and coefficients differ in length".into()));
        }
        if lambdas.iter().any(|l| !(*l > 0.0) || !l.is_finite()) || lambdas.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DirichletError::InvalidSeries("lambdas must be positive and strictly ascending".into()));
        }
        if coefficients.iter().any(|a| !(*a > 0.0) || !a.is_finite()) {
            return Err(DirichletError::InvalidSeries("coefficients must be positive".into()));
        }
        if meta.growth_exponent < 0.5 {
            return Err(DirichletError::InvalidSeries("growth exponent must be >= 1/2".into()));
        }
        let mut acc = KahanSum::new();
        let prefix = coefficients
            .iter()
            .map(|a| {
                acc.add(*a);
                acc.value()
            })
            .collect();
        Ok(PositiveDirichletSeries { lambdas, coefficients, meta, prefix })
    }

    /// A series consisting exactly of the given terms.
    pub fn finite(lambdas: Vec<f64>, coefficients: Vec<f64>) -> Result<Self, DirichletError> {
        let meta = SeriesMeta {
            residue_at_1: 0.0,
            real_poles: vec![],
            growth_exponent: 0.5,
            complete_to: f64::INFINITY,
            summatory_bound: 0.0,
        };
        Self::new(lambdas, coefficients, meta)
    }

    /// `zeta(s)`, terms `n <= n_max`.
    pub fn zeta(n_max: usize) -> Self {
        let lambdas = (1..=n_max).map(|n| n as f64).collect();
        let meta = SeriesMeta {
            residue_at_1: 1.0,
            real_poles: vec![],
            growth_exponent: 0.5,
            complete_to: n_max as f64,
            summatory_bound: 1.0,
        };
        Self::new(lambdas, vec![1.0; n_max], meta).expect("valid")
    }

    /// `zeta(s)/zeta(s+1) = sum phi(n)/n n^{-s}`: the normalized scattering
    /// series of `PSL2(Z)`, `f(s) = L((s+1)/2)` with `L(s) = sum phi(c) c^{-2s}`.
    pub fn sl2z_scaled(n_max: usize) -> Self {
        let phi = totients(n_max);
        let lambdas = (1..=n_max).map(|n| n as f64).collect();
        let coefficients = (1..=n_max).map(|n| phi[n] as f64 / n as f64).collect();
        let meta = SeriesMeta {
            residue_at_1: 6.0 / (std::f64::consts::PI * std::f64::consts::PI),
            real_poles: vec![],
            growth_exponent: 0.5,
            complete_to: n_max as f64,
            summatory_bound: 1.0,
        };
        Self::new(lambdas, coefficients, meta).expect("valid")
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn meta(&self) -> &SeriesMeta {
        &self.meta
    }

    pub fn len(&self) -> usize {
        self.lambdas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    pub fn growth_exponent(&self) -> f64 {
        self.meta.growth_exponent
    }

    pub fn save(&self, csv_path: &Path, json_path: &Path) -> Result<(), DirichletError> {
        let rows: Vec<Vec<String>> = self
            .lambdas
            .iter()
            .zip(&self.coefficients)
            .map(|(l, a)| vec![format!("{l:.17e}"), format!("{a:.17e}")])
            .collect();
        crate::io::write_csv_atomic(csv_path, &["lambda", "coefficient"], &rows)
            .map_err(|e| DirichletError::Io(e.to_string()))?;
        crate::io::write_json_atomic(json_path, &self.meta).map_err(|e| DirichletError::Io(e.to_string()))
    }

    pub fn load(csv_path: &Path, json_path: &Path) -> Result<Self, DirichletError> {
        let io = |e: &dyn std::fmt::Display| DirichletError::Io(e.to_string());
        let meta: SeriesMeta =
            serde_json::from_str(&std::fs::read_to_string(json_path).map_err(|e| io(&e))?).map_err(|e| io(&e))?;
        let mut rdr = csv::Reader::from_path(csv_path).map_err(|e| io(&e))?;
        let (mut lambdas, mut coefficients) = (Vec::new(), Vec::new());
        for rec in rdr.deserialize::<(f64, f64)>() {
            let (l, a) = rec.map_err(|e| io(&e))?;
            lambdas.push(l);
            coefficients.push(a);
        }
        Self::new(lambdas, coefficients, meta)
    }

    /// Number of stored terms with `lambda <= x`.
    fn count_le(&self, x: f64) -> usize {
        self.lambdas.partition_point(|l| *l <= x)
    }
}

/// `lambda^{-s}`, exact for real `s` where `powf` is.
pub fn lambda_pow(lambda: f64, s: Complex64) -> Complex64 {
    Complex64::from_polar(lambda.powf(-s.re), -s.im * lambda.ln())
}

/// Euler's totient for `0..=n` by sieve.
pub fn totients(n: usize) -> Vec<u64> {
    let mut phi: Vec<u64> = (0..=n as u64).collect();
    for p in 2..=n {
        if phi[p] == p as u64 {
            for m in (p..=n).step_by(p) {
                phi[m] -= phi[m] / p as u64;
            }
        }
    }
    phi
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evaluation {
    pub value: Complex64,
    pub tail_bound: f64,
    /// Whether the tail bound is within the requested tolerance.
    pub within_tolerance: bool,
}

/// Sum of the first `cutoff` terms with a rigorous bound on the rest.
pub fn evaluate(
    f: &PositiveDirichletSeries,
    s: Complex64,
    cutoff: usize,
    tol: f64,
) -> Result<Evaluation, DirichletError> {
    let n = cutoff.min(f.len());
    let finite = f.meta.complete_to.is_infinite() && n == f.len();
    if !finite && s.re <= 1.0 {
        return Err(DirichletError::OutsideConvergence(s.re));
    }
    let terms: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|k| f.coefficients[k] * lambda_pow(f.lambdas[k], s))
        .collect();
    let value = Complex64::new(
        terms.iter().map(|z| z.re).collect::<KahanSum>().value(),
        terms.iter().map(|z| z.im).collect::<KahanSum>().value(),
    );
    let tail_bound = if finite {
        0.0
    } else {
        let x = if n == 0 { 1.0 } else { f.lambdas[n - 1].min(f.meta.complete_to) };
        s.re * f.meta.summatory_bound * x.powf(1.0 - s.re) / (s.re - 1.0)
    };
    Ok(Evaluation { value, tail_bound, within_tolerance: tail_bound <= tol })
}

/// `A_f(x) = sum_{lambda_n <= x} a_n` (compensated).
pub fn summatory(f: &PositiveDirichletSeries, x: f64) -> Result<f64, DirichletError> {
    if x > f.meta.complete_to {
        return Err(DirichletError::BeyondCompleteness { x, complete_to: f.meta.complete_to });
    }
    let k = f.count_le(x);
    Ok(if k == 0 { 0.0 } else { f.prefix[k - 1] })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticFit {
    pub fitted_residue: f64,
    /// Coefficients of `x^rho log^j x` for each real pole, in order.
    pub pole_coefficients: Vec<f64>,
    /// `sup |A_f(x) - model(x)| / (x^{1-1/(2r)} log x)` over the grid.
    pub max_deviation: f64,
}

/// Least-squares fit of `A_f(x) = a x + sum_j x^{rho_j} p_j(log x)`.
pub fn summatory_asymptotic_fit(f: &PositiveDirichletSeries, x_grid: &[f64]) -> Result<AsymptoticFit, DirichletError> {
    let nparams = 1 + f.meta.real_poles.iter().map(|p| p.degree + 1).sum::<usize>();
    if x_grid.len() < nparams + 1 {
        return Err(DirichletError::InsufficientData(format!("{} grid points for {} parameters", x_grid.len(), nparams)));
    }
    if x_grid.windows(2).any(|w| w[0] >= w[1]) || x_grid[0] <= 1.0 {
        return Err(DirichletError::InsufficientData("grid must be ascending and above 1".into()));
    }
    let x_max = *x_grid.last().unwrap();
    if x_max < 1e3 {
        return Err(DirichletError::InsufficientData("grid must reach 1e3".into()));
    }
    let basis = |x: f64| -> Vec<f64> {
        let mut row = vec![x];
        for p in &f.meta.real_poles {
            for j in 0..=p.degree {
                row.push(x.powf(p.location) * x.ln().powi(j as i32));
            }
        }
        row
    };
    let a_vals: Vec<f64> = x_grid.iter().map(|&x| summatory(f, x)).collect::<Result<_, _>>()?;
    // weight rows by 1/x so the fit is relative
    let rows: Vec<(Vec<f64>, f64)> =
        x_grid.iter().zip(&a_vals).map(|(&x, &a)| (basis(x).iter().map(|b| b / x).collect(), a / x)).collect();
    let coef = least_squares(&rows, nparams).ok_or(DirichletError::SingularFit)?;
    let r = f.meta.growth_exponent;
    let max_deviation = x_grid
        .iter()
        .zip(&a_vals)
        .map(|(&x, &a)| {
            let model: f64 = basis(x).iter().zip(&coef).map(|(b, c)| b * c).sum();
            (a - model).abs() / (x.powf(1.0 - 1.0 / (2.0 * r)) * x.ln())
        })
        .fold(0.0, f64::max);
    Ok(AsymptoticFit { fitted_residue: coef[0], pole_coefficients: coef[1..].to_vec(), max_deviation })
}

/// Solves the normal equations by Gaussian elimination with partial pivoting.
pub(crate) fn least_squares(rows: &[(Vec<f64>, f64)], n: usize) -> Option<Vec<f64>> {
    let mut m = vec![vec![0.0; n + 1]; n];
    for (x, y) in rows {
        for i in 0..n {
            for j in 0..n {
                m[i][j] += x[i] * x[j];
            }
            m[i][n] += x[i] * y;
        }
    }
    let scale = m.iter().flat_map(|r| r[..n].iter()).fold(0.0f64, |a, v| a.max(v.abs()));
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() <= 1e-13 * scale {
            return None;
        }
        m.swap(piv, col);
        for r in 0..n {
            if r != col {
                let factor = m[r][col] / m[col][col];
                for k in col..=n {
                    m[r][k] -= factor * m[col][k];
                }
            }
        }
    }
    Some((0..n).map(|i| m[i][n] / m[i][i]).collect())
}

/// `sup |A_f(x) - a x| / log x` over `2 <= x <= x_max`, attained at the jumps
/// of `A_f` (evaluated on both sides of each jump).
pub fn summatory_deviation_sup(f: &PositiveDirichletSeries, a: f64, x_max: f64) -> Result<f64, DirichletError> {
    if x_max > f.meta.complete_to {
        return Err(DirichletError::BeyondCompleteness { x: x_max, complete_to: f.meta.complete_to });
    }
    let mut worst: f64 = 0.0;
    let k_max = f.count_le(x_max);
    let mut check = |x: f64, big_a: f64| {
        if x >= 2.0 && x <= x_max {
            worst = worst.max((big_a - a * x).abs() / x.ln());
        }
    };
    for k in 0..k_max {
        let before = if k == 0 { 0.0 } else { f.prefix[k - 1] };
        check(f.lambdas[k], f.prefix[k]);
        check(f.lambdas[k], before);
    }
    check(x_max, if k_max == 0 { 0.0 } else { f.prefix[k_max - 1] });
    Ok(worst)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TruncationWindow {
    pub x: f64,
    pub k: u32,
}

impl TruncationWindow {
    pub fn new(x: f64, k: u32) -> Result<Self, DirichletError> {
        if !(x >= 1.0) {
            return Err(DirichletError::InvalidSeries(format!("window x = {x} must be >= 1")));
        }
        Ok(TruncationWindow { x, k })
    }

    /// Checks the hypothesis `k > r`.
    pub fn admissible_for(&self, f: &PositiveDirichletSeries) -> bool {
        self.k as f64 > f.growth_exponent()
    }

    /// Range `x^{(1-sigma_0)/(k+1)} <= t <= x^{sigma_0/r}` on which `f* = f + O(1)`.
    pub fn t_range(&self, sigma0: f64, r: f64) -> (f64, f64) {
        (self.x.powf((1.0 - sigma0) / (self.k as f64 + 1.0)), self.x.powf(sigma0 / r))
    }
}

/// `f*_{x,k}(s) = sum_{lambda_n <= x} a_n (1 - lambda_n/x)^k lambda_n^{-s}`.
pub fn smoothed_truncation(
    f: &PositiveDirichletSeries,
    w: &TruncationWindow,
    s: Complex64,
) -> Result<Complex64, DirichletError> {
    if w.x > f.meta.complete_to {
        return Err(DirichletError::BeyondCompleteness { x: w.x, complete_to: f.meta.complete_to });
    }
    let n = f.count_le(w.x);
    let terms: Vec<Complex64> = (0..n)
        .into_par_iter()
        .map(|j| {
            let l = f.lambdas[j];
            f.coefficients[j] * (1.0 - l / w.x).powi(w.k as i32) * lambda_pow(l, s)
        })
        .collect();
    Ok(Complex64::new(
        terms.iter().map(|z| z.re).collect::<KahanSum>().value(),
        terms.iter().map(|z| z.im).collect::<KahanSum>().value(),
    ))
}

/// Threshold `sigma_1(r)` of the mean-square bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Sigma1Rule {
    /// `(4r - 1)/(4r)` for every `r`.
    #[default]
    Proposition,
    /// `3/4` when `r < 1`, otherwise `(4r - 1)/(4r)`.
    Remark,
}

pub fn sigma1(r: f64, rule: Sigma1Rule) -> f64 {
    match rule {
        Sigma1Rule::Remark if r < 1.0 => 0.75,
        _ => (4.0 * r - 1.0) / (4.0 * r),
    }
}

/// `(1/T) int_1^T |f(sigma + it)|^2 dt`.
pub fn mean_square<F>(f: F, sigma: f64, t: f64, sigma1: f64, opts: QuadOptions) -> Result<crate::numeric::Integral, DirichletError>
where
    F: Fn(Complex64) -> Complex64,
{
    if sigma < sigma1 {
        return Err(DirichletError::BelowSigma1 { sigma, sigma1 });
    }
    if t <= 1.0 {
        return Ok(crate::numeric::Integral { value: 0.0, error: 0.0 });
    }
    let r = integrate(|u| f(Complex64::new(sigma, u)).norm_sqr(), 1.0, t, opts)?;
    Ok(crate::numeric::Integral { value: r.value / t, error: r.error / t })
}

/// `min(1/(sigma - sigma_1)^2, log^2 T)`.
pub fn mean_square_envelope(sigma: f64, sigma1: f64, t: f64) -> f64 {
    let ln = t.ln();
    if sigma > sigma1 {
        (1.0 / (sigma - sigma1).powi(2)).min(ln * ln)
    } else {
        ln * ln
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn zeta_series_at_two() {
        let f = PositiveDirichletSeries::zeta(100_000);
        let e = evaluate(&f, Complex64::new(2.0, 0.0), 100_000, 1e-4).unwrap();
        assert!((e.value.re - PI * PI / 6.0).abs() <= e.tail_bound);
        assert!(e.within_tolerance);
        assert!(evaluate(&f, Complex64::new(1.0, 3.0), 10, 1.0).is_err());
    }

    #[test]
    fn finite_series_is_exact() {
        let f = PositiveDirichletSeries::finite(vec![2.0], vec![1.0]).unwrap();
        let e = evaluate(&f, Complex64::new(3.0, 0.0), 10, 0.0).unwrap();
        assert_eq!(e.value.re, 0.125);
        assert_eq!(e.tail_bound, 0.0);
    }

    #[test]
    fn sl2z_scaled_against_direct_oracle() {
        // sum phi(n)/n^3 = zeta(2)/zeta(3)
        let f = PositiveDirichletSeries::sl2z_scaled(1_000_000);
        let e = evaluate(&f, Complex64::new(2.0, 0.0), usize::MAX, 1e-5).unwrap();
        let zeta3 = 1.202_056_903_159_594_2;
        let oracle = PI * PI / 6.0 / zeta3;
        assert!((e.value.re - oracle).abs() <= e.tail_bound);
        assert!((e.value.re - oracle).abs() < 1e-6);
    }

    #[test]
    fn summatory_examples() {
        let z = PositiveDirichletSeries::zeta(100);
        assert_eq!(summatory(&z, 10.5).unwrap(), 10.0);
        assert_eq!(summatory(&z, 0.5).unwrap(), 0.0);
        let f = PositiveDirichletSeries::sl2z_scaled(100);
        let expect = 1.0 + 0.5 + 2.0 / 3.0 + 0.5 + 0.8 + 1.0 / 3.0 + 6.0 / 7.0 + 0.5 + 2.0 / 3.0 + 0.4;
        assert_relative_eq!(summatory(&f, 10.0).unwrap(), expect, max_relative = 1e-15);
        assert!(summatory(&f, 101.0).is_err());
    }

    #[test]
    fn asymptotic_fits() {
        let grid: Vec<f64> = (1..=30).map(|k| 10f64.powf(1.0 + k as f64 * 0.1)).collect();
        let z = PositiveDirichletSeries::zeta(10_000);
        let fit = summatory_asymptotic_fit(&z, &grid).unwrap();
        assert!((fit.fitted_residue - 1.0).abs() < 0.01);
        let f = PositiveDirichletSeries::sl2z_scaled(10_000);
        let fit = summatory_asymptotic_fit(&f, &grid).unwrap();
        assert!((fit.fitted_residue - 6.0 / (PI * PI)).abs() < 0.01 * 6.0 / (PI * PI));
        assert!(matches!(summatory_asymptotic_fit(&f, &[5000.0]), Err(DirichletError::InsufficientData(_))));
    }

    #[test]
    fn smoothed_truncation_examples() {
        let f = PositiveDirichletSeries::finite(vec![5.0], vec![3.0]).unwrap();
        let w = TruncationWindow::new(4.0, 2).unwrap();
        assert_eq!(smoothed_truncation(&f, &w, Complex64::new(1.0, 1.0)).unwrap(), Complex64::new(0.0, 0.0));
        let w = TruncationWindow::new(10.0, 12).unwrap();
        let s = Complex64::new(0.3, 2.0);
        let got = smoothed_truncation(&f, &w, s).unwrap();
        let want = 3.0 * (-s * 5f64.ln()).exp() * 0.5f64.powi(12);
        assert!((got - want).norm() < 1e-15);
        assert!(TruncationWindow::new(0.5, 1).is_err());
    }

    #[test]
    fn sigma1_rules() {
        assert_eq!(sigma1(0.5, Sigma1Rule::Proposition), 0.5);
        assert_eq!(sigma1(0.5, Sigma1Rule::Remark), 0.75);
        assert_eq!(sigma1(1.0, Sigma1Rule::Remark), 0.75);
        assert_eq!(sigma1(2.0, Sigma1Rule::Proposition), 0.875);
    }

    #[test]
    fn mean_square_of_constant() {
        let m = mean_square(|_| Complex64::new(1.0, 0.0), 2.0, 10.0, 0.5, QuadOptions::default()).unwrap();
        assert_relative_eq!(m.value, 0.9, max_relative = 1e-12);
        assert!(mean_square(|_| Complex64::new(1.0, 0.0), 0.4, 10.0, 0.5, QuadOptions::default()).is_err());
    }

    #[test]
    fn totient_sieve() {
        assert_eq!(&totients(12)[1..], &[1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]);
    }
}
