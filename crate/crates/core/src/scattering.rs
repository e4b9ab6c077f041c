//! Scattering matrices `phi_ij(s)`, the determinant `phi(s)` and its
//! normalized Dirichlet series `L*(s)`.
//!
//! `phi_ij(s) = c_j Gamma(s - (d-1)/2)/Gamma(s) L_ij(s)` with
//! `c_j = pi^{(d-1)/2} / v_j`, so `det phi = (Gamma(s-(d-1)/2)/Gamma(s))^kappa L(s)`.
//! Writing the leading term of `L` as `A_0 Lambda_0^{-s}` gives
//! `L(s) = a b^{d-1-2s} L*(s)` with `b = Lambda_0^{1/2}`, `a = A_0 b^{1-d}` and
//! `L* = 1 + sum a_n lambda_n^{-s}`, `lambda_n > 1`. The sign of `a` is that of `A_0`.

use crate::lattices::{enumerate_double_cosets, LatticeError, LatticeId, LatticeModel};
use crate::specfun::{self, ln_gamma, PrecisionProfile, SpecfunError};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScatteringError {
    #[error(transparent)]
    Specfun(#[from] SpecfunError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("s = {s} is outside the validity region Re s > {bound} of the series model")]
    OutsideValidity { s: Complex64, bound: f64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

type Matrix = Vec<Vec<Complex64>>;

/// `(Gamma(s - (d-1)/2) / Gamma(s))^kappa`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GammaFactor {
    pub d: usize,
    pub kappa: usize,
}

impl GammaFactor {
    pub fn shift(&self) -> f64 {
        0.5 * (self.d as f64 - 1.0)
    }

    pub fn ln_ratio(&self, s: Complex64) -> Result<Complex64, SpecfunError> {
        Ok(ln_gamma(s - self.shift())? - ln_gamma(s)?)
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64, SpecfunError> {
        Ok((self.ln_ratio(s)? * self.kappa as f64).exp())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Normalization {
    /// Signed: `Gamma_0(p)` has a negative leading coefficient.
    pub a: f64,
    pub b: f64,
}

/// Truncated Dirichlet series `sum count lambda^{-s}` with integer frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeriesEntry {
    pub lambdas: Vec<u64>,
    pub counts: Vec<u64>,
    /// Constant `c_j` multiplying the entry.
    pub constant: f64,
    /// All classes with `lambda <= complete_to` are present.
    pub complete_to: f64,
    /// `A(x) <= summatory_bound x^{d-1}`.
    pub summatory_bound: f64,
}

impl SeriesEntry {
    pub fn is_empty(&self) -> bool {
        self.lambdas.is_empty()
    }

    /// Value of the truncated sum and a bound on the omitted tail.
    pub fn eval(&self, s: Complex64, abscissa: f64) -> (Complex64, f64) {
        let v: Complex64 = self
            .lambdas
            .par_iter()
            .zip(&self.counts)
            .map(|(&l, &c)| c as f64 * crate::dirichlet::lambda_pow(l as f64, s))
            .sum();
        let x = self.complete_to.max(1.0);
        let sigma = s.re;
        let tail = sigma * self.summatory_bound * x.powf(abscissa - sigma) / (sigma - abscissa);
        (v, tail)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ModelKind {
    ClosedForm,
    Series { entries: Vec<Vec<SeriesEntry>>, lambda_max: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScatteringModel {
    pub lattice: LatticeId,
    pub d: usize,
    pub kappa: usize,
    pub kind: ModelKind,
    pub normalization: Normalization,
    /// `|L*((d-1)/2 + it)| / |Gamma((d-1)/2 + it)/Gamma(it)|^kappa`.
    pub a_gamma: f64,
    /// Real poles of `L*` in `((d-1)/2, d]`, with multiplicity.
    pub poles: Vec<f64>,
    pub profile: PrecisionProfile,
    pub warnings: Vec<String>,
}

/// Leading term `(Lambda_0, A_0)` of `det L_ij` for each closed-form lattice.
fn closed_form_leading(id: LatticeId) -> (f64, f64) {
    match id {
        LatticeId::SL2Z => (1.0, PI.sqrt()),
        LatticeId::Gamma0(p) => ((p * p) as f64, -PI),
        LatticeId::SL2ZiGaussian => (1.0, PI),
    }
}

fn normalization_from_leading(lambda0: f64, a0: f64, d: usize) -> Normalization {
    let b = lambda0.sqrt();
    Normalization { a: a0 * b.powf(1.0 - d as f64), b }
}

fn closed_form_poles(id: LatticeId) -> Vec<f64> {
    match id {
        LatticeId::SL2Z | LatticeId::Gamma0(_) => vec![1.0],
        LatticeId::SL2ZiGaussian => vec![2.0],
    }
}

impl ScatteringModel {
    pub fn closed_form(lattice: LatticeId, profile: PrecisionProfile) -> Self {
        let d = if lattice == LatticeId::SL2ZiGaussian { 3 } else { 2 };
        let kappa = if matches!(lattice, LatticeId::Gamma0(_)) { 2 } else { 1 };
        let (l0, a0) = closed_form_leading(lattice);
        let normalization = normalization_from_leading(l0, a0, d);
        ScatteringModel {
            lattice,
            d,
            kappa,
            kind: ModelKind::ClosedForm,
            a_gamma: 1.0 / normalization.a.abs(),
            normalization,
            poles: closed_form_poles(lattice),
            profile,
            warnings: vec![],
        }
    }

    pub fn gamma_factor(&self) -> GammaFactor {
        GammaFactor { d: self.d, kappa: self.kappa }
    }

    pub fn critical_line(&self) -> f64 {
        0.5 * (self.d as f64 - 1.0)
    }

    pub fn is_series(&self) -> bool {
        matches!(self.kind, ModelKind::Series { .. })
    }

    fn check_series_region(&self, s: Complex64) -> Result<(), ScatteringError> {
        let bound = self.d as f64 - 1.0;
        if self.is_series() && s.re <= bound {
            return Err(ScatteringError::OutsideValidity { s, bound });
        }
        Ok(())
    }

    /// `phi_ij(s)` together with entrywise error bounds (zero for closed forms).
    pub fn phi_matrix_with_bounds(&self, s: Complex64) -> Result<(Matrix, Vec<Vec<f64>>), ScatteringError> {
        self.check_series_region(s)?;
        match &self.kind {
            ModelKind::ClosedForm => {
                let m = closed_form_matrix(self.lattice, s, &self.profile)?;
                let k = m.len();
                Ok((m, vec![vec![0.0; k]; k]))
            }
            ModelKind::Series { entries, .. } => {
                let g = self.gamma_factor();
                let gf = (g.ln_ratio(s)?).exp();
                let abscissa = self.d as f64 - 1.0;
                let mut m = vec![vec![Complex64::new(0.0, 0.0); self.kappa]; self.kappa];
                let mut e = vec![vec![0.0; self.kappa]; self.kappa];
                for i in 0..self.kappa {
                    for j in 0..self.kappa {
                        let entry = &entries[i][j];
                        let (v, tail) = entry.eval(s, abscissa);
                        m[i][j] = gf * entry.constant * v;
                        e[i][j] = gf.norm() * entry.constant * tail;
                    }
                }
                Ok((m, e))
            }
        }
    }

    pub fn phi_matrix(&self, s: Complex64) -> Result<Matrix, ScatteringError> {
        Ok(self.phi_matrix_with_bounds(s)?.0)
    }

    /// `det phi(s)` and a bound on its error from the entry bounds:
    /// `|delta det| <= perm(|M| + E) - perm(|M|)`.
    pub fn determinant_with_bound(&self, s: Complex64) -> Result<(Complex64, f64), ScatteringError> {
        if let ModelKind::ClosedForm = self.kind {
            return Ok((closed_form_det(self.lattice, s, &self.profile)?, 0.0));
        }
        let (m, e) = self.phi_matrix_with_bounds(s)?;
        let det = det(&m);
        let abs: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|z| z.norm()).collect()).collect();
        let plus: Vec<Vec<f64>> = abs.iter().zip(&e).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect()).collect();
        Ok((det, permanent(&plus) - permanent(&abs)))
    }

    pub fn scattering_determinant(&self, s: Complex64) -> Result<Complex64, ScatteringError> {
        Ok(self.determinant_with_bound(s)?.0)
    }

    /// `L*(s) = a^{-1} b^{2s+1-d} (Gamma(s)/Gamma(s-(d-1)/2))^kappa det phi(s)`.
    pub fn l_star(&self, s: Complex64) -> Result<Complex64, ScatteringError> {
        let det = self.scattering_determinant(s)?;
        let g = self.gamma_factor();
        let n = &self.normalization;
        let log_scale = (2.0 * s + 1.0 - self.d as f64) * n.b.ln() - g.ln_ratio(s)? * self.kappa as f64;
        Ok(det * log_scale.exp() / n.a)
    }
}

fn det(m: &Matrix) -> Complex64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        _ => unreachable!("kappa <= 2"),
    }
}

fn permanent(m: &[Vec<f64>]) -> f64 {
    match m.len() {
        1 => m[0][0],
        2 => m[0][0] * m[1][1] + m[0][1] * m[1][0],
        _ => unreachable!("kappa <= 2"),
    }
}

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const STIELTJES_1: f64 = -0.072_815_845_483_676_72;

/// `(s - 1) zeta(s)`, analytic at `s = 1`.
fn zeta_times_pole(s: Complex64, profile: &PrecisionProfile) -> Result<Complex64, SpecfunError> {
    let h = s - 1.0;
    if h.norm() < 1e-6 {
        return Ok(Complex64::new(1.0, 0.0) + EULER_GAMMA * h - STIELTJES_1 * h * h);
    }
    Ok(h * specfun::riemann_zeta_with(s, profile)?)
}

/// `ln` of the Gamma part and the zeta part of `xi(w) = (w-1) zeta(w) pi^{-w/2} Gamma(w/2 + 1)`,
/// using `xi(w) = xi(1 - w)` to stay in `Re w >= 1/2`.
fn xi_parts(w: Complex64, profile: &PrecisionProfile) -> Result<(Complex64, Complex64), SpecfunError> {
    let w = if w.re < 0.5 { Complex64::new(1.0, 0.0) - w } else { w };
    let lg = -0.5 * w * PI.ln() + ln_gamma(w / 2.0 + 1.0)?;
    Ok((lg, zeta_times_pole(w, profile)?))
}

/// `xi_K(w) = (w-1) zeta(w) L(w, chi_-4) pi^{-w} Gamma(w + 1)`, with `xi_K(w) = xi_K(1 - w)`.
fn xi_k_parts(w: Complex64, profile: &PrecisionProfile) -> Result<(Complex64, Complex64), SpecfunError> {
    let w = if w.re < 0.5 { Complex64::new(1.0, 0.0) - w } else { w };
    let lg = -w * PI.ln() + ln_gamma(w + 1.0)?;
    Ok((lg, zeta_times_pole(w, profile)? * specfun::dirichlet_l_chi4_with(w, profile)))
}

fn xi_ratio(
    parts: fn(Complex64, &PrecisionProfile) -> Result<(Complex64, Complex64), SpecfunError>,
    num: Complex64,
    den: Complex64,
    profile: &PrecisionProfile,
) -> Result<Complex64, SpecfunError> {
    let (g1, z1) = parts(num, profile)?;
    let (g2, z2) = parts(den, profile)?;
    Ok((g1 - g2).exp() * z1 / z2)
}

/// `phi(s)` of `PSL2(Z)`: `sqrt(pi) Gamma(s - 1/2) zeta(2s - 1) / (Gamma(s) zeta(2s))`.
/// Near `s = 1/2` the removable singularity is evaluated through
/// `phi(s) = xi(2s - 1)/xi(2s) * s/(s - 1)`.
pub fn phi_sl2z(s: Complex64, profile: &PrecisionProfile) -> Result<Complex64, SpecfunError> {
    let one = Complex64::new(1.0, 0.0);
    if (s - one).norm() == 0.0 {
        return Err(SpecfunError::Pole(s));
    }
    if (s - 0.5).norm() < 1e-7 {
        return Ok(xi_ratio(xi_parts, 2.0 * s - 1.0, 2.0 * s, profile)? * s / (s - 1.0));
    }
    let lg = 0.5 * PI.ln() + ln_gamma(s - 0.5)? - ln_gamma(s)?;
    let num = specfun::riemann_zeta_with(2.0 * s - 1.0, profile)?;
    let den = specfun::riemann_zeta_with(2.0 * s, profile)?;
    Ok(lg.exp() * num / den)
}

/// `phi(s)` of `PSL2(Z[i])`: `pi Gamma(s-1)/Gamma(s) zeta_K(s-1)/zeta_K(s)`,
/// with the removable singularity at `s = 1` through `xi_K(s-1)/xi_K(s) * s/(s-2)`.
pub fn phi_gaussian(s: Complex64, profile: &PrecisionProfile) -> Result<Complex64, SpecfunError> {
    if (s - 2.0).norm() == 0.0 {
        return Err(SpecfunError::Pole(s));
    }
    if (s - 1.0).norm() < 1e-7 {
        return Ok(xi_ratio(xi_k_parts, s - 1.0, s, profile)? * s / (s - 2.0));
    }
    let num = specfun::dedekind_zeta_qi_with(s - 1.0, profile)?;
    let den = specfun::dedekind_zeta_qi_with(s, profile)?;
    Ok(PI / (s - 1.0) * num / den)
}

/// Scattering matrix of `Gamma_0(p)` with cusps `inf, 0`:
/// `phi_sl2z(s)/(p^{2s} - 1) [[p - 1, p^s - p^{1-s}], [p^s - p^{1-s}, p - 1]]`.
pub fn phi_gamma0(p: u64, s: Complex64, profile: &PrecisionProfile) -> Result<Matrix, SpecfunError> {
    let theta = phi_sl2z(s, profile)?;
    let pf = p as f64;
    let ps = (s * pf.ln()).exp();
    let off = ps - pf / ps;
    let denom = ps * ps - 1.0;
    let diag = theta * (pf - 1.0) / denom;
    let offd = theta * off / denom;
    Ok(vec![vec![diag, offd], vec![offd, diag]])
}

fn closed_form_matrix(id: LatticeId, s: Complex64, profile: &PrecisionProfile) -> Result<Matrix, SpecfunError> {
    Ok(match id {
        LatticeId::SL2Z => vec![vec![phi_sl2z(s, profile)?]],
        LatticeId::Gamma0(p) => phi_gamma0(p, s, profile)?,
        LatticeId::SL2ZiGaussian => vec![vec![phi_gaussian(s, profile)?]],
    })
}

fn closed_form_det(id: LatticeId, s: Complex64, profile: &PrecisionProfile) -> Result<Complex64, SpecfunError> {
    Ok(match id {
        LatticeId::Gamma0(p) => {
            // factored to avoid cancellation in the 2x2 determinant
            let theta = phi_sl2z(s, profile)?;
            let pf = p as f64;
            let ps = (s * pf.ln()).exp();
            let off = ps - pf / ps;
            let denom = ps * ps - 1.0;
            theta * theta * ((pf - 1.0) - off) * ((pf - 1.0) + off) / (denom * denom)
        }
        _ => closed_form_matrix(id, s, profile)?[0][0],
    })
}

/// Builds series-backed entries from the double-coset spectra, with
/// `c_j = pi^{(d-1)/2} / v_j`.
pub fn build_from_double_cosets(
    model: &LatticeModel,
    lambda_max: f64,
    profile: PrecisionProfile,
) -> Result<ScatteringModel, ScatteringError> {
    let d = model.d;
    let cd = PI.powf(0.5 * (d as f64 - 1.0));
    let kbound = if d == 3 { 2.0 } else { 1.0 };
    let mut warnings = Vec::new();
    let mut entries = vec![Vec::with_capacity(model.kappa); model.kappa];
    for (i, row) in entries.iter_mut().enumerate() {
        for j in 0..model.kappa {
            let spec = enumerate_double_cosets(model, i, j, lambda_max)?;
            if spec.is_empty() {
                warnings.push(format!("entry ({i},{j}) is empty below lambda_max = {lambda_max}"));
            } else if spec.len() < 5 {
                warnings.push(format!("entry ({i},{j}) has only {} classes", spec.len()));
            }
            row.push(SeriesEntry {
                lambdas: spec.entries.iter().map(|e| e.lambda.round() as u64).collect(),
                counts: spec.entries.iter().map(|e| e.count).collect(),
                constant: cd / model.cusps[j].volume,
                complete_to: lambda_max,
                summatory_bound: kbound,
            });
        }
    }
    let leading = leading_term(&entries).ok_or_else(|| {
        ScatteringError::Precondition("lambda_max too small to determine the leading determinant term".into())
    })?;
    let normalization = normalization_from_leading(leading.0, leading.1, d);
    Ok(ScatteringModel {
        lattice: model.id,
        d,
        kappa: model.kappa,
        kind: ModelKind::Series { entries, lambda_max },
        a_gamma: 1.0 / normalization.a.abs(),
        normalization,
        poles: closed_form_poles(model.id),
        profile,
        warnings,
    })
}

type Poly = BTreeMap<u64, f64>;

fn poly(e: &SeriesEntry) -> Poly {
    e.lambdas.iter().zip(&e.counts).map(|(&l, &c)| (l, c as f64 * e.constant)).collect()
}

fn poly_mul(a: &Poly, b: &Poly, cap: u64) -> Poly {
    let mut out = Poly::new();
    for (&la, &ca) in a {
        for (&lb, &cb) in b {
            match la.checked_mul(lb) {
                Some(l) if l <= cap => *out.entry(l).or_insert(0.0) += ca * cb,
                _ => break,
            }
        }
    }
    out
}

/// Leading `(Lambda_0, A_0)` of `det(c_j L_ij)`, certified only if every
/// product that could undercut it is known.
fn leading_term(entries: &[Vec<SeriesEntry>]) -> Option<(f64, f64)> {
    match entries.len() {
        1 => {
            let e = &entries[0][0];
            Some((*e.lambdas.first()? as f64, e.counts[0] as f64 * e.constant))
        }
        2 => {
            let cap = entries.iter().flatten().map(|e| e.complete_to as u64).min()?;
            let p = |i: usize, j: usize| poly(&entries[i][j]);
            let diag = poly_mul(&p(0, 0), &p(1, 1), cap);
            let anti = poly_mul(&p(0, 1), &p(1, 0), cap);
            let mut total = diag;
            for (l, c) in anti {
                *total.entry(l).or_insert(0.0) -= c;
            }
            total.into_iter().find(|(_, c)| c.abs() > 1e-9).map(|(l, c)| (l as f64, c))
        }
        _ => None,
    }
}

/// `sup |phi(s) phi(d-1-s) - I|` (closed-form models).
pub fn functional_equation_residual(m: &ScatteringModel, s: Complex64) -> Result<f64, ScatteringError> {
    if m.is_series() {
        return Err(ScatteringError::Precondition("functional equation needs a closed-form model".into()));
    }
    let a = m.phi_matrix(s)?;
    let b = m.phi_matrix(Complex64::from(m.d as f64 - 1.0) - s)?;
    let k = a.len();
    let mut worst: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let v: Complex64 = (0..k).map(|l| a[i][l] * b[l][j]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((v - target).norm());
        }
    }
    Ok(worst)
}

/// `sqrt(1 + u^2) + u` with `u = (2 sigma + 1 - d)/(2t)`.
pub fn maass_selberg_envelope(d: usize, sigma: f64, t: f64) -> f64 {
    let u = (2.0 * sigma + 1.0 - d as f64) / (2.0 * t);
    (1.0 + u * u).sqrt() + u
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MaassSelbergRow {
    pub sigma: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

/// Compares `max_ij |phi_ij(sigma + it)|` against `constant * envelope`.
pub fn maass_selberg_bound_check(
    m: &ScatteringModel,
    sigma: f64,
    t: f64,
    constant: f64,
) -> Result<MaassSelbergRow, ScatteringError> {
    let lo = m.critical_line();
    if sigma < lo || sigma > m.d as f64 || t.abs() < 1.0 {
        return Err(ScatteringError::Precondition(format!(
            "need {lo} <= sigma <= {} and |t| >= 1, got sigma = {sigma}, t = {t}",
            m.d
        )));
    }
    let phi = m.phi_matrix(Complex64::new(sigma, t))?;
    let lhs = phi.iter().flatten().map(|z| z.norm()).fold(0.0, f64::max);
    let rhs = constant * maass_selberg_envelope(m.d, sigma, t.abs());
    Ok(MaassSelbergRow { sigma, t, lhs, rhs, ok: lhs <= rhs })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AGammaFit {
    pub samples: Vec<(f64, f64)>,
    pub mean: f64,
    /// `max |sample - mean| / mean`.
    pub relative_spread: f64,
}

/// Measures `|L*((d-1)/2 + it)| / |Gamma((d-1)/2 + it)/Gamma(it)|^kappa` at the given heights.
pub fn measure_a_gamma(m: &ScatteringModel, ts: &[f64]) -> Result<AGammaFit, ScatteringError> {
    let h = m.critical_line();
    let samples: Vec<(f64, f64)> = ts
        .iter()
        .map(|&t| {
            let s = Complex64::new(h, t);
            let ls = m.l_star(s)?;
            let g = (ln_gamma(s)? - ln_gamma(Complex64::new(0.0, t))?).re * m.kappa as f64;
            Ok((t, ls.norm() / g.exp()))
        })
        .collect::<Result<_, ScatteringError>>()?;
    let mean = samples.iter().map(|x| x.1).sum::<f64>() / samples.len() as f64;
    let relative_spread = samples.iter().map(|x| (x.1 - mean).abs() / mean).fold(0.0, f64::max);
    Ok(AGammaFit { samples, mean, relative_spread })
}

/// `max |L*(sigma + it)| / t^{(d-1) kappa / 2}` over the given grid.
pub fn l_star_growth_constant(m: &ScatteringModel, sigmas: &[f64], ts: &[f64]) -> Result<f64, ScatteringError> {
    let power = 0.5 * (m.d as f64 - 1.0) * m.kappa as f64;
    let mut worst: f64 = 0.0;
    for &sigma in sigmas {
        for &t in ts {
            worst = worst.max(m.l_star(Complex64::new(sigma, t))?.norm() / t.powf(power));
        }
    }
    Ok(worst)
}
