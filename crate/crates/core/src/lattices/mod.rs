//! Arithmetic lattices: `PSL2(Z)`, `Gamma_0(p)` and `PSL2(Z[i])`, their cusp
//! data, embeddings into `SO_0(d,1)` and double-coset spectra.
//!
//! Group elements act on the half-space model through Hermitian matrices
//! `P(x, y) = (1/y) [[|x|^2 + y^2, x], [conj x, 1]]`, with `P(g z) = g P(z) g^*`.
//! In hyperboloid coordinates `P = [[2(xi_d - xi_0), xi_1 + i xi_2], [xi_1 - i xi_2, (xi_d + xi_0)/2]]`,
//! which gives the linear map on `R^{d+1}`.

pub mod gaussian;

use crate::hypgeom::{IsometryMatrix, LORENTZ_TOL};
use gaussian::GaussInt;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("matrix has determinant {0}, expected 1")]
    NotUnimodular(f64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("unknown lattice id '{0}' (expected sl2z, gamma0(p) or gaussian)")]
    UnknownLattice(String),
    #[error("cusp index {0} out of range for {1} cusps")]
    CuspIndex(usize, usize),
    #[error("lambda_max = {requested} exceeds the enumeration budget {cap}")]
    Budget { requested: f64, cap: f64 },
}

pub type Mat2R = [[f64; 2]; 2];
pub type Mat2C = [[Complex64; 2]; 2];

/// Integer 2x2 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Mat2 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1, b: 0, c: 0, d: 1 };

    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> i64 {
        self.a + self.d
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Inverse of a determinant-one matrix.
    pub fn inv(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn neg(&self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }

    /// Representative of `{A, -A}` whose first nonzero entry of `(c, d, a, b)` is positive.
    pub fn psl(&self) -> Mat2 {
        let key = [self.c, self.d, self.a, self.b];
        match key.iter().find(|v| **v != 0) {
            Some(v) if *v < 0 => self.neg(),
            _ => *self,
        }
    }

    pub fn height(&self) -> i64 {
        [self.a, self.b, self.c, self.d].iter().map(|v| v.abs()).max().unwrap()
    }

    pub fn to_real(&self) -> Mat2R {
        [[self.a as f64, self.b as f64], [self.c as f64, self.d as f64]]
    }
}

/// 2x2 matrix over `Z[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GMat2 {
    pub a: GaussInt,
    pub b: GaussInt,
    pub c: GaussInt,
    pub d: GaussInt,
}

impl GMat2 {
    pub fn det(&self) -> GaussInt {
        self.a * self.d - self.b * self.c
    }

    pub fn inv(&self) -> GMat2 {
        GMat2 { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn psl(&self) -> GMat2 {
        let key = [self.c.re, self.c.im, self.d.re, self.d.im, self.a.re, self.a.im, self.b.re, self.b.im];
        match key.iter().find(|v| **v != 0) {
            Some(v) if *v < 0 => GMat2 { a: -self.a, b: -self.b, c: -self.c, d: -self.d },
            _ => *self,
        }
    }

    pub fn height(&self) -> i64 {
        [self.a, self.b, self.c, self.d].iter().map(|v| v.height()).max().unwrap()
    }

    pub fn to_complex(&self) -> Mat2C {
        [[self.a.to_complex(), self.b.to_complex()], [self.c.to_complex(), self.d.to_complex()]]
    }
}

fn hermitian_to_xi(h: &Mat2C, d: usize) -> Vec<f64> {
    let (h11, h12, h22) = (h[0][0].re, h[0][1], h[1][1].re);
    let mut xi = vec![0.0; d + 1];
    xi[0] = h22 - 0.25 * h11;
    xi[d] = h22 + 0.25 * h11;
    xi[1] = h12.re;
    if d == 3 {
        xi[2] = h12.im;
    }
    xi
}

fn xi_to_hermitian(xi: &[f64]) -> Mat2C {
    let d = xi.len() - 1;
    let w = Complex64::new(xi[1], if d == 3 { xi[2] } else { 0.0 });
    [[Complex64::from(2.0 * (xi[d] - xi[0])), w], [w.conj(), Complex64::from(0.5 * (xi[d] + xi[0]))]]
}

fn conj_action(g: &Mat2C, h: &Mat2C) -> Mat2C {
    let mut gh = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            gh[i][j] = g[i][0] * h[0][j] + g[i][1] * h[1][j];
        }
    }
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = gh[i][0] * g[j][0].conj() + gh[i][1] * g[j][1].conj();
        }
    }
    out
}

fn embed(g: &Mat2C, d: usize) -> IsometryMatrix {
    let n = d + 1;
    let mut cols = vec![vec![0.0; n]; n];
    for (j, col) in cols.iter_mut().enumerate() {
        let mut e = vec![0.0; n];
        e[j] = 1.0;
        *col = hermitian_to_xi(&conj_action(g, &xi_to_hermitian(&e)), d);
    }
    let rows = (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect();
    IsometryMatrix::from_rows(rows).expect("square")
}

/// `SL2(R) -> SO_0(2,1)`, equivariant with the Moebius action on the upper half-plane.
pub fn embed_sl2r(m: &Mat2R) -> Result<IsometryMatrix, LatticeError> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().fold(1.0f64, |s, v| s.max(v.abs()));
    if (det - 1.0).abs() > LORENTZ_TOL * scale * scale {
        return Err(LatticeError::NotUnimodular(det));
    }
    let g = m.map(|r| r.map(Complex64::from));
    Ok(embed(&g, 2))
}

/// `SL2(C) -> SO_0(3,1)`, equivariant with the quaternionic Moebius action on
/// upper half-space.
pub fn embed_sl2c(m: &Mat2C) -> Result<IsometryMatrix, LatticeError> {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let scale = m.iter().flatten().fold(1.0f64, |s, v| s.max(v.norm()));
    if (det - 1.0).norm() > LORENTZ_TOL * scale * scale {
        return Err(LatticeError::NotUnimodular(det.norm()));
    }
    Ok(embed(m, 3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeId {
    #[serde(rename = "sl2z")]
    SL2Z,
    #[serde(rename = "gamma0")]
    Gamma0(u64),
    #[serde(rename = "gaussian")]
    SL2ZiGaussian,
}

impl fmt::Display for LatticeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeId::SL2Z => write!(f, "sl2z"),
            LatticeId::Gamma0(p) => write!(f, "gamma0({p})"),
            LatticeId::SL2ZiGaussian => write!(f, "gaussian"),
        }
    }
}

impl FromStr for LatticeId {
    type Err = LatticeError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        match t.as_str() {
            "sl2z" | "psl2z" => return Ok(LatticeId::SL2Z),
            "gaussian" | "sl2zi" | "sl2zigaussian" | "psl2zi" => return Ok(LatticeId::SL2ZiGaussian),
            _ => {}
        }
        let digits = t
            .strip_prefix("gamma0")
            .map(|r| r.trim_start_matches(['(', '_', '-']).trim_end_matches(')'))
            .ok_or_else(|| LatticeError::UnknownLattice(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| LatticeError::UnknownLattice(s.to_string()))?;
        if !is_prime(p) {
            return Err(LatticeError::NotPrime(p));
        }
        Ok(LatticeId::Gamma0(p))
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspDatum {
    pub name: String,
    pub scaling_element: IsometryMatrix,
    /// Translation lattice of the normalized cusp, as basis vectors in `R^{d-1}`.
    pub translation_lattice: Vec<Vec<f64>>,
    /// `vol(Gamma_N \ N)` in the normalized coordinates.
    pub volume: f64,
    /// Classical cusp width before normalization.
    pub width: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatticeModel {
    pub id: LatticeId,
    pub d: usize,
    pub kappa: usize,
    pub cusps: Vec<CuspDatum>,
}

fn covolume(basis: &[Vec<f64>]) -> f64 {
    match basis.len() {
        1 => basis[0][0].abs(),
        2 => (basis[0][0] * basis[1][1] - basis[0][1] * basis[1][0]).abs(),
        _ => f64::NAN,
    }
}

impl LatticeModel {
    pub fn new(id: LatticeId) -> Result<Self, LatticeError> {
        let cusp = |name: &str, k: IsometryMatrix, basis: Vec<Vec<f64>>, width| CuspDatum {
            name: name.into(),
            scaling_element: k,
            volume: covolume(&basis),
            translation_lattice: basis,
            width,
        };
        Ok(match id {
            LatticeId::SL2Z => LatticeModel {
                id,
                d: 2,
                kappa: 1,
                cusps: vec![cusp("inf", IsometryMatrix::identity(2), vec![vec![1.0]], 1)],
            },
            LatticeId::Gamma0(p) => {
                if !is_prime(p) {
                    return Err(LatticeError::NotPrime(p));
                }
                let sigma0 = embed_sl2r(&fricke_scaling(p))?;
                LatticeModel {
                    id,
                    d: 2,
                    kappa: 2,
                    cusps: vec![
                        cusp("inf", IsometryMatrix::identity(2), vec![vec![1.0]], 1),
                        cusp("0", sigma0, vec![vec![1.0]], p),
                    ],
                }
            }
            LatticeId::SL2ZiGaussian => LatticeModel {
                id,
                d: 3,
                kappa: 1,
                cusps: vec![cusp("inf", IsometryMatrix::identity(3), vec![vec![1.0, 0.0], vec![0.0, 1.0]], 1)],
            },
        })
    }

    pub fn sl2z() -> Self {
        Self::new(LatticeId::SL2Z).expect("valid")
    }

    pub fn gamma0(p: u64) -> Result<Self, LatticeError> {
        Self::new(LatticeId::Gamma0(p))
    }

    pub fn gaussian() -> Self {
        Self::new(LatticeId::SL2ZiGaussian).expect("valid")
    }

    fn check_cusps(&self, i: usize, j: usize) -> Result<(), LatticeError> {
        for k in [i, j] {
            if k >= self.kappa {
                return Err(LatticeError::CuspIndex(k, self.kappa));
            }
        }
        Ok(())
    }
}

/// Scaling element of the cusp 0 of `Gamma_0(p)`: `[[0, -1/sqrt p], [sqrt p, 0]]`.
pub fn fricke_scaling(p: u64) -> Mat2R {
    let r = (p as f64).sqrt();
    [[0.0, -1.0 / r], [r, 0.0]]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    pub lambda: f64,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DoubleCosetSpectrum {
    pub entries: Vec<SpectrumEntry>,
}

impl DoubleCosetSpectrum {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn min_lambda(&self) -> Option<f64> {
        self.entries.first().map(|e| e.lambda)
    }

    pub fn write_csv(&self, path: &std::path::Path) -> std::io::Result<()> {
        let rows: Vec<Vec<String>> =
            self.entries.iter().map(|e| vec![crate::io::fmt(e.lambda), e.count.to_string()]).collect();
        crate::io::write_csv_atomic(path, &["lambda", "count"], &rows)
    }
}

/// Largest `lambda_max` accepted per model.
pub fn lambda_budget(id: LatticeId) -> f64 {
    match id {
        LatticeId::SL2Z | LatticeId::Gamma0(_) => 1e8,
        LatticeId::SL2ZiGaussian => 2e4,
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Number of `d` in `[0, c)` with `gcd(c, d) = 1`, by counting pairs.
fn coprime_residue_count(c: i64) -> u64 {
    if c == 1 {
        return 1;
    }
    (0..c).filter(|&d| gcd(c, d) == 1).count() as u64
}

/// Spectrum `{lambda(gamma) > 0}` of the double cosets `Gamma_P \ k_i^{-1} Gamma k_j / Gamma_N`
/// with `lambda <= lambda_max`, ascending.
pub fn enumerate_double_cosets(
    model: &LatticeModel,
    i: usize,
    j: usize,
    lambda_max: f64,
) -> Result<DoubleCosetSpectrum, LatticeError> {
    model.check_cusps(i, j)?;
    let cap = lambda_budget(model.id);
    if lambda_max > cap {
        return Err(LatticeError::Budget { requested: lambda_max, cap });
    }
    if lambda_max < 1.0 {
        return Ok(DoubleCosetSpectrum::default());
    }
    let entries: Vec<SpectrumEntry> = match model.id {
        LatticeId::SL2Z => classes_c_squared(lambda_max, 1),
        LatticeId::Gamma0(p) => {
            let p = p as i64;
            if i == j {
                classes_c_squared(lambda_max, p)
            } else {
                // lambda = p d^2 with p not dividing d
                let dmax = (lambda_max / p as f64).sqrt().floor() as i64;
                (1..=dmax)
                    .into_par_iter()
                    .filter(|d| d % p != 0)
                    .map(|d| SpectrumEntry { lambda: (p * d * d) as f64, count: coprime_residue_count(d) })
                    .collect()
            }
        }
        LatticeId::SL2ZiGaussian => gaussian_classes(lambda_max),
    };
    Ok(DoubleCosetSpectrum { entries })
}

/// Bottom rows `(c, d)` with `m | c`, `c >= 1`, `d mod c` coprime: `lambda = c^2`.
fn classes_c_squared(lambda_max: f64, m: i64) -> Vec<SpectrumEntry> {
    let cmax = lambda_max.sqrt().floor() as i64;
    (1..=cmax)
        .into_par_iter()
        .filter(|c| c % m == 0)
        .map(|c| SpectrumEntry { lambda: (c * c) as f64, count: coprime_residue_count(c) })
        .collect()
}

fn gaussian_classes(lambda_max: f64) -> Vec<SpectrumEntry> {
    let nmax = lambda_max.floor() as i64;
    let r = (nmax as f64).sqrt().floor() as i64;
    let mut reps: Vec<GaussInt> = Vec::new();
    for re in 1..=r {
        for im in 0..=r {
            let c = GaussInt::new(re, im);
            if c.norm() <= nmax {
                reps.push(c);
            }
        }
    }
    let mut counted: Vec<(i64, u64)> =
        reps.par_iter().map(|&c| (c.norm(), gaussian::totient_by_residues(c))).collect();
    counted.sort();
    let mut entries: Vec<SpectrumEntry> = Vec::new();
    for (n, k) in counted {
        match entries.last_mut() {
            Some(e) if e.lambda == n as f64 => e.count += k,
            _ => entries.push(SpectrumEntry { lambda: n as f64, count: k }),
        }
    }
    entries
}

/// Explicit double-coset representatives `k_i^{-1} gamma k_j` (as complex 2x2
/// matrices) together with their `lambda`, for `lambda <= lambda_max`.
pub fn double_coset_representatives(
    model: &LatticeModel,
    i: usize,
    j: usize,
    lambda_max: f64,
) -> Result<Vec<(f64, Mat2C)>, LatticeError> {
    model.check_cusps(i, j)?;
    let mut out = Vec::new();
    match model.id {
        LatticeId::SL2Z | LatticeId::Gamma0(_) => {
            let p = match model.id {
                LatticeId::Gamma0(p) => p as i64,
                _ => 1,
            };
            let nmax = lambda_max.sqrt().floor() as i64;
            let mut gammas = Vec::new();
            for n in 1..=nmax {
                for r in 0..n {
                    if gcd(n, r) != 1 {
                        continue;
                    }
                    match (i, j) {
                        (0, 0) | (1, 1) if n % p == 0 => {
                            // bottom row (c, d) = (n, r)
                            let (_, x, y) = ext_gcd(r, n);
                            let w = Mat2::new(x, -y, n, r);
                            let g = if i == 1 { Mat2::new(w.d, -w.c / p, -p * w.b, w.a) } else { w };
                            gammas.push(g);
                        }
                        (0, 1) if n % p != 0 => {
                            // d = n, c = p r
                            let c = p * r;
                            let (_, x, y) = ext_gcd(n, c);
                            gammas.push(Mat2::new(x, -y, c, n));
                        }
                        (1, 0) if n % p != 0 => {
                            // a = n, b = r
                            let (_, x, y) = ext_gcd(n, r * p);
                            gammas.push(Mat2::new(n, r, -p * y, x));
                        }
                        _ => {}
                    }
                }
            }
            for g in gammas {
                debug_assert_eq!(g.det(), 1);
                debug_assert_eq!(g.c % p, 0);
                let m = conjugate_by_cusps(&g.to_real(), p, i, j);
                let lam = m[1][0] * m[1][0];
                if lam <= lambda_max * (1.0 + 1e-12) {
                    out.push((lam, m.map(|r| r.map(Complex64::from))));
                }
            }
        }
        LatticeId::SL2ZiGaussian => {
            let r = lambda_max.sqrt().floor() as i64;
            for re in 1..=r {
                for im in 0..=r {
                    let c = GaussInt::new(re, im);
                    if c.norm() as f64 > lambda_max {
                        continue;
                    }
                    for d in gaussian::residues(c) {
                        if !gaussian::gcd(c, d).is_unit() {
                            continue;
                        }
                        if let Some(g) = complete_gaussian(c, d) {
                            out.push((c.norm() as f64, g.to_complex()));
                        }
                    }
                }
            }
        }
    }
    out.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(out)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// Completes a coprime bottom row `(c, d)` over `Z[i]` to a matrix of determinant 1.
fn complete_gaussian(c: GaussInt, d: GaussInt) -> Option<GMat2> {
    // extended Euclid: find a, b with a d - b c = 1
    let (mut r0, mut r1) = (d, c);
    let (mut s0, mut s1) = (gaussian::ONE, gaussian::ZERO);
    let (mut t0, mut t1) = (gaussian::ZERO, gaussian::ONE);
    while !r1.is_zero() {
        let rem = r0.rem_round(r1);
        let q = (r0 - rem).div_exact(r1)?;
        (r0, r1) = (r1, rem);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    // s0 d + t0 c = r0, a unit
    let u = gaussian::ONE.div_exact(r0)?;
    let a = s0 * u;
    let b = -(t0 * u);
    let g = GMat2 { a, b, c, d };
    (g.det() == gaussian::ONE).then_some(g)
}

/// `k_i^{-1} g k_j` for the two cusps of `Gamma_0(p)` (or identity scalings when `p = 1`).
fn conjugate_by_cusps(g: &Mat2R, p: i64, i: usize, j: usize) -> Mat2R {
    let id = [[1.0, 0.0], [0.0, 1.0]];
    let s = if p > 1 { fricke_scaling(p as u64) } else { id };
    let s_inv = [[s[1][1], -s[0][1]], [-s[1][0], s[0][0]]];
    let left = if i == 1 { s_inv } else { id };
    let right = if j == 1 { s } else { id };
    mul_r(&mul_r(&left, g), &right)
}

fn mul_r(x: &Mat2R, y: &Mat2R) -> Mat2R {
    [
        [x[0][0] * y[0][0] + x[0][1] * y[1][0], x[0][0] * y[0][1] + x[0][1] * y[1][1]],
        [x[1][0] * y[0][0] + x[1][1] * y[1][0], x[1][0] * y[0][1] + x[1][1] * y[1][1]],
    ]
}

/// Element of a lattice in its defining 2x2 model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Real(Mat2),
    Gaussian(GMat2),
}

impl GroupElement {
    pub fn embed(&self) -> IsometryMatrix {
        match self {
            GroupElement::Real(m) => embed_sl2r(&m.to_real()).expect("det 1"),
            GroupElement::Gaussian(m) => embed_sl2c(&m.to_complex()).expect("det 1"),
        }
    }

    pub fn height(&self) -> i64 {
        match self {
            GroupElement::Real(m) => m.height(),
            GroupElement::Gaussian(m) => m.height(),
        }
    }
}

/// All elements (mod +-1) whose 2x2 entries have height at most `bound`, in a
/// deterministic order: by height, then lexicographically. The identity is
/// always included, so `bound = 0` yields the identity alone.
pub fn group_elements(model: &LatticeModel, bound: u64) -> Vec<GroupElement> {
    let b = bound as i64;
    let mut set = std::collections::BTreeSet::new();
    match model.id {
        LatticeId::SL2Z | LatticeId::Gamma0(_) => {
            set.insert(GroupElement::Real(Mat2::IDENTITY));
            let p = if let LatticeId::Gamma0(p) = model.id { p as i64 } else { 1 };
            for a in -b..=b {
                for bb in -b..=b {
                    for c in -b..=b {
                        if c % p != 0 {
                            continue;
                        }
                        let ds: Vec<i64> = if a != 0 {
                            let num = 1 + bb * c;
                            if num % a == 0 { vec![num / a] } else { vec![] }
                        } else if bb * c == -1 {
                            (-b..=b).collect()
                        } else {
                            vec![]
                        };
                        for d in ds {
                            if d.abs() <= b {
                                set.insert(GroupElement::Real(Mat2::new(a, bb, c, d).psl()));
                            }
                        }
                    }
                }
            }
        }
        LatticeId::SL2ZiGaussian => {
            set.insert(GroupElement::Gaussian(GMat2 {
                a: gaussian::ONE,
                b: gaussian::ZERO,
                c: gaussian::ZERO,
                d: gaussian::ONE,
            }));
            let boxed: Vec<GaussInt> =
                (-b..=b).flat_map(|x| (-b..=b).map(move |y| GaussInt::new(x, y))).collect();
            for &a in &boxed {
                for &bb in &boxed {
                    for &c in &boxed {
                        let ds: Vec<GaussInt> = if !a.is_zero() {
                            (gaussian::ONE + bb * c).div_exact(a).into_iter().collect()
                        } else if bb * c == -gaussian::ONE {
                            boxed.clone()
                        } else {
                            vec![]
                        };
                        for d in ds {
                            if d.height() <= b {
                                set.insert(GroupElement::Gaussian(GMat2 { a, b: bb, c, d }.psl()));
                            }
                        }
                    }
                }
            }
        }
    }
    let mut v: Vec<GroupElement> = set.into_iter().collect();
    v.sort_by_key(|g| (g.height(), *g));
    v
}

/// [`group_elements`], embedded as isometry matrices.
pub fn enumerate_group_elements(model: &LatticeModel, height_bound: u64) -> Vec<IsometryMatrix> {
    group_elements(model, height_bound).iter().map(GroupElement::embed).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypgeom::{action_params, apply_isometry, lorentz_check, UpperHalfSpacePoint};
    use approx::assert_abs_diff_eq;

    fn euler_phi(mut n: u64) -> u64 {
        let mut result = n;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                while n % p == 0 {
                    n /= p;
                }
                result -= result / p;
            }
            p += 1;
        }
        if n > 1 {
            result -= result / n;
        }
        result
    }

    #[test]
    fn embeddings_act_as_moebius() {
        let t = embed_sl2r(&[[1.0, 1.0], [0.0, 1.0]]).unwrap();
        assert!(lorentz_check(&t));
        let z = apply_isometry(&t, &UpperHalfSpacePoint::new(vec![0.0], 1.0).unwrap()).unwrap();
        assert_abs_diff_eq!(z.x[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(z.y, 1.0, epsilon = 1e-12);
        let s = embed_sl2r(&[[0.0, -1.0], [1.0, 0.0]]).unwrap();
        let z = apply_isometry(&s, &UpperHalfSpacePoint::new(vec![0.0], 2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(z.x[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(z.y, 0.5, epsilon = 1e-12);
        assert_eq!(embed_sl2r(&[[1.0, 0.0], [0.0, 1.0]]).unwrap(), IsometryMatrix::identity(2));
        assert!(embed_sl2r(&[[2.0, 0.0], [0.0, 1.0]]).is_err());
    }

    #[test]
    fn gaussian_inversion_height() {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        let s = embed_sl2c(&[[zero, -one], [one, zero]]).unwrap();
        assert!(lorentz_check(&s));
        let z = apply_isometry(&s, &UpperHalfSpacePoint::new(vec![0.0, 0.0], 2.0).unwrap()).unwrap();
        assert_abs_diff_eq!(z.y, 0.5, epsilon = 1e-12);
    }

    #[test]
    fn action_params_of_embedding() {
        let a = embed_sl2r(&[[2.0, 3.0], [3.0, 5.0]]).unwrap();
        match action_params(&a).unwrap() {
            crate::hypgeom::ActionParams::Inversion { lambda, eta } => {
                assert_abs_diff_eq!(lambda, 9.0, epsilon = 1e-10);
                assert_abs_diff_eq!(eta[0], 5.0 / 3.0, epsilon = 1e-10);
            }
            other => panic!("{other:?}"),
        }
        let u = embed_sl2r(&[[1.0, 0.7], [0.0, 1.0]]).unwrap();
        assert_eq!(action_params(&u).unwrap().lambda(), 0.0);
    }

    #[test]
    fn sl2z_spectrum_examples() {
        let m = LatticeModel::sl2z();
        let s = enumerate_double_cosets(&m, 0, 0, 10.0).unwrap();
        let got: Vec<(f64, u64)> = s.entries.iter().map(|e| (e.lambda, e.count)).collect();
        assert_eq!(got, vec![(1.0, 1), (4.0, 1), (9.0, 2)]);
        assert!(enumerate_double_cosets(&m, 0, 0, 0.5).unwrap().is_empty());
        assert!(enumerate_double_cosets(&m, 0, 0, 1e9).is_err());
    }

    #[test]
    fn sl2z_counts_are_totients() {
        let s = enumerate_double_cosets(&LatticeModel::sl2z(), 0, 0, 400.0).unwrap();
        for (c, e) in (1..).zip(&s.entries) {
            assert_eq!(e.lambda, (c * c) as f64);
            assert_eq!(e.count, euler_phi(c));
        }
    }

    #[test]
    fn gamma0_spectra() {
        let m = LatticeModel::gamma0(2).unwrap();
        let s = enumerate_double_cosets(&m, 0, 0, 17.0).unwrap();
        let got: Vec<(f64, u64)> = s.entries.iter().map(|e| (e.lambda, e.count)).collect();
        assert_eq!(got, vec![(4.0, 1), (16.0, 2)]);
        for (i, j) in [(0, 1), (1, 0)] {
            let off = enumerate_double_cosets(&m, i, j, 100.0).unwrap();
            assert!(off.min_lambda().unwrap() > 0.0);
            let got: Vec<(f64, u64)> = off.entries.iter().map(|e| (e.lambda, e.count)).collect();
            assert_eq!(got, vec![(2.0, 1), (18.0, 2), (50.0, 4), (98.0, 6)]);
        }
        assert_eq!(enumerate_double_cosets(&m, 1, 1, 17.0).unwrap(), s);
        assert!(enumerate_double_cosets(&m, 0, 1, 1.5).unwrap().is_empty());
        assert!(enumerate_double_cosets(&m, 2, 0, 10.0).is_err());
    }

    #[test]
    fn representatives_match_recorded_lambda() {
        for (model, pairs) in [
            (LatticeModel::sl2z(), vec![(0, 0)]),
            (LatticeModel::gamma0(3).unwrap(), vec![(0, 0), (0, 1), (1, 0), (1, 1)]),
        ] {
            for (i, j) in pairs {
                let reps = double_coset_representatives(&model, i, j, 200.0).unwrap();
                let spec = enumerate_double_cosets(&model, i, j, 200.0).unwrap();
                let total: u64 = spec.entries.iter().map(|e| e.count).sum();
                assert_eq!(reps.len() as u64, total, "{:?} ({i},{j})", model.id);
                for (lam, m) in reps {
                    let a = embed_sl2r(&m.map(|r| r.map(|z| z.re))).unwrap();
                    assert_abs_diff_eq!(action_params(&a).unwrap().lambda(), lam, epsilon = 1e-9 * lam);
                    assert!(spec.entries.iter().any(|e| (e.lambda - lam).abs() < 1e-9 * lam));
                }
            }
        }
    }

    #[test]
    fn gaussian_representatives_match() {
        let model = LatticeModel::gaussian();
        let reps = double_coset_representatives(&model, 0, 0, 30.0).unwrap();
        let spec = enumerate_double_cosets(&model, 0, 0, 30.0).unwrap();
        assert_eq!(reps.len() as u64, spec.entries.iter().map(|e| e.count).sum::<u64>());
        for (lam, m) in reps.iter().take(40) {
            let a = embed_sl2c(m).unwrap();
            assert_abs_diff_eq!(action_params(&a).unwrap().lambda(), *lam, epsilon = 1e-9 * lam);
        }
    }

    #[test]
    fn gaussian_spectrum_small() {
        // a(n) = sum over c mod units with N(c) = n of the Gaussian totient
        let s = enumerate_double_cosets(&LatticeModel::gaussian(), 0, 0, 10.0).unwrap();
        let got: Vec<(f64, u64)> = s.entries.iter().map(|e| (e.lambda, e.count)).collect();
        assert_eq!(got, vec![(1.0, 1), (2.0, 1), (4.0, 2), (5.0, 8), (8.0, 4), (9.0, 8), (10.0, 8)]);
    }

    #[test]
    fn element_enumeration() {
        let m = LatticeModel::sl2z();
        assert_eq!(group_elements(&m, 0), vec![GroupElement::Real(Mat2::IDENTITY)]);
        let one = group_elements(&m, 1);
        let mut brute = std::collections::BTreeSet::new();
        for a in -1..=1 {
            for b in -1..=1 {
                for c in -1..=1 {
                    for d in -1..=1 {
                        let g = Mat2::new(a, b, c, d);
                        if g.det() == 1 {
                            brute.insert(g.psl());
                        }
                    }
                }
            }
        }
        assert_eq!(one.len(), brute.len());
        assert_eq!(one.len(), 10);
        assert!(one.iter().all(|g| lorentz_check(&g.embed())));
        assert_eq!(group_elements(&m, 1), one);
    }

    #[test]
    fn gaussian_elements_closed_under_inverse() {
        let els = group_elements(&LatticeModel::gaussian(), 1);
        let set: std::collections::HashSet<_> = els.iter().cloned().collect();
        for g in &els {
            if let GroupElement::Gaussian(m) = g {
                assert!(set.contains(&GroupElement::Gaussian(m.inv().psl())));
            }
        }
        assert!(els.len() > 10);
    }

    #[test]
    fn parse_ids() {
        assert_eq!("sl2z".parse::<LatticeId>().unwrap(), LatticeId::SL2Z);
        assert_eq!("gamma0(2)".parse::<LatticeId>().unwrap(), LatticeId::Gamma0(2));
        assert_eq!("Gamma0_5".parse::<LatticeId>().unwrap(), LatticeId::Gamma0(5));
        assert!("gamma0(4)".parse::<LatticeId>().is_err());
        assert!("foo".parse::<LatticeId>().is_err());
    }
}
