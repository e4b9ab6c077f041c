//! Hyperbolic d-space: the hyperboloid model `L^d` in `R^{d+1}` with the
//! form `J = diag(1, ..., 1, -1)`, the upper half-space model, and the
//! Lorentz-group action written in half-space coordinates.
//!
//! With `alpha_j = a_{0j} + a_{dj}` the height of `g.z` satisfies
//! `y(z) = y(g.z) * lambda (y^2 + |x + eta|^2)` when `alpha_d != alpha_0`,
//! where `lambda = (alpha_d - alpha_0)/8`, and `y(z) = alpha y(g.z)` otherwise.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const LORENTZ_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HypgeomError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point is not on the upper sheet of the hyperboloid (residual {0:e})")]
    NotOnHyperboloid(f64),
    #[error("height must be positive, got {0}")]
    NonPositiveHeight(f64),
    #[error("matrix is not in SO_0(d,1) (residual {0:e})")]
    NotLorentz(f64),
    #[error("action identity violated by {0:e}")]
    IdentityViolated(f64),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UpperHalfSpacePoint {
    pub x: Vec<f64>,
    pub y: f64,
}

impl UpperHalfSpacePoint {
    pub fn new(x: Vec<f64>, y: f64) -> Result<Self, HypgeomError> {
        if !(y > 0.0) || !y.is_finite() {
            return Err(HypgeomError::NonPositiveHeight(y));
        }
        Ok(UpperHalfSpacePoint { x, y })
    }

    pub fn dimension(&self) -> usize {
        self.x.len() + 1
    }

    fn x_norm_sqr(&self) -> f64 {
        self.x.iter().map(|v| v * v).sum()
    }
}

/// Square matrix of size `d + 1`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsometryMatrix {
    d: usize,
    entries: Vec<f64>,
}

impl IsometryMatrix {
    /// Wraps raw entries without checking the Lorentz condition.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, HypgeomError> {
        let n = rows.len();
        if n < 2 {
            return Err(HypgeomError::DimensionMismatch { expected: 2, got: n });
        }
        if let Some(r) = rows.iter().find(|r| r.len() != n) {
            return Err(HypgeomError::DimensionMismatch { expected: n, got: r.len() });
        }
        Ok(IsometryMatrix { d: n - 1, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(d: usize) -> Self {
        let n = d + 1;
        let mut entries = vec![0.0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1.0;
        }
        IsometryMatrix { d, entries }
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * (self.d + 1) + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        let n = self.d + 1;
        self.entries[i * n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.d + 1).map(|r| r.to_vec()).collect()
    }

    pub fn sup_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn mul(&self, other: &IsometryMatrix) -> IsometryMatrix {
        assert_eq!(self.d, other.d, "dimension mismatch");
        let n = self.d + 1;
        let mut out = IsometryMatrix { d: self.d, entries: vec![0.0; n * n] };
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, (0..n).map(|k| self.get(i, k) * other.get(k, j)).sum());
            }
        }
        out
    }

    /// Inverse of a Lorentz matrix, `J A^T J`.
    pub fn lorentz_inverse(&self) -> IsometryMatrix {
        let n = self.d + 1;
        let sign = |i: usize| if i == self.d { -1.0 } else { 1.0 };
        let mut out = IsometryMatrix { d: self.d, entries: vec![0.0; n * n] };
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, sign(i) * self.get(j, i) * sign(j));
            }
        }
        out
    }

    pub fn apply_linear(&self, xi: &[f64]) -> Vec<f64> {
        let n = self.d + 1;
        (0..n).map(|i| (0..n).map(|k| self.get(i, k) * xi[k]).sum()).collect()
    }

    fn determinant(&self) -> f64 {
        let n = self.d + 1;
        let mut m = self.entries.clone();
        let mut det = 1.0;
        for col in 0..n {
            let piv = (col..n).max_by(|&a, &b| m[a * n + col].abs().total_cmp(&m[b * n + col].abs())).unwrap();
            if m[piv * n + col] == 0.0 {
                return 0.0;
            }
            if piv != col {
                for k in 0..n {
                    m.swap(piv * n + k, col * n + k);
                }
                det = -det;
            }
            let p = m[col * n + col];
            det *= p;
            for r in col + 1..n {
                let factor = m[r * n + col] / p;
                for k in col..n {
                    m[r * n + k] -= factor * m[col * n + k];
                }
            }
        }
        det
    }

    /// `sup |A^T J A - J|`.
    pub fn lorentz_residual(&self) -> f64 {
        let n = self.d + 1;
        let sign = |i: usize| if i == self.d { -1.0 } else { 1.0 };
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let v: f64 = (0..n).map(|k| self.get(k, i) * sign(k) * self.get(k, j)).sum();
                let target = if i == j { sign(i) } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }
}

/// True when `A^T J A = J` (tolerance scaled by `|A|^2`), `det A = 1` and
/// `A` preserves the upper sheet.
pub fn lorentz_check(a: &IsometryMatrix) -> bool {
    let scale = a.sup_norm().powi(2).max(1.0);
    let d = a.dimension();
    a.lorentz_residual() < LORENTZ_TOL * scale
        && (a.determinant() - 1.0).abs() < LORENTZ_TOL * scale.powf(0.5 * (d as f64 + 1.0))
        && a.get(d, d) > 0.0
}

/// Hyperboloid to upper half-space.
pub fn iota(xi: &[f64]) -> Result<UpperHalfSpacePoint, HypgeomError> {
    if xi.len() < 3 {
        return Err(HypgeomError::DimensionMismatch { expected: 3, got: xi.len() });
    }
    let d = xi.len() - 1;
    let form: f64 = xi[..d].iter().map(|v| v * v).sum::<f64>() - xi[d] * xi[d];
    let scale = xi.iter().map(|v| v * v).sum::<f64>().max(1.0);
    if (form + 1.0).abs() > 1e-9 * scale || xi[d] <= 0.0 {
        return Err(HypgeomError::NotOnHyperboloid(form + 1.0));
    }
    let s = xi[0] + xi[d];
    let x = xi[1..d].iter().map(|v| 2.0 * v / s).collect();
    UpperHalfSpacePoint::new(x, 2.0 / s)
}

/// Upper half-space to hyperboloid.
pub fn iota_inv(z: &UpperHalfSpacePoint) -> Vec<f64> {
    let q = 0.25 * (z.y * z.y + z.x_norm_sqr());
    let mut xi = Vec::with_capacity(z.x.len() + 2);
    xi.push((1.0 - q) / z.y);
    xi.extend(z.x.iter().map(|v| v / z.y));
    xi.push((1.0 + q) / z.y);
    xi
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ActionParams {
    /// `y(z) = y(g.z) lambda (y^2 + |x + eta|^2)`.
    Inversion { lambda: f64, eta: Vec<f64> },
    /// `y(z) = alpha y(g.z)`.
    Similarity { alpha: f64 },
}

impl ActionParams {
    pub fn lambda(&self) -> f64 {
        match self {
            ActionParams::Inversion { lambda, .. } => *lambda,
            ActionParams::Similarity { .. } => 0.0,
        }
    }
}

pub fn action_params(a: &IsometryMatrix) -> Result<ActionParams, HypgeomError> {
    if !lorentz_check(a) {
        return Err(HypgeomError::NotLorentz(a.lorentz_residual()));
    }
    let d = a.dimension();
    let alpha: Vec<f64> = (0..=d).map(|j| a.get(0, j) + a.get(d, j)).collect();
    let gap = alpha[d] - alpha[0];
    let norm = a.sup_norm();
    if gap.abs() < 1e-12 * (1.0 + norm) {
        let stray = alpha[1..d].iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if stray > 1e-9 * (1.0 + norm) {
            return Err(HypgeomError::IdentityViolated(stray));
        }
        return Ok(ActionParams::Similarity { alpha: 0.5 * (alpha[0] + alpha[d]) });
    }
    let sq: f64 = alpha[1..d].iter().map(|v| v * v).sum();
    let defect = (alpha[d] + alpha[0]) - sq / gap;
    if defect.abs() > 1e-9 * (1.0 + norm * norm) {
        return Err(HypgeomError::IdentityViolated(defect));
    }
    let lambda = gap / 8.0;
    if lambda <= 0.0 {
        return Err(HypgeomError::IdentityViolated(lambda));
    }
    Ok(ActionParams::Inversion { lambda, eta: alpha[1..d].iter().map(|v| 2.0 * v / gap).collect() })
}

pub fn apply_isometry(a: &IsometryMatrix, z: &UpperHalfSpacePoint) -> Result<UpperHalfSpacePoint, HypgeomError> {
    if z.dimension() != a.dimension() {
        return Err(HypgeomError::DimensionMismatch { expected: a.dimension(), got: z.dimension() });
    }
    let xi = iota_inv(z);
    let out = a.apply_linear(&xi);
    let s = out[0] + out[a.dimension()];
    if !(s > 0.0) {
        return Err(HypgeomError::NotOnHyperboloid(s));
    }
    let x = out[1..a.dimension()].iter().map(|v| 2.0 * v / s).collect();
    UpperHalfSpacePoint::new(x, 2.0 / s)
}

/// Hyperbolic distance in the upper half-space model.
pub fn distance(p: &UpperHalfSpacePoint, q: &UpperHalfSpacePoint) -> f64 {
    let dx: f64 = p.x.iter().zip(&q.x).map(|(a, b)| (a - b) * (a - b)).sum();
    let dy = p.y - q.y;
    let arg = (dx + dy * dy) / (2.0 * p.y * q.y);
    // arccosh(1 + arg), stable for small arg
    (arg + (arg * (arg + 2.0)).sqrt()).ln_1p()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identity_is_lorentz_and_trivial() {
        let id = IsometryMatrix::identity(2);
        assert!(lorentz_check(&id));
        assert_eq!(action_params(&id).unwrap(), ActionParams::Similarity { alpha: 1.0 });
        let z = UpperHalfSpacePoint::new(vec![0.3], 1.7).unwrap();
        assert_eq!(apply_isometry(&id, &z).unwrap(), z);
    }

    #[test]
    fn lower_sheet_is_rejected() {
        let m = IsometryMatrix::from_rows(vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, -1.0]]).unwrap();
        assert!(!lorentz_check(&m));
        assert!(action_params(&m).is_err());
    }

    #[test]
    fn iota_values() {
        let z = UpperHalfSpacePoint::new(vec![0.0], 2.0).unwrap();
        assert_eq!(iota_inv(&z), vec![0.0, 0.0, 1.0]);
        assert_eq!(iota(&[0.0, 0.0, 1.0]).unwrap(), z);
        assert!(iota(&[0.0, 0.0, 2.0]).is_err());
        assert!(iota(&[0.0, 0.0, -1.0]).is_err());
    }

    #[test]
    fn iota_roundtrip_d3() {
        let z = UpperHalfSpacePoint::new(vec![-1.5, 0.25], 0.3).unwrap();
        let back = iota(&iota_inv(&z)).unwrap();
        assert_abs_diff_eq!(back.y, z.y, epsilon = 1e-12);
        for (a, b) in back.x.iter().zip(&z.x) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-12);
        }
    }

    #[test]
    fn distance_basics() {
        let p = UpperHalfSpacePoint::new(vec![0.0], 1.0).unwrap();
        let q = UpperHalfSpacePoint::new(vec![0.0], std::f64::consts::E).unwrap();
        assert_abs_diff_eq!(distance(&p, &q), 1.0, epsilon = 1e-14);
        assert_eq!(distance(&p, &p), 0.0);
    }
}
