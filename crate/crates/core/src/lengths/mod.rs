//! Primitive length spectra, the comparison statistics `D_L` and `d_L`, the
//! Ruelle and Selberg-type zeta products, and the perturbation quotient.

pub mod forms;

use crate::contour::{count_zeros, ContourError, Rectangle, WindingOptions};
use crate::lattices::{LatticeError, LatticeId, LatticeModel, Mat2};
use crate::numeric::dd::KahanSum;
use forms::{cycles, is_fundamental, isqrt};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use thiserror::Error;

pub const MAX_LENGTH: f64 = 15.0;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LengthsError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Contour(#[from] ContourError),
    #[error("length bound {0} exceeds the cap {MAX_LENGTH}")]
    Budget(f64),
    #[error("{0} has no length spectrum here")]
    Unsupported(LatticeId),
    #[error("Re s = {sigma} is not above the convergence abscissa {abscissa}")]
    OutsideConvergence { sigma: f64, abscissa: f64 },
    #[error("tail bound {bound:e} exceeds tolerance {tol:e}")]
    Tail { bound: f64, tol: f64 },
    #[error("evaluation at the lattice point {0}")]
    LatticePoint(Complex64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LengthSpectrumEntry {
    pub length: f64,
    pub multiplicity: u64,
    pub trace: i64,
}

/// `l = 2 arccosh(t/2)`.
pub fn trace_length(t: i64) -> f64 {
    2.0 * (t as f64 / 2.0).acosh()
}

/// Largest trace whose length stays at or below `l_max`.
fn trace_bound(l_max: f64) -> i64 {
    let mut t = (2.0 * (l_max / 2.0).cosh()).floor() as i64 + 1;
    while t >= 3 && trace_length(t) > l_max {
        t -= 1;
    }
    t
}

/// A primitive hyperbolic class of `PSL2(Z)`: a representative automorph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimitiveClass {
    pub trace: i64,
    pub representative: Mat2,
}

/// Primitive hyperbolic classes of `PSL2(Z)` of trace `t`. They correspond
/// to classes of forms `g Q` of discriminant `t^2 - 4` with `Q` primitive and
/// `(t, g)` the fundamental solution of `x^2 - D_0 y^2 = 4`, `D_0 = (t^2-4)/g^2`.
pub fn primitive_classes_of_trace(t: i64) -> Vec<PrimitiveClass> {
    let d = t * t - 4;
    let mut out = Vec::new();
    for g in 1..=isqrt(d) {
        if d % (g * g) != 0 {
            continue;
        }
        let d0 = d / (g * g);
        if d0 % 4 > 1 || !is_fundamental(d0, g) {
            continue;
        }
        for cyc in cycles(d0) {
            out.push(PrimitiveClass { trace: t, representative: cyc[0].automorph(t, g) });
        }
    }
    out
}

fn sl2z_classes(l_max: f64) -> Vec<PrimitiveClass> {
    (3..=trace_bound(l_max)).into_par_iter().flat_map_iter(primitive_classes_of_trace).collect()
}

fn collect(entries: impl IntoIterator<Item = (i64, u64)>) -> Vec<LengthSpectrumEntry> {
    let mut by_trace: BTreeMap<i64, u64> = BTreeMap::new();
    for (t, m) in entries {
        *by_trace.entry(t).or_insert(0) += m;
    }
    by_trace
        .into_iter()
        .map(|(trace, multiplicity)| LengthSpectrumEntry { length: trace_length(trace), multiplicity, trace })
        .collect()
}

/// Orbit sizes of `gamma` acting on `P^1(F_p)`.
pub fn projective_orbits(gamma: &Mat2, p: u64) -> Vec<usize> {
    let p = p as i64;
    let points: Vec<(i64, i64)> = (0..p).map(|x| (x, 1)).chain(std::iter::once((1, 0))).collect();
    let normalize = |(x, y): (i64, i64)| -> (i64, i64) {
        let (x, y) = (x.rem_euclid(p), y.rem_euclid(p));
        if y == 0 {
            (1, 0)
        } else {
            let inv = (1..p).find(|k| (k * y) % p == 1).unwrap();
            ((x * inv) % p, 1)
        }
    };
    let act = |(x, y): (i64, i64)| normalize((gamma.a * x + gamma.b * y, gamma.c * x + gamma.d * y));
    let mut seen = vec![false; points.len()];
    let index = |q: (i64, i64)| if q.1 == 0 { p as usize } else { q.0 as usize };
    let mut sizes = Vec::new();
    for start in 0..points.len() {
        if seen[start] {
            continue;
        }
        let mut k = 0;
        let mut q = points[start];
        loop {
            seen[index(q)] = true;
            k += 1;
            q = act(q);
            if q == points[start] {
                break;
            }
        }
        sizes.push(k);
    }
    sizes
}

/// Trace of `gamma^k` from the trace of `gamma`.
pub fn power_trace(t: i64, k: usize) -> i64 {
    let (mut prev, mut cur) = (2i64, t);
    for _ in 1..k {
        (prev, cur) = (cur, t * cur - prev);
    }
    if k == 0 {
        2
    } else {
        cur
    }
}

/// Complete multiset of primitive lengths `<= l_max`, keyed by trace.
///
/// For `Gamma_0(p)` each primitive class `gamma_0` of `PSL2(Z)` splits along
/// the orbits of `<gamma_0>` on `P^1(F_p)`; an orbit of size `k` is a primitive
/// class of `Gamma_0(p)` conjugate to `gamma_0^k`.
pub fn length_spectrum(model: &LatticeModel, l_max: f64) -> Result<Vec<LengthSpectrumEntry>, LengthsError> {
    if l_max > MAX_LENGTH {
        return Err(LengthsError::Budget(l_max));
    }
    match model.id {
        LatticeId::SL2Z => Ok(collect(sl2z_classes(l_max).into_iter().map(|c| (c.trace, 1)))),
        LatticeId::Gamma0(p) => {
            let pieces: Vec<(i64, u64)> = sl2z_classes(l_max)
                .par_iter()
                .flat_map_iter(|c| {
                    projective_orbits(&c.representative, p)
                        .into_iter()
                        .filter(|&k| k as f64 * trace_length(c.trace) <= l_max + 1e-12)
                        .map(|k| (power_trace(c.trace, k), 1))
                        .collect::<Vec<_>>()
                })
                .collect();
            Ok(collect(pieces))
        }
        id => Err(LengthsError::Unsupported(id)),
    }
}

fn gens(id: LatticeId) -> Result<Vec<Mat2>, LengthsError> {
    match id {
        LatticeId::SL2Z => Ok(vec![Mat2::new(0, -1, 1, 0), Mat2::new(1, 1, 0, 1)]),
        LatticeId::Gamma0(2) => Ok(vec![Mat2::new(1, 1, 0, 1), Mat2::new(1, 0, 2, 1)]),
        id => Err(LengthsError::Unsupported(id)),
    }
}

fn member(id: LatticeId, m: &Mat2) -> bool {
    match id {
        LatticeId::Gamma0(p) => m.c.rem_euclid(p as i64) == 0,
        _ => true,
    }
}

/// Group elements of trace `t` with entries bounded by `bound`.
fn matrices_of_trace(id: LatticeId, t: i64, bound: i64) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        let d = t - a;
        if d.abs() > bound {
            continue;
        }
        let bc = a * d - 1;
        for b in (-bound..=bound).filter(|&b| b != 0 && bc % b == 0) {
            let m = Mat2::new(a, b, bc / b, d);
            if m.c.abs() <= bound && member(id, &m) {
                out.push(m);
            }
        }
    }
    out
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        (parent[y], y) = (r, parent[y]);
    }
    r
}

/// Conjugacy classes among bounded matrices of trace `t`, joined under
/// conjugation by the generators and their inverses.
fn bounded_classes(id: LatticeId, t: i64, bound: i64) -> Result<(Vec<Mat2>, Vec<usize>), LengthsError> {
    let mats = matrices_of_trace(id, t, bound);
    let index: HashMap<Mat2, usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut parent: Vec<usize> = (0..mats.len()).collect();
    let g = gens(id)?;
    let conj: Vec<(Mat2, Mat2)> = g.iter().flat_map(|x| [(*x, x.inv()), (x.inv(), *x)]).collect();
    for (i, m) in mats.iter().enumerate() {
        for (x, xi) in &conj {
            if let Some(&j) = index.get(&x.mul(m).mul(xi)) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                parent[ri] = rj;
            }
        }
    }
    let roots = (0..mats.len()).map(|i| find(&mut parent, i)).collect();
    Ok((mats, roots))
}

/// Brute-force count of primitive hyperbolic classes for each trace
/// `3..=trace_max`, from bounded matrices joined under generator conjugation.
/// A class is imprimitive when it contains `delta^k`, `k >= 2`, for a bounded
/// `delta` of smaller trace.
pub fn brute_force_conjugacy_oracle(
    model: &LatticeModel,
    trace_max: i64,
    entry_bound: i64,
) -> Result<Vec<(i64, u64)>, LengthsError> {
    gens(model.id)?;
    let id = model.id;
    let rows: Vec<Result<Option<(i64, u64)>, LengthsError>> = (3..=trace_max)
        .into_par_iter()
        .map(|t| {
            let (mats, roots) = bounded_classes(id, t, entry_bound)?;
            let index: HashMap<Mat2, usize> = mats.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut classes: Vec<usize> = roots.clone();
            classes.sort_unstable();
            classes.dedup();
            let mut imprimitive = std::collections::HashSet::new();
            for t0 in 3..t {
                for k in 2.. {
                    let tk = power_trace(t0, k);
                    if tk > t {
                        break;
                    }
                    if tk == t {
                        for delta in matrices_of_trace(id, t0, entry_bound) {
                            let mut pw = delta;
                            for _ in 1..k {
                                pw = pw.mul(&delta);
                            }
                            if let Some(&j) = index.get(&pw) {
                                imprimitive.insert(roots[j]);
                            }
                        }
                    }
                }
            }
            let n = classes.iter().filter(|r| !imprimitive.contains(r)).count() as u64;
            Ok((n > 0).then_some((t, n)))
        })
        .collect();
    rows.into_iter().filter_map(|r| r.transpose()).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumComparison {
    pub t_grid: Vec<f64>,
    pub dl_values: Vec<f64>,
    pub dl_estimate: f64,
}

/// `D_L(T) = sum_{l <= T} |m_1(l) - m_2(l)|`, lengths matched by trace.
pub fn dl(spec1: &[LengthSpectrumEntry], spec2: &[LengthSpectrumEntry], t: f64) -> f64 {
    let mut diff: BTreeMap<i64, i64> = BTreeMap::new();
    for e in spec1.iter().filter(|e| e.length <= t) {
        *diff.entry(e.trace).or_insert(0) += e.multiplicity as i64;
    }
    for e in spec2.iter().filter(|e| e.length <= t) {
        *diff.entry(e.trace).or_insert(0) -= e.multiplicity as i64;
    }
    diff.values().map(|v| v.unsigned_abs() as f64).sum()
}

/// Least-squares slope of `log D_L` against `T` over the upper half of the
/// grid; `-inf` when `D_L` vanishes there.
pub fn dl_estimate(spec1: &[LengthSpectrumEntry], spec2: &[LengthSpectrumEntry], t_grid: &[f64]) -> SpectrumComparison {
    let dl_values: Vec<f64> = t_grid.iter().map(|&t| dl(spec1, spec2, t)).collect();
    let upper: Vec<(f64, f64)> = t_grid[t_grid.len() / 2..]
        .iter()
        .zip(&dl_values[t_grid.len() / 2..])
        .filter(|(_, &v)| v > 0.0)
        .map(|(&t, &v)| (t, v.ln()))
        .collect();
    let dl_estimate = match upper.len() {
        0 => f64::NEG_INFINITY,
        1 => 0.0,
        n => {
            let mt = upper.iter().map(|p| p.0).sum::<f64>() / n as f64;
            let my = upper.iter().map(|p| p.1).sum::<f64>() / n as f64;
            let sxy: f64 = upper.iter().map(|p| (p.0 - mt) * (p.1 - my)).sum();
            let sxx: f64 = upper.iter().map(|p| (p.0 - mt).powi(2)).sum();
            sxy / sxx
        }
    };
    SpectrumComparison { t_grid: t_grid.to_vec(), dl_values, dl_estimate }
}

/// `log(1 - w)`, accurate for small `w`.
fn log1m(w: Complex64) -> Complex64 {
    if w.norm() < 0.1 {
        let mut term = w;
        let mut sum = Complex64::new(0.0, 0.0);
        for k in 1..60 {
            sum -= term / k as f64;
            term *= w;
            if term.norm() < 1e-18 * sum.norm() {
                break;
            }
        }
        sum
    } else {
        (1.0 - w).ln()
    }
}

fn log_product<I>(factors: I) -> Complex64
where
    I: IntoIterator<Item = (f64, Complex64)>,
{
    let (mut re, mut im) = (KahanSum::default(), KahanSum::default());
    for (m, s_l) in factors {
        let v = m * log1m((-s_l).exp());
        re.add(v.re);
        im.add(v.im);
    }
    Complex64::new(re.value(), im.value())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EulerProduct {
    pub value: Complex64,
    /// Bound on `|log P - log P_truncated|` from lengths beyond `l_max`.
    pub tail_bound: f64,
}

fn check_region(s: Complex64) -> Result<(), LengthsError> {
    if s.re <= 1.0 {
        return Err(LengthsError::OutsideConvergence { sigma: s.re, abscissa: 1.0 });
    }
    Ok(())
}

/// `2 e^{(1-sigma) L} / ((sigma - 1) L)`, from `#{l <= x} <= 2 e^x / x`.
fn geodesic_tail(sigma: f64, l_max: f64) -> f64 {
    2.0 * ((1.0 - sigma) * l_max).exp() / ((sigma - 1.0) * l_max)
}

/// `R(s) = prod (1 - e^{-s l})^m` over the spectrum.
pub fn ruelle_zeta(spec: &[LengthSpectrumEntry], s: Complex64, l_max: f64) -> Result<EulerProduct, LengthsError> {
    check_region(s)?;
    let log = log_product(spec.iter().filter(|e| e.length <= l_max).map(|e| (e.multiplicity as f64, s * e.length)));
    Ok(EulerProduct { value: log.exp(), tail_bound: geodesic_tail(s.re, l_max) })
}

/// `Z(s) = prod_l prod_{a=0}^{a_max} (1 - e^{-(s+a) l})^m`.
pub fn surface_zeta(
    spec: &[LengthSpectrumEntry],
    s: Complex64,
    l_max: f64,
    a_max: usize,
) -> Result<EulerProduct, LengthsError> {
    check_region(s)?;
    let log = log_product(
        spec.iter()
            .filter(|e| e.length <= l_max)
            .flat_map(|e| (0..=a_max).map(move |a| (e.multiplicity as f64, (s + a as f64) * e.length))),
    );
    Ok(EulerProduct { value: log.exp(), tail_bound: 2.0 * geodesic_tail(s.re, l_max) })
}

/// `|R(s) - Z(s)/Z(s+1)|` with `Z(s)` truncated at `a_num` and `Z(s+1)` at
/// `a_den`; the factors telescope exactly when `a_den + 1 = a_num`.
pub fn zeta_identity_check(
    spec: &[LengthSpectrumEntry],
    s: Complex64,
    l_max: f64,
    a_num: usize,
    a_den: usize,
) -> Result<f64, LengthsError> {
    let r = ruelle_zeta(spec, s, l_max)?.value;
    let num = surface_zeta(spec, s, l_max, a_num)?.value;
    let den = surface_zeta(spec, s + 1.0, l_max, a_den)?.value;
    Ok((r - num / den).norm())
}

/// `F(s) = prod_j prod_{a=0}^{a_max} (1 - e^{-(s+a) l_j})^{dm_j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerturbationQuotient {
    pub lengths: Vec<f64>,
    pub deltas: Vec<i64>,
    pub a_max: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LatticePoint {
    pub s: Complex64,
    pub order: i64,
}

impl PerturbationQuotient {
    pub fn new(lengths: Vec<f64>, deltas: Vec<i64>, a_max: usize) -> Self {
        assert_eq!(lengths.len(), deltas.len());
        PerturbationQuotient { lengths, deltas, a_max }
    }

    /// One length of `2 pi` added.
    pub fn single_preset() -> Self {
        Self::new(vec![2.0 * PI], vec![1], 3)
    }

    /// Lengths `2 pi` and `pi` with multiplicity changes `+1` and `-1`.
    pub fn paired_preset() -> Self {
        Self::new(vec![2.0 * PI, PI], vec![1, -1], 3)
    }

    pub fn eval(&self, s: Complex64) -> Result<Complex64, LengthsError> {
        let mut v = Complex64::new(1.0, 0.0);
        for (&l, &dm) in self.lengths.iter().zip(&self.deltas) {
            if dm == 0 {
                continue;
            }
            for a in 0..=self.a_max {
                let w = (s + a as f64) * l / (2.0 * PI);
                if w.re.abs() < 1e-12 && (w.im - w.im.round()).abs() < 1e-12 {
                    return Err(LengthsError::LatticePoint(s));
                }
                let f = 1.0 - (-(s + a as f64) * l).exp();
                v *= f.powi(dm as i32);
            }
        }
        Ok(v)
    }

    /// Net order at `-a + 2 pi i b / l_j`: the sum of `dm_i` over the lengths
    /// `l_i` with `b l_i / l_j` an integer.
    pub fn predicted_order(&self, a: usize, b: i64, j: usize) -> i64 {
        if a > self.a_max {
            return 0;
        }
        self.lengths
            .iter()
            .zip(&self.deltas)
            .filter(|(&li, _)| {
                let r = b as f64 * li / self.lengths[j];
                (r - r.round()).abs() < 1e-9
            })
            .map(|(_, &dm)| dm)
            .sum()
    }

    /// Lattice points `-a + 2 pi i b / l_j` with `|Im| <= y_max` and nonzero
    /// predicted order, deduplicated across lengths.
    pub fn predicted_points(&self, y_max: f64) -> Vec<LatticePoint> {
        let mut out: Vec<LatticePoint> = Vec::new();
        for a in 0..=self.a_max {
            for (j, &l) in self.lengths.iter().enumerate() {
                let b_max = (y_max * l / (2.0 * PI)).floor() as i64;
                for b in -b_max..=b_max {
                    let s = Complex64::new(-(a as f64), 2.0 * PI * b as f64 / l);
                    if out.iter().any(|p| (p.s - s).norm() < 1e-9) {
                        continue;
                    }
                    let order = self.predicted_order(a, b, j);
                    if order != 0 {
                        out.push(LatticePoint { s, order });
                    }
                }
            }
        }
        out.sort_by(|a, b| a.s.re.total_cmp(&b.s.re).reverse().then(a.s.im.total_cmp(&b.s.im)));
        out
    }

    /// Zeros and poles in `Re s in [-a_max - 1/2, 1/2]`, `|Im s| <= y_max`,
    /// found by the winding of `F` around a grid of small boxes, each
    /// nonzero box shrunk by bisection until its side is below `tol`.
    pub fn locate(&self, y_max: f64, tol: f64, opts: &WindingOptions) -> Result<Vec<LatticePoint>, LengthsError> {
        let f = |s: Complex64| self.eval(s).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        let spacing = self.lengths.iter().map(|l| 2.0 * PI / l).fold(f64::INFINITY, f64::min);
        let h = spacing / 4.0;
        // offsets keep box edges away from the lattice
        let y0 = -y_max - 0.1234567 * h;
        let rows = ((2.0 * y_max + 0.2469134 * h) / h).ceil() as usize + 1;
        let boxes: Vec<Rectangle> = (0..=self.a_max)
            .flat_map(|a| {
                (0..rows).map(move |k| {
                    let lo = y0 + k as f64 * h;
                    Rectangle { re_min: -(a as f64) - 0.5, re_max: -(a as f64) + 0.5, im_min: lo, im_max: lo + h }
                })
            })
            .collect();
        let found: Vec<Result<Option<LatticePoint>, LengthsError>> = boxes
            .par_iter()
            .map(|&r| {
                let n = count_zeros(&f, r, opts)?;
                if n == 0 {
                    return Ok(None);
                }
                let mut r = r;
                while r.width().max(r.height()) > tol {
                    let mut next = None;
                    for t in [0.4713, 0.5319, 0.4407] {
                        let (lo, hi) = r.split(t);
                        if let Ok(k) = count_zeros(&f, lo, opts) {
                            next = Some(if k == n { lo } else { hi });
                            break;
                        }
                    }
                    r = next.ok_or(ContourError::NoConvergence(r))?;
                }
                Ok(Some(LatticePoint { s: r.center(), order: n }))
            })
            .collect();
        let mut out: Vec<LatticePoint> = found.into_iter().filter_map(|x| x.transpose()).collect::<Result<_, _>>()?;
        out.sort_by(|a, b| a.s.re.total_cmp(&b.s.re).reverse().then(a.s.im.total_cmp(&b.s.im)));
        Ok(out)
    }
}

/// Counts `#{l <= L}` with multiplicity on `l_grid` and the constant
/// `max #{l <= L} L / e^{(d-1)L}`.
pub fn geodesic_growth(spec: &[LengthSpectrumEntry], d: usize, l_grid: &[f64]) -> (Vec<u64>, f64) {
    let counts: Vec<u64> =
        l_grid.iter().map(|&l| spec.iter().filter(|e| e.length <= l).map(|e| e.multiplicity).sum()).collect();
    let c = l_grid
        .iter()
        .zip(&counts)
        .map(|(&l, &n)| n as f64 * l / ((d as f64 - 1.0) * l).exp())
        .fold(0.0, f64::max);
    (counts, c)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shortest_lengths() {
        let m = LatticeModel::sl2z();
        assert!(length_spectrum(&m, 1.0).unwrap().is_empty());
        let s = length_spectrum(&m, 2.0).unwrap();
        assert_eq!(s.len(), 1);
        assert!((s[0].length - 1.924_847_300_238_413_6).abs() < 1e-12);
        assert_eq!(s[0].multiplicity, 1);
        let s = length_spectrum(&m, 2.7).unwrap();
        assert_eq!(s[1].trace, 4);
        assert!((s[1].length - 2.633_915_793_849_633_4).abs() < 1e-12);
        assert!(length_spectrum(&m, 16.0).is_err());
    }

    #[test]
    fn spectrum_matches_brute_force() {
        let m = LatticeModel::sl2z();
        let spec = length_spectrum(&m, trace_length(20) + 1e-9).unwrap();
        let oracle = brute_force_conjugacy_oracle(&m, 20, 50).unwrap();
        let ours: Vec<(i64, u64)> = spec.iter().map(|e| (e.trace, e.multiplicity)).collect();
        assert_eq!(ours, oracle);
        assert_eq!(oracle, brute_force_conjugacy_oracle(&m, 20, 100).unwrap());
    }

    #[test]
    fn gamma0_2_matches_brute_force() {
        let m = LatticeModel::gamma0(2).unwrap();
        let spec = length_spectrum(&m, trace_length(14) + 1e-9).unwrap();
        let oracle = brute_force_conjugacy_oracle(&m, 14, 80).unwrap();
        let ours: Vec<(i64, u64)> = spec.iter().map(|e| (e.trace, e.multiplicity)).collect();
        assert_eq!(ours, oracle);
    }

    #[test]
    fn oracle_is_empty_below_hyperbolic_traces() {
        assert!(brute_force_conjugacy_oracle(&LatticeModel::sl2z(), 2, 50).unwrap().is_empty());
    }

    #[test]
    fn power_traces() {
        assert_eq!(power_trace(3, 2), 7);
        assert_eq!(power_trace(3, 3), 18);
        assert_eq!(power_trace(4, 2), 14);
        let g = Mat2::new(2, 1, 1, 1);
        assert_eq!(g.mul(&g).mul(&g).trace(), power_trace(3, 3));
    }

    #[test]
    fn dl_statistics() {
        let spec = length_spectrum(&LatticeModel::sl2z(), 8.0).unwrap();
        let grid: Vec<f64> = (1..=24).map(|k| 0.5 * k as f64).collect();
        let same = dl_estimate(&spec, &spec, &grid);
        assert!(same.dl_values.iter().all(|&v| v == 0.0));
        assert_eq!(same.dl_estimate, f64::NEG_INFINITY);
        let mut bumped = spec.clone();
        bumped[0].multiplicity += 1;
        let one = dl_estimate(&spec, &bumped, &grid);
        assert!(one.dl_values.iter().all(|&v| v <= 1.0));
        assert!(one.dl_estimate.abs() < 0.05);
    }

    #[test]
    fn euler_products() {
        assert_eq!(ruelle_zeta(&[], Complex64::new(3.0, 0.0), 5.0).unwrap().value, Complex64::new(1.0, 0.0));
        let one = [LengthSpectrumEntry { length: 2.0, multiplicity: 1, trace: 0 }];
        let z = surface_zeta(&one, Complex64::new(3.0, 0.0), 5.0, 0).unwrap().value;
        assert!((z.re - (1.0 - (-6.0f64).exp())).abs() < 1e-15);
        assert!(ruelle_zeta(&one, Complex64::new(0.9, 0.0), 5.0).is_err());
    }

    #[test]
    fn telescoping_identity() {
        let spec = length_spectrum(&LatticeModel::sl2z(), 10.0).unwrap();
        for s in [Complex64::new(4.0, 0.0), Complex64::new(3.0, 2.0)] {
            assert!(zeta_identity_check(&spec, s, 10.0, 6, 5).unwrap() < 1e-12);
            assert!(zeta_identity_check(&spec, s, 10.0, 1, 1).unwrap() > 1e-12);
        }
    }

    #[test]
    fn perturbation_zeros() {
        let single = PerturbationQuotient::single_preset();
        let pts = single.locate(1.5, 1e-8, &WindingOptions::default()).unwrap();
        let at_i = pts.iter().find(|p| (p.s - Complex64::new(0.0, 1.0)).norm() < 1e-6).unwrap();
        assert_eq!(at_i.order, 1);
        let flat = PerturbationQuotient::new(vec![2.0 * PI], vec![0], 2);
        assert!(flat.locate(2.0, 1e-6, &WindingOptions::default()).unwrap().is_empty());
        assert!(single.eval(Complex64::new(0.0, 1.0)).is_err());
    }

    #[test]
    fn locator_matches_the_order_formula() {
        for q in [PerturbationQuotient::single_preset(), PerturbationQuotient::paired_preset()] {
            let found = q.locate(5.5, 1e-8, &WindingOptions::default()).unwrap();
            let predicted = q.predicted_points(5.5);
            assert_eq!(found.len(), predicted.len());
            for (f, p) in found.iter().zip(&predicted) {
                assert!((f.s - p.s).norm() < 1e-6 && f.order == p.order, "{f:?} vs {p:?}");
            }
        }
        let paired = PerturbationQuotient::paired_preset();
        assert_eq!(paired.predicted_order(0, 1, 0), 1);
        assert_eq!(paired.predicted_order(0, 2, 0), 0);
    }
}
