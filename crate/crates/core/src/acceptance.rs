//! The acceptance suite: twelve criteria, each reporting pass/fail, the
//! measured quantities, and any frozen constants it is gated on.

use crate::contour::WindingOptions;
use crate::dirichlet::{self, PositiveDirichletSeries, Sigma1Rule, TruncationWindow};
use crate::expected::Expected;
use crate::lattices::{enumerate_double_cosets, LatticeId, LatticeModel};
use crate::lengths::{self, PerturbationQuotient};
use crate::numeric::quad::QuadOptions;
use crate::scattering::{self, ScatteringModel};
use crate::specfun::{self, PrecisionProfile};
use crate::zerodist::{self, Census};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::sync::Mutex;
use std::time::Instant;

pub const CRITERIA: usize = 12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: usize,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
    /// Constants gated against the expected-values file.
    pub frozen: BTreeMap<String, f64>,
    /// Values reported but not asserted.
    pub info: BTreeMap<String, f64>,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2}: {} ({:.2} s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.seconds,
            self.detail
        )
    }
}

pub struct Context {
    pub profile: PrecisionProfile,
    pub expected: Expected,
    pub seed: u64,
    /// When false, frozen constants are measured but not gated.
    pub gate: bool,
    censuses: Mutex<HashMap<LatticeId, Census>>,
}

pub const CENSUS_HEIGHT: f64 = 100.0;

impl Context {
    pub fn new(profile: PrecisionProfile, expected: Expected, seed: u64) -> Self {
        Context { profile, expected, seed, gate: true, censuses: Mutex::new(HashMap::new()) }
    }

    /// Census of `L*` zeros up to height 100, shared between criteria.
    pub fn census(&self, id: LatticeId) -> Result<Census, String> {
        if let Some(c) = self.censuses.lock().unwrap().get(&id) {
            return Ok(c.clone());
        }
        let m = ScatteringModel::closed_form(id, self.profile);
        let c = zerodist::l_star_census(&m, CENSUS_HEIGHT, 1e-10, &WindingOptions::default()).map_err(|e| e.to_string())?;
        self.censuses.lock().unwrap().insert(id, c.clone());
        Ok(c)
    }
}

struct Outcome {
    checks: Vec<(bool, String)>,
    frozen: BTreeMap<String, f64>,
    info: BTreeMap<String, f64>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { checks: vec![], frozen: BTreeMap::new(), info: BTreeMap::new() }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checks.push((ok, what.into()));
    }

    fn info(&mut self, key: &str, v: f64) {
        self.info.insert(key.into(), v);
    }

    /// One-sided regression gate: `measured <= 1.1 * frozen`.
    fn gate(&mut self, ctx: &Context, key: &str, measured: f64) {
        self.frozen.insert(key.into(), measured);
        if !ctx.gate {
            return;
        }
        match ctx.expected.get(key) {
            Some(frozen) => {
                let ok = measured <= 1.1 * frozen;
                self.check(ok, format!("{key} = {measured:.4e} vs frozen {frozen:.4e}"));
            }
            None => self.check(false, format!("{key} has no frozen value")),
        }
    }
}

type CriterionFn = fn(&Context, &mut Outcome) -> Result<(), String>;

const TABLE: [(&str, CriterionFn); CRITERIA] = [
    ("functional equation and series agreement", c1_functional_equation),
    ("critical-line unitarity", c2_unitarity),
    ("double-coset coefficients", c3_double_cosets),
    ("zero census against zeta zeros", c4_census),
    ("main term of F_1", c5_main_term),
    ("Littlewood formula", c6_littlewood),
    ("smoothed critical-line integral", c7_smoothed_integral),
    ("sandwich inequality", c8_sandwich),
    ("Dirichlet series toolkit", c9_dirichlet),
    ("length spectrum", c10_lengths),
    ("zeta identities and perturbation quotient", c11_zeta_identities),
    ("Maass-Selberg bound", c12_maass_selberg),
];

pub fn criterion_name(id: usize) -> &'static str {
    TABLE[id - 1].0
}

/// Runs criterion `id` (1-based).
pub fn run_criterion(ctx: &Context, id: usize) -> CriterionReport {
    let (name, f) = TABLE[id - 1];
    let start = Instant::now();
    let mut out = Outcome::new();
    let result = f(ctx, &mut out);
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match result {
        Err(e) => (false, format!("error: {e}")),
        Ok(()) => {
            let failed: Vec<&str> = out.checks.iter().filter(|c| !c.0).map(|c| c.1.as_str()).collect();
            if failed.is_empty() {
                (true, format!("{} checks", out.checks.len()))
            } else {
                (false, failed.join("; "))
            }
        }
    };
    CriterionReport { id, name: name.into(), passed, detail, seconds, frozen: out.frozen, info: out.info }
}

pub fn run_all(ctx: &Context) -> Vec<CriterionReport> {
    (1..=CRITERIA).map(|id| run_criterion(ctx, id)).collect()
}

/// Frozen constants of the module invariants outside the twelve criteria.
pub fn invariant_constants(profile: PrecisionProfile) -> Result<BTreeMap<String, f64>, String> {
    let mut out = BTreeMap::new();
    let ts: Vec<f64> = (0..20).map(|k| 5.0 + 95.0 * k as f64 / 19.0).collect();
    for (id, key) in [(LatticeId::SL2Z, "sl2z"), (LatticeId::Gamma0(2), "gamma0_2"), (LatticeId::SL2ZiGaussian, "gaussian")] {
        let m = ScatteringModel::closed_form(id, profile);
        let h = m.critical_line();
        let sigmas: Vec<f64> = (0..5).map(|k| h + (m.d as f64 - h) * k as f64 / 4.0).collect();
        let c = scattering::l_star_growth_constant(&m, &sigmas, &ts).map_err(err)?;
        out.insert(format!("l_star_growth_{key}"), c);
    }
    let grid = geodesic_grid();
    for (id, key) in [(LatticeId::SL2Z, "sl2z"), (LatticeId::Gamma0(2), "gamma0_2")] {
        let spec = lengths::length_spectrum(&LatticeModel::new(id).map_err(err)?, 12.0).map_err(err)?;
        out.insert(format!("geodesic_growth_{key}"), lengths::geodesic_growth(&spec, 2, &grid).1);
    }
    Ok(out)
}

pub fn geodesic_grid() -> Vec<f64> {
    (4..=24).map(|k| 0.5 * k as f64).collect()
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1_functional_equation(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    let start = Instant::now();
    let m = ScatteringModel::closed_form(LatticeId::SL2Z, ctx.profile);
    let mut worst: f64 = 0.0;
    for i in 0..10 {
        for j in 0..20 {
            let s = c(0.1 + 0.8 * i as f64 / 9.0, 30.0 * j as f64 / 19.0);
            worst = worst.max(scattering::functional_equation_residual(&m, s).map_err(err)?);
        }
    }
    out.info("max_residual", worst);
    out.check(worst < 1e-8, format!("functional equation residual {worst:.2e}"));

    let series = scattering::build_from_double_cosets(&LatticeModel::sl2z(), 1e6, ctx.profile).map_err(err)?;
    let mut worst_ratio: f64 = 0.0;
    for sigma in [1.6, 2.0, 2.5, 3.0] {
        for t in [0.0, 5.0, 10.0] {
            let s = c(sigma, t);
            let (v, e) = series.phi_matrix_with_bounds(s).map_err(err)?;
            let exact = m.phi_matrix(s).map_err(err)?;
            let gap = (v[0][0] - exact[0][0]).norm();
            worst_ratio = worst_ratio.max(gap / e[0][0]);
            out.check(gap <= e[0][0], format!("series gap {gap:.2e} vs bound {:.2e} at {s}", e[0][0]));
        }
    }
    out.info("max_gap_over_tail_bound", worst_ratio);
    let secs = start.elapsed().as_secs_f64();
    out.check(secs < 30.0, format!("runtime {secs:.1} s"));
    Ok(())
}

fn c2_unitarity(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    for id in [LatticeId::SL2Z, LatticeId::Gamma0(2)] {
        let m = ScatteringModel::closed_form(id, ctx.profile);
        let mut worst: f64 = 0.0;
        for k in 0..100 {
            let t = 0.1 + 49.9 * k as f64 / 99.0;
            let v = m.scattering_determinant(c(m.critical_line(), t)).map_err(err)?;
            worst = worst.max((v.norm() - 1.0).abs());
        }
        out.info(&format!("{id}_max_deviation"), worst);
        out.check(worst <= 1e-8, format!("{id}: ||det phi| - 1| = {worst:.2e}"));
    }
    Ok(())
}

fn totient_by_gcd(n: u64) -> u64 {
    (1..=n).filter(|&k| lengths::forms::gcd(k as i64, n as i64) == 1).count() as u64
}

fn c3_double_cosets(_ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    let spec = enumerate_double_cosets(&LatticeModel::sl2z(), 0, 0, 400.0).map_err(err)?;
    out.check(spec.len() >= 20, format!("{} classes below 400", spec.len()));
    for (k, e) in spec.entries.iter().take(20).enumerate() {
        let cc = k as u64 + 1;
        let ok = e.lambda == (cc * cc) as f64 && e.count == totient_by_gcd(cc);
        out.check(ok, format!("lambda {} count {} (c = {cc})", e.lambda, e.count));
    }
    let g = LatticeModel::gamma0(2).map_err(err)?;
    for (i, j) in [(0, 1), (1, 0)] {
        let s = enumerate_double_cosets(&g, i, j, 100.0).map_err(err)?;
        let min = s.min_lambda().unwrap_or(0.0);
        out.info(&format!("gamma0_2_entry_{i}{j}_min_lambda"), min);
        out.check(min > 0.0, format!("entry ({i},{j}) minimal lambda {min}"));
    }
    Ok(())
}

fn c4_census(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    let start = Instant::now();
    let profile = PrecisionProfile::double_double();
    let m = ScatteringModel::closed_form(LatticeId::SL2Z, profile);
    let census = zerodist::l_star_census(&m, 50.0, 1e-10, &WindingOptions::default()).map_err(err)?;
    let zeta = specfun::zeta_zeros_up_to(100.0, &profile).map_err(err)?;
    let rect = specfun::count_zeta_zeros_rectangle(100.0, &profile).map_err(err)?;
    out.info("zeros", census.zeros.len() as f64);
    out.check(census.zeros.len() == zeta.len(), format!("{} L* zeros, {} zeta zeros", census.zeros.len(), zeta.len()));
    out.check(census.rectangle_count == zeta.len() as i64, format!("rectangle count {}", census.rectangle_count));
    out.check(rect == zeta.len() as i64, format!("zeta rectangle count {rect}"));
    let mut worst: f64 = 0.0;
    for z in &census.zeros {
        let best = zeta
            .iter()
            .map(|r| (c(z.beta, z.gamma) - c(0.75, r.ordinate / 2.0)).norm())
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
    }
    out.info("max_mapping_distance", worst);
    out.check(worst < 1e-6, format!("largest distance to (1 + rho)/2 is {worst:.2e}"));
    let secs = start.elapsed().as_secs_f64();
    out.check(secs < 300.0, format!("runtime {secs:.1} s"));
    if ctx.profile.working_precision != profile.working_precision {
        out.info("run_at_double_double_regardless", 1.0);
    }
    Ok(())
}

pub fn main_term_grid() -> Vec<f64> {
    (2..=10).map(|k| 10.0 * k as f64).collect()
}

fn c5_main_term(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    for (id, key) in [(LatticeId::SL2Z, "sl2z"), (LatticeId::Gamma0(2), "gamma0_2")] {
        let m = ScatteringModel::closed_form(id, ctx.profile);
        let census = ctx.census(id)?;
        let fit = zerodist::verify_main_term(&census, m.d, m.kappa, &main_term_grid()).map_err(err)?;
        let cf = zerodist::closed_form_constants(m.d, m.kappa, m.a_gamma);
        out.info(&format!("{key}_a_fitted"), fit.a_fitted);
        out.info(&format!("{key}_a_closed_form"), cf.a_gamma_linear);
        out.gate(ctx, &format!("main_term_{key}_sup_residual_over_log"), fit.sup_residual_over_log);
    }
    Ok(())
}

fn c6_littlewood(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    let m = ScatteringModel::closed_form(LatticeId::SL2Z, ctx.profile);
    let census = ctx.census(LatticeId::SL2Z)?;
    let f = |s: Complex64| m.l_star(s).unwrap_or(c(f64::NAN, f64::NAN));
    for alpha in [0.6, 0.75] {
        for t in [20.0, 30.0] {
            let rhs = zerodist::littlewood_rhs(&f, alpha, t, &m.poles, &WindingOptions::default()).map_err(err)?;
            let f1 = zerodist::f1_sum(&census.zeros, alpha, t);
            let gap = (rhs.total - f1).abs();
            out.info(&format!("gap_alpha{alpha}_T{t}"), gap);
            out.check(gap < 1e-3, format!("alpha {alpha}, T {t}: formula {:.6} vs F_1 {f1:.6}", rhs.total));
        }
    }
    Ok(())
}

fn c7_smoothed_integral(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    let m = ScatteringModel::closed_form(LatticeId::SL2Z, ctx.profile);
    let a_gamma = scattering::measure_a_gamma(&m, &[2.0, 5.0, 10.0, 20.0]).map_err(err)?.mean;
    let cf = zerodist::closed_form_constants(m.d, m.kappa, a_gamma);
    let f = |s: Complex64| m.l_star(s).unwrap_or(c(f64::NAN, f64::NAN));
    let mut worst: f64 = 0.0;
    for t in [20.0, 40.0, 80.0] {
        let diff = zerodist::smoothed_critical_integral(&f, m.critical_line(), t).map_err(err)? - cf.model(t);
        out.info(&format!("diff_T{t}"), diff);
        worst = worst.max(diff.abs() / t.ln());
    }
    out.info("a_gamma_measured", a_gamma);
    out.gate(ctx, "smoothed_integral_sl2z_c", worst);
    Ok(())
}

fn c8_sandwich(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    for id in [LatticeId::SL2Z, LatticeId::Gamma0(2)] {
        let census = ctx.census(id)?;
        let z = &census.zeros;
        let mut violations = 0;
        for alpha in [0.5, 0.6, 0.9] {
            for t in 2..(CENSUS_HEIGHT as usize) {
                let t = t as f64;
                let f = |t| zerodist::f_smoothed_sum(z, alpha, t);
                if !zerodist::sandwich_check(f(t - 1.0), f(t), f(t + 1.0), zerodist::f1_sum(z, alpha, t)) {
                    violations += 1;
                }
            }
        }
        out.check(violations == 0, format!("{id}: {violations} violations"));
        let fewer = &z[1..];
        let t = z[0].gamma.ceil() + 1.0;
        let f = |t| zerodist::f_smoothed_sum(z, 0.5, t);
        let detected = !zerodist::sandwich_check(f(t - 1.0), f(t), f(t + 1.0), zerodist::f1_sum(fewer, 0.5, t));
        out.check(detected, format!("{id}: deleting the zero at {:.4} is detected at T = {t}", z[0].gamma));
    }
    Ok(())
}

fn c9_dirichlet(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    let f = PositiveDirichletSeries::sl2z_scaled(1_000_000);
    let dev = dirichlet::summatory_deviation_sup(&f, 6.0 / (PI * PI), 1e6).map_err(err)?;
    out.gate(ctx, "summatory_deviation_sup", dev);

    // the series continues as zeta(s)/zeta(s+1)
    let exact = |s: Complex64| {
        specfun::riemann_zeta_with(s, &ctx.profile).unwrap() / specfun::riemann_zeta_with(s + 1.0, &ctx.profile).unwrap()
    };
    let w = TruncationWindow::new(1e6, 1).map_err(err)?;
    out.check(w.admissible_for(&f), "k > r");
    let sigma0 = 0.75;
    let (lo, hi) = w.t_range(sigma0, f.growth_exponent());
    let hi = hi.min(50.0);
    let mut worst: f64 = 0.0;
    for sigma in [0.75, 1.0, 1.25, 1.5] {
        for k in 0..12 {
            let t = lo + (hi - lo) * k as f64 / 11.0;
            let s = c(sigma, t);
            let v = dirichlet::smoothed_truncation(&f, &w, s).map_err(err)?;
            worst = worst.max((v - exact(s)).norm());
        }
    }
    out.gate(ctx, "window_deviation_sup", worst);

    let s1 = dirichlet::sigma1(f.growth_exponent(), Sigma1Rule::Proposition);
    out.info("sigma1", s1);
    let mut ratio: f64 = 0.0;
    for sigma in [s1 + 0.1, s1 + 0.25, s1 + 0.5] {
        for t in [25.0, 50.0, 100.0] {
            let ms = dirichlet::mean_square(exact, sigma, t, s1, QuadOptions { abs_tol: 1e-8, rel_tol: 1e-8, max_panels: 20_000 })
                .map_err(err)?;
            ratio = ratio.max(ms.value / dirichlet::mean_square_envelope(sigma, s1, t));
        }
    }
    out.gate(ctx, "mean_square_ratio_sup", ratio);
    Ok(())
}

fn c10_lengths(_ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    let m = LatticeModel::sl2z();
    let spec = lengths::length_spectrum(&m, lengths::trace_length(20) + 1e-9).map_err(err)?;
    let ours: Vec<(i64, u64)> = spec.iter().map(|e| (e.trace, e.multiplicity)).collect();
    let oracle = lengths::brute_force_conjugacy_oracle(&m, 20, 50).map_err(err)?;
    let wider = lengths::brute_force_conjugacy_oracle(&m, 20, 100).map_err(err)?;
    out.check(oracle == wider, "oracle stable from entry bound 50 to 100");
    out.check(ours == oracle, format!("{} traces agree with the oracle", ours.len()));

    let spec12 = lengths::length_spectrum(&m, 12.0).map_err(err)?;
    let grid: Vec<f64> = (1..=24).map(|k| 0.5 * k as f64).collect();
    let same = lengths::dl_estimate(&spec12, &spec12, &grid);
    out.check(same.dl_estimate == f64::NEG_INFINITY, "identical spectra give the -inf sentinel");
    let mut bumped = spec12.clone();
    bumped[0].multiplicity += 1;
    let one = lengths::dl_estimate(&spec12, &bumped, &grid);
    out.info("perturbed_dl_estimate", one.dl_estimate);
    out.check(one.dl_estimate < 0.05, format!("one-entry perturbation: dl = {:.3e}", one.dl_estimate));
    let g = lengths::length_spectrum(&LatticeModel::gamma0(2).map_err(err)?, 8.0).map_err(err)?;
    let grid8: Vec<f64> = (1..=16).map(|k| 0.5 * k as f64).collect();
    out.info("sl2z_vs_gamma0_2_dl_estimate", lengths::dl_estimate(&spec12, &g, &grid8).dl_estimate);
    Ok(())
}

fn c11_zeta_identities(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    let l_max = 10.0;
    let spec = lengths::length_spectrum(&LatticeModel::sl2z(), l_max).map_err(err)?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.seed);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let s = c(rng.gen_range(3.0..6.0), rng.gen_range(-20.0..20.0));
        worst = worst.max(lengths::zeta_identity_check(&spec, s, l_max, 8, 7).map_err(err)?);
    }
    out.info("max_identity_residual", worst);
    out.check(worst < 1e-12, format!("identity residual {worst:.2e}"));
    for (name, q) in [("single", PerturbationQuotient::single_preset()), ("paired", PerturbationQuotient::paired_preset())] {
        let y = 2.0 * PI * 5.0 / q.lengths[0] + 0.5;
        let found = q.locate(y, 1e-8, &WindingOptions::default()).map_err(err)?;
        let predicted = q.predicted_points(y);
        let same = found.len() == predicted.len()
            && found.iter().zip(&predicted).all(|(f, p)| (f.s - p.s).norm() < 1e-6 && f.order == p.order);
        out.check(same, format!("{name} preset: {} located, {} predicted", found.len(), predicted.len()));
    }
    Ok(())
}

fn c12_maass_selberg(ctx: &Context, out: &mut Outcome) -> Result<(), String> {
    for (id, key) in [(LatticeId::SL2Z, "sl2z"), (LatticeId::Gamma0(2), "gamma0_2")] {
        let m = ScatteringModel::closed_form(id, ctx.profile);
        let mut ratio: f64 = 0.0;
        for i in 0..5 {
            for j in 0..10 {
                let sigma = 0.5 + 1.5 * i as f64 / 4.0;
                let t = 1.0 + 49.0 * j as f64 / 9.0;
                let row = scattering::maass_selberg_bound_check(&m, sigma, t, 1.0).map_err(err)?;
                ratio = ratio.max(row.lhs / row.rhs);
            }
        }
        out.gate(ctx, &format!("maass_selberg_{key}_constant"), ratio);
    }
    Ok(())
}
