//! Batch drivers behind the `hypscatter` binary. Each command writes CSV
//! tables plus one JSON summary echoing its configuration.

use crate::acceptance::{self, CriterionReport};
use crate::contour::WindingOptions;
use crate::expected::Expected;
use crate::io::{fmt, write_csv_atomic, write_json_atomic};
use crate::lattices::{self, LatticeId, LatticeModel};
use crate::lengths::{self, PerturbationQuotient};
use crate::numeric::WorkingPrecision;
use crate::scattering::{self, ScatteringModel};
use crate::specfun::{PrecisionProfile, ZeroCache};
use crate::zerodist;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::{Path, PathBuf};
use thiserror::Error;

pub const MAX_TMAX: f64 = 200.0;
pub const MAX_A: usize = 10;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("config {path}:{line}: {msg}")]
    Config { path: String, line: usize, msg: String },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Numeric(String),
}

fn numeric<E: std::fmt::Display>(e: E) -> CommandError {
    CommandError::Numeric(e.to_string())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub lattice: LatticeId,
    /// Second lattice for the length-spectrum comparison.
    pub compare: Option<LatticeId>,
    pub t_max: f64,
    pub l_max: f64,
    /// Defaults to `min(1e6, lattice budget)`.
    pub lambda_max: Option<f64>,
    pub a_max: usize,
    pub precision: WorkingPrecision,
    pub out: PathBuf,
    pub seed: u64,
    /// Replaces the bundled frozen constants for `verify`.
    pub expected: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            lattice: LatticeId::SL2Z,
            compare: None,
            t_max: 50.0,
            l_max: 8.0,
            lambda_max: None,
            a_max: 3,
            precision: WorkingPrecision::Double,
            out: PathBuf::from("out"),
            seed: 20240601,
            expected: None,
        }
    }
}

impl RunConfig {
    pub fn lambda_max(&self) -> f64 {
        self.lambda_max.unwrap_or_else(|| lattices::lambda_budget(self.lattice).min(1e6))
    }

    pub fn profile(&self) -> PrecisionProfile {
        match self.precision {
            WorkingPrecision::Double => PrecisionProfile::default(),
            WorkingPrecision::DoubleDouble => PrecisionProfile::double_double(),
        }
    }

    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        let v = value.trim();
        let num = |v: &str| v.parse::<f64>().map_err(|e| format!("{key}: {e}"));
        match key.trim().replace('-', "_").as_str() {
            "lattice" => self.lattice = v.parse().map_err(|e: lattices::LatticeError| e.to_string())?,
            "compare" => {
                self.compare = if v.is_empty() || v == "none" {
                    None
                } else {
                    Some(v.parse().map_err(|e: lattices::LatticeError| e.to_string())?)
                }
            }
            "tmax" | "t_max" => self.t_max = num(v)?,
            "lmax" | "l_max" => self.l_max = num(v)?,
            "lambda_max" => self.lambda_max = Some(num(v)?),
            "a_max" => self.a_max = v.parse().map_err(|e| format!("{key}: {e}"))?,
            "precision" => self.precision = v.parse()?,
            "out" => self.out = PathBuf::from(v),
            "seed" => self.seed = v.parse().map_err(|e| format!("{key}: {e}"))?,
            "expected" => self.expected = Some(PathBuf::from(v)),
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Reads a flat `key = value` file; `#` starts a comment.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), CommandError> {
        let text = std::fs::read_to_string(path)?;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| CommandError::Config { path: path.display().to_string(), line: i + 1, msg };
            let (k, v) = line.split_once('=').ok_or_else(|| err("expected key = value".into()))?;
            self.set(k, v).map_err(err)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), CommandError> {
        let bad = |m: String| Err(CommandError::Usage(m));
        if !(self.t_max > 0.0 && self.t_max <= MAX_TMAX) {
            return bad(format!("tmax must lie in (0, {MAX_TMAX}]"));
        }
        if !(self.l_max > 0.0 && self.l_max <= lengths::MAX_LENGTH) {
            return bad(format!("lmax must lie in (0, {}]", lengths::MAX_LENGTH));
        }
        let cap = lattices::lambda_budget(self.lattice);
        if !(self.lambda_max() >= 0.0 && self.lambda_max() <= cap) {
            return bad(format!("lambda-max must lie in [0, {cap:e}] for {}", self.lattice));
        }
        if self.a_max > MAX_A {
            return bad(format!("a-max must be at most {MAX_A}"));
        }
        Ok(())
    }
}

pub fn version() -> String {
    option_env!("HYPSCATTER_GIT_DESCRIBE").map(String::from).unwrap_or_else(|| format!("v{}", env!("CARGO_PKG_VERSION")))
}

#[derive(Serialize)]
struct Summary<'a, T: Serialize> {
    command: &'a str,
    version: String,
    config: &'a RunConfig,
    precision_profile: String,
    results: T,
    notices: Vec<String>,
}

fn write_summary<T: Serialize>(cfg: &RunConfig, command: &str, results: T, notices: Vec<String>) -> Result<PathBuf, CommandError> {
    let path = cfg.out.join(format!("{command}.json"));
    let s = Summary { command, version: version(), config: cfg, precision_profile: cfg.profile().tag(), results, notices };
    write_json_atomic(&path, &s)?;
    Ok(path)
}

fn csv(cfg: &RunConfig, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<PathBuf, CommandError> {
    let path = cfg.out.join(name);
    write_csv_atomic(&path, header, rows)?;
    Ok(path)
}

fn prepare(cfg: &RunConfig) -> Result<(), CommandError> {
    cfg.validate()?;
    std::fs::create_dir_all(&cfg.out)?;
    Ok(())
}

/// Output of one command: files written, notices, and whether every
/// invariant it checks held.
#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutput {
    pub files: Vec<PathBuf>,
    pub notices: Vec<String>,
    pub failures: Vec<String>,
}

impl CommandOutput {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Serialize)]
struct ScatteringResults {
    max_functional_equation_residual: f64,
    max_unitarity_deviation: f64,
    maass_selberg_constant: f64,
    a_gamma_closed_form: f64,
    a_gamma_fit: scattering::AGammaFit,
    series_max_gap_over_bound: Option<f64>,
}

pub fn cmd_scattering(cfg: &RunConfig) -> Result<CommandOutput, CommandError> {
    prepare(cfg)?;
    let profile = cfg.profile();
    let m = ScatteringModel::closed_form(cfg.lattice, profile);
    let mut files = vec![];
    let mut notices = m.warnings.clone();
    let mut failures = vec![];

    let mut rows = vec![];
    let mut max_res: f64 = 0.0;
    let h = m.critical_line();
    for i in 0..10 {
        for j in 0..20 {
            let sigma = h - 0.4 + 0.8 * i as f64 / 9.0;
            let t = 30.0 * j as f64 / 19.0;
            let r = scattering::functional_equation_residual(&m, Complex64::new(sigma, t)).map_err(numeric)?;
            max_res = max_res.max(r);
            rows.push(vec![fmt(sigma), fmt(t), fmt(r)]);
        }
    }
    files.push(csv(cfg, "residuals.csv", &["sigma", "t", "residual"], &rows)?);
    if max_res >= 1e-8 {
        failures.push(format!("functional equation residual {max_res:e}"));
    }

    let mut rows = vec![];
    let mut max_dev: f64 = 0.0;
    for k in 0..100 {
        let t = 0.1 + 49.9 * k as f64 / 99.0;
        let v = m.scattering_determinant(Complex64::new(h, t)).map_err(numeric)?;
        max_dev = max_dev.max((v.norm() - 1.0).abs());
        rows.push(vec![fmt(t), fmt(v.norm()), fmt(v.arg())]);
    }
    files.push(csv(cfg, "critical_line.csv", &["t", "modulus", "phase"], &rows)?);
    if max_dev > 1e-8 {
        failures.push(format!("unitarity deviation {max_dev:e}"));
    }

    let mut rows = vec![];
    let mut ms_const: f64 = 0.0;
    for i in 0..5 {
        for j in 0..10 {
            let sigma = h + (m.d as f64 - h) * i as f64 / 4.0;
            let t = 1.0 + 49.0 * j as f64 / 9.0;
            let r = scattering::maass_selberg_bound_check(&m, sigma, t, 1.0).map_err(numeric)?;
            ms_const = ms_const.max(r.lhs / r.rhs);
            rows.push(vec![fmt(sigma), fmt(t), fmt(r.lhs), fmt(r.rhs)]);
        }
    }
    files.push(csv(cfg, "maass_selberg.csv", &["sigma", "t", "max_entry", "envelope"], &rows)?);

    let ts: Vec<f64> = (1..=10).map(|k| 5.0 * k as f64).collect();
    let fit = scattering::measure_a_gamma(&m, &ts).map_err(numeric)?;
    let rows: Vec<Vec<String>> = fit.samples.iter().map(|(t, a)| vec![fmt(*t), fmt(*a)]).collect();
    files.push(csv(cfg, "a_gamma.csv", &["t", "a_gamma"], &rows)?);

    let mut series_gap = None;
    if cfg.lambda_max() == 0.0 {
        notices.push("lambda_max = 0: series model skipped".into());
    } else {
        let model = LatticeModel::new(cfg.lattice).map_err(numeric)?;
        match scattering::build_from_double_cosets(&model, cfg.lambda_max(), profile) {
            Err(e) => notices.push(format!("series model unavailable: {e}")),
            Ok(series) => {
                notices.extend(series.warnings.iter().cloned());
                let abscissa = m.d as f64 - 1.0;
                let mut rows = vec![];
                let mut worst: f64 = 0.0;
                for sigma in [0.6, 1.0, 1.5, 2.0].map(|x| abscissa + x) {
                    for t in [0.0, 5.0, 10.0, 20.0] {
                        let s = Complex64::new(sigma, t);
                        let (v, e) = series.phi_matrix_with_bounds(s).map_err(numeric)?;
                        let exact = m.phi_matrix(s).map_err(numeric)?;
                        let gap = (v[0][0] - exact[0][0]).norm();
                        worst = worst.max(gap / e[0][0]);
                        rows.push(vec![fmt(sigma), fmt(t), fmt(v[0][0].re), fmt(v[0][0].im), fmt(gap), fmt(e[0][0])]);
                    }
                }
                files.push(csv(cfg, "series.csv", &["sigma", "t", "series_re", "series_im", "gap", "tail_bound"], &rows)?);
                if worst > 1.0 {
                    failures.push(format!("series exceeds its tail bound by a factor {worst}"));
                }
                if let scattering::ModelKind::Series { entries, .. } = &series.kind {
                    for (i, row) in entries.iter().enumerate() {
                        for (j, e) in row.iter().enumerate() {
                            let rows: Vec<Vec<String>> =
                                e.lambdas.iter().zip(&e.counts).map(|(l, c)| vec![l.to_string(), c.to_string()]).collect();
                            files.push(csv(cfg, &format!("series_{i}{j}.csv"), &["lambda", "count"], &rows)?);
                        }
                    }
                }
                series_gap = Some(worst);
            }
        }
    }

    #[derive(Serialize)]
    struct Descriptor {
        lattice: LatticeId,
        d: usize,
        kappa: usize,
        normalization: scattering::Normalization,
        a_gamma: f64,
        poles: Vec<f64>,
    }
    let desc = Descriptor { lattice: m.lattice, d: m.d, kappa: m.kappa, normalization: m.normalization, a_gamma: m.a_gamma, poles: m.poles.clone() };
    let path = cfg.out.join("model.json");
    write_json_atomic(&path, &desc)?;
    files.push(path);

    let results = ScatteringResults {
        max_functional_equation_residual: max_res,
        max_unitarity_deviation: max_dev,
        maass_selberg_constant: ms_const,
        a_gamma_closed_form: m.a_gamma,
        a_gamma_fit: fit,
        series_max_gap_over_bound: series_gap,
    };
    files.push(write_summary(cfg, "scattering", results, notices.clone())?);
    Ok(CommandOutput { files, notices, failures })
}

#[derive(Serialize)]
struct ZerosResults {
    zeros: usize,
    rectangle_count: i64,
    complete_to: f64,
    main_term: Option<zerodist::MainTermFit>,
    closed_form: zerodist::ClosedFormConstants,
    max_littlewood_gap: Option<f64>,
    zeta_mapping_distance: Option<f64>,
}

pub fn cmd_zeros(cfg: &RunConfig) -> Result<CommandOutput, CommandError> {
    prepare(cfg)?;
    let profile = cfg.profile();
    let m = ScatteringModel::closed_form(cfg.lattice, profile);
    let opts = WindingOptions::default();
    let mut files = vec![];
    let mut notices = vec![];
    let mut failures = vec![];
    let t_max = cfg.t_max;
    let census = zerodist::l_star_census(&m, t_max, 1e-10, &opts).map_err(numeric)?;

    let rows: Vec<Vec<String>> =
        census.zeros.iter().map(|z| vec![fmt(z.beta), fmt(z.gamma), z.multiplicity.to_string()]).collect();
    files.push(csv(cfg, "zeros.csv", &["beta", "gamma", "multiplicity"], &rows)?);

    // for SL2Z the zeros sit at (1 + rho)/2 over the zeta zeros up to 2 T
    let mut mapping = None;
    if m.lattice == LatticeId::SL2Z && 2.0 * t_max <= crate::specfun::MAX_ZERO_HEIGHT {
        let zeta = ZeroCache::new(cfg.out.join("cache")).zeros(2.0 * t_max, &profile).map_err(numeric)?;
        let mut worst: f64 = 0.0;
        for z in &census.zeros {
            let d = zeta.iter().map(|r| (z.gamma - r.ordinate / 2.0).abs()).fold(f64::INFINITY, f64::min);
            worst = worst.max(d.max((z.beta - 0.75).abs()));
        }
        if zeta.len() != census.zeros.len() {
            failures.push(format!("{} zeros against {} zeta zeros", census.zeros.len(), zeta.len()));
        }
        if worst > 1e-6 {
            failures.push(format!("zeros are {worst:e} from (1 + rho)/2"));
        }
        mapping = Some(worst);
    }

    let grid: Vec<f64> = (2..).map(|k| 10.0 * k as f64).take_while(|&t| t <= t_max).collect();
    let a_gamma = m.a_gamma;
    let cf = zerodist::closed_form_constants(m.d, m.kappa, a_gamma);
    let main_term = if grid.is_empty() {
        notices.push(format!("T_max = {t_max} below 20: main-term fit skipped"));
        None
    } else {
        let fit = zerodist::verify_main_term(&census, m.d, m.kappa, &grid).map_err(numeric)?;
        let rows: Vec<Vec<String>> = fit.rows.iter().map(|r| vec![fmt(r.t), fmt(r.f1), fmt(r.model), fmt(r.residual)]).collect();
        files.push(csv(cfg, "sums.csv", &["T", "F1", "model", "residual"], &rows)?);
        Some(fit)
    };

    if !grid.is_empty() {
        let alpha0 = m.d as f64 - 1.25;
        let mut rows = vec![];
        for delta in [0.05, 0.1, 0.25] {
            for r in zerodist::verify_strip_concentration(&census.zeros, m.d, alpha0 + delta, &grid).map_err(numeric)? {
                rows.push(vec![fmt(alpha0 + delta), fmt(r.t), fmt(r.f1), fmt(r.scale), fmt(r.ratio)]);
            }
        }
        files.push(csv(cfg, "strip.csv", &["alpha", "T", "F1", "scale", "ratio"], &rows)?);
    }

    let f = |s: Complex64| m.l_star(s).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    let h = m.critical_line();
    let mut lw_gap = None;
    let lw_ts: Vec<f64> = [20.0, 30.0].into_iter().filter(|&t| t <= t_max).collect();
    if lw_ts.is_empty() {
        notices.push("T_max below 20: Littlewood cross-check skipped".into());
    } else {
        let mut rows = vec![];
        let mut worst: f64 = 0.0;
        for alpha in [h + 0.1, h + 0.25] {
            for &t in &lw_ts {
                let p = zerodist::littlewood_rhs(&f, alpha, t, &m.poles, &opts).map_err(numeric)?;
                let f1 = zerodist::f1_sum(&census.zeros, alpha, t);
                worst = worst.max((p.total - f1).abs());
                rows.push(vec![fmt(alpha), fmt(t), fmt(p.vertical), fmt(p.horizontal), fmt(p.pole_sum), fmt(p.total), fmt(f1)]);
            }
        }
        files.push(csv(cfg, "littlewood.csv", &["alpha", "T", "vertical", "horizontal", "pole_sum", "total", "F1"], &rows)?);
        if worst >= 1e-3 {
            failures.push(format!("Littlewood formula off by {worst:e}"));
        }
        lw_gap = Some(worst);
    }

    let mut rows = vec![];
    let mut phase_rows = vec![];
    let phi = |s: Complex64| m.scattering_determinant(s).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
    for t in [10.0, 20.0, 40.0, 80.0, 160.0].into_iter().filter(|&t| t <= t_max) {
        let numeric_value = zerodist::smoothed_critical_integral(&f, h, t).map_err(numeric)?;
        rows.push(vec![fmt(t), fmt(numeric_value), fmt(cf.model(t)), fmt(numeric_value - cf.model(t))]);
        let p = zerodist::phase_integral(&phi, h, t, &opts).map_err(numeric)?;
        phase_rows.push(vec![fmt(t), fmt(p.full), fmt(p.doubled_half)]);
    }
    files.push(csv(cfg, "integrals.csv", &["T", "numeric", "closed_form", "diff"], &rows)?);
    files.push(csv(cfg, "phase.csv", &["T", "full", "doubled_half"], &phase_rows)?);

    let results = ZerosResults {
        zeros: census.zeros.len(),
        rectangle_count: census.rectangle_count,
        complete_to: census.complete_to,
        main_term,
        closed_form: cf,
        max_littlewood_gap: lw_gap,
        zeta_mapping_distance: mapping,
    };
    files.push(write_summary(cfg, "zeros", results, notices.clone())?);
    Ok(CommandOutput { files, notices, failures })
}

#[derive(Serialize)]
struct LengthsResults {
    classes: usize,
    compare_classes: Option<usize>,
    dl_estimate: Option<f64>,
    max_identity_residual: f64,
    perturbation_points: usize,
    perturbation_mismatches: usize,
}

fn spectrum_rows(spec: &[lengths::LengthSpectrumEntry]) -> Vec<Vec<String>> {
    spec.iter().map(|e| vec![fmt(e.length), e.multiplicity.to_string(), e.trace.to_string()]).collect()
}

pub fn cmd_lengths(cfg: &RunConfig) -> Result<CommandOutput, CommandError> {
    prepare(cfg)?;
    let mut files = vec![];
    let mut notices = vec![];
    let mut failures = vec![];
    let model = LatticeModel::new(cfg.lattice).map_err(numeric)?;
    let spec = lengths::length_spectrum(&model, cfg.l_max).map_err(numeric)?;
    files.push(csv(cfg, "spectrum.csv", &["length", "multiplicity", "trace"], &spectrum_rows(&spec))?);

    let mut compare_classes = None;
    let mut dl_estimate = None;
    match cfg.compare {
        None => notices.push("single-lattice mode: comparison omitted".into()),
        Some(other) => {
            let spec2 = lengths::length_spectrum(&LatticeModel::new(other).map_err(numeric)?, cfg.l_max).map_err(numeric)?;
            files.push(csv(cfg, "spectrum_compare.csv", &["length", "multiplicity", "trace"], &spectrum_rows(&spec2))?);
            let steps = (cfg.l_max / 0.25).floor() as usize;
            let grid: Vec<f64> = (1..=steps).map(|k| 0.25 * k as f64).collect();
            let cmp = lengths::dl_estimate(&spec, &spec2, &grid);
            let rows: Vec<Vec<String>> = cmp.t_grid.iter().zip(&cmp.dl_values).map(|(t, v)| vec![fmt(*t), fmt(*v)]).collect();
            files.push(csv(cfg, "comparison.csv", &["T", "DL"], &rows)?);
            compare_classes = Some(spec2.len());
            dl_estimate = Some(cmp.dl_estimate);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut rows = vec![];
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let s = Complex64::new(rng.gen_range(3.0..6.0), rng.gen_range(-20.0..20.0));
        let r = lengths::zeta_identity_check(&spec, s, cfg.l_max, cfg.a_max + 1, cfg.a_max).map_err(numeric)?;
        worst = worst.max(r);
        rows.push(vec![fmt(s.re), fmt(s.im), fmt(r)]);
    }
    files.push(csv(cfg, "identity.csv", &["re", "im", "residual"], &rows)?);
    if worst >= 1e-12 {
        failures.push(format!("zeta identity residual {worst:e}"));
    }

    let q = PerturbationQuotient::new(vec![2.0 * std::f64::consts::PI], vec![1], cfg.a_max);
    let y = 5.5;
    let found = q.locate(y, 1e-8, &WindingOptions::default()).map_err(numeric)?;
    let predicted = q.predicted_points(y);
    let rows: Vec<Vec<String>> = predicted
        .iter()
        .map(|p| {
            let near = found.iter().min_by(|a, b| (a.s - p.s).norm().total_cmp(&(b.s - p.s).norm()));
            let (order, dist) = near.map_or(("none".into(), f64::NAN), |f| (f.order.to_string(), (f.s - p.s).norm()));
            vec![fmt(p.s.re), fmt(p.s.im), p.order.to_string(), order, fmt(dist)]
        })
        .collect();
    files.push(csv(cfg, "poles.csv", &["re", "im", "order", "located_order", "located_distance"], &rows)?);
    let mismatches = if found.len() != predicted.len() {
        found.len().max(predicted.len())
    } else {
        found.iter().zip(&predicted).filter(|(f, p)| (f.s - p.s).norm() > 1e-6 || f.order != p.order).count()
    };
    if mismatches > 0 {
        failures.push(format!("{mismatches} perturbation points disagree with the order formula"));
    }

    let results = LengthsResults {
        classes: spec.len(),
        compare_classes,
        dl_estimate,
        max_identity_residual: worst,
        perturbation_points: found.len(),
        perturbation_mismatches: mismatches,
    };
    files.push(write_summary(cfg, "lengths", results, notices.clone())?);
    Ok(CommandOutput { files, notices, failures })
}

#[derive(Serialize)]
struct VerifyReport {
    passed: bool,
    downgraded: bool,
    loosened: Vec<String>,
    criteria: Vec<CriterionReport>,
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<CommandOutput, CommandError> {
    std::fs::create_dir_all(&cfg.out)?;
    let expected = match &cfg.expected {
        Some(p) => Expected::load(p)?,
        None => Expected::bundled(),
    };
    let ctx = acceptance::Context::new(cfg.profile(), expected, cfg.seed);
    let criteria = acceptance::run_all(&ctx);
    let downgraded = cfg.precision == WorkingPrecision::Double;
    let mut notices = vec![];
    if downgraded {
        notices.push("working precision double: the zero census of criterion 4 still runs at double-double".into());
    }
    let failures: Vec<String> = criteria.iter().filter(|r| !r.passed).map(|r| r.line()).collect();
    let report = VerifyReport { passed: failures.is_empty(), downgraded, loosened: vec![], criteria };
    let lines: Vec<String> = report.criteria.iter().map(|r| r.line()).collect();
    let path = write_summary(cfg, "report", report, notices.clone())?;
    notices.extend(lines);
    Ok(CommandOutput { files: vec![path], notices, failures })
}
