//! Distribution of zeros of L*: the T log T main term, Littlewood's formula,
//! the smoothed critical-line integral and the phase integral.

use hypscatter::lattices::LatticeId;
use hypscatter::scattering::ScatteringModel;
use hypscatter::specfun::PrecisionProfile;
use hypscatter::zerodist::{
    closed_form_constants, f1_sum, l_star_census, littlewood_rhs, phase_integral, smoothed_critical_integral,
    verify_main_term, verify_strip_concentration, WindingOptions,
};
use num_complex::Complex64;

fn main() {
    let m = ScatteringModel::closed_form(LatticeId::SL2Z, PrecisionProfile::default());
    let opts = WindingOptions::default();
    let census = l_star_census(&m, 100.0, 1e-10, &opts).unwrap();
    let grid: Vec<f64> = (2..=10).map(|k| 10.0 * k as f64).collect();
    let fit = verify_main_term(&census, m.d, m.kappa, &grid).unwrap();
    let cf = closed_form_constants(m.d, m.kappa, m.a_gamma);
    println!("F_1(1/2, T) = T log T / 2pi + A T: fitted A = {:.4}, predicted {:.4}", fit.a_fitted, cf.a_gamma_linear);
    for r in &fit.rows {
        println!("  T = {:>5}: F_1 = {:>9.4}, model {:>9.4}", r.t, r.f1, r.model);
    }
    for r in verify_strip_concentration(&census.zeros, m.d, 0.8, &grid).unwrap() {
        println!("  strip alpha = 0.8, T = {:>5}: ratio {:.4}", r.t, r.ratio);
    }

    let f = |s: Complex64| m.l_star(s).unwrap();
    for (alpha, t) in [(0.6, 20.0), (0.75, 30.0)] {
        let p = littlewood_rhs(&f, alpha, t, &m.poles, &opts).unwrap();
        println!("Littlewood alpha = {alpha}, T = {t}: {:.8} vs F_1 = {:.8}", p.total, f1_sum(&census.zeros, alpha, t));
    }
    for t in [20.0, 40.0, 80.0] {
        let v = smoothed_critical_integral(&f, 0.5, t).unwrap();
        println!("smoothed integral T = {t}: {v:.6}, model {:.6}", cf.model(t));
    }
    let phi = |s: Complex64| m.scattering_determinant(s).unwrap();
    println!("phase integral to T = 30: {:?}", phase_integral(&phi, 0.5, 30.0, &opts).unwrap());
}
