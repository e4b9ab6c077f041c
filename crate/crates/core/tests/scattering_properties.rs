use hypscatter::expected::Expected;
use hypscatter::lattices::{LatticeId, LatticeModel};
use hypscatter::scattering::{build_from_double_cosets, l_star_growth_constant, ModelKind, ScatteringModel};
use hypscatter::specfun::PrecisionProfile;
use num_complex::Complex64;

const IDS: [(LatticeId, &str); 3] =
    [(LatticeId::SL2Z, "sl2z"), (LatticeId::Gamma0(2), "gamma0_2"), (LatticeId::SL2ZiGaussian, "gaussian")];

#[test]
fn determinant_is_unimodular_on_the_critical_line() {
    for (id, _) in IDS {
        let m = ScatteringModel::closed_form(id, PrecisionProfile::default());
        for k in 0..100 {
            let t = 0.1 + 49.9 * k as f64 / 99.0;
            let v = m.scattering_determinant(Complex64::new(m.critical_line(), t)).unwrap();
            assert!((v.norm() - 1.0).abs() <= 1e-8, "{id} t = {t}");
        }
    }
}

#[test]
fn l_star_growth_stays_below_the_frozen_constant() {
    let expected = Expected::bundled();
    let ts: Vec<f64> = (0..40).map(|k| 5.0 + 95.0 * k as f64 / 39.0).collect();
    for (id, key) in IDS {
        let m = ScatteringModel::closed_form(id, PrecisionProfile::default());
        let h = m.critical_line();
        let sigmas: Vec<f64> = (0..9).map(|k| h + (m.d as f64 - h) * k as f64 / 8.0).collect();
        let c = l_star_growth_constant(&m, &sigmas, &ts).unwrap();
        let frozen = expected.get(&format!("l_star_growth_{key}")).unwrap();
        assert!(c <= 1.1 * frozen, "{id}: {c} vs {frozen}");
    }
}

#[test]
fn series_models_agree_with_closed_forms_within_their_tails() {
    let cases = [(LatticeModel::sl2z(), 1e6), (LatticeModel::gamma0(2).unwrap(), 1e6), (LatticeModel::gaussian(), 2e3)];
    for (model, lambda_max) in cases {
        let series = build_from_double_cosets(&model, lambda_max, PrecisionProfile::default()).unwrap();
        let exact = ScatteringModel::closed_form(model.id, PrecisionProfile::default());
        let abscissa = model.d as f64 - 1.0;
        if let ModelKind::Series { entries, .. } = &series.kind {
            for e in entries.iter().flatten() {
                assert!(e.counts.iter().all(|&c| c > 0), "{}", model.id);
                assert!(e.lambdas.windows(2).all(|w| w[0] < w[1]) && e.lambdas.first().map_or(true, |&l| l > 0));
            }
        } else {
            panic!("expected a series model");
        }
        for sigma in [0.6, 1.0, 2.0].map(|x| abscissa + x) {
            for t in [0.0, 3.0, 12.0] {
                let s = Complex64::new(sigma, t);
                let (v, bound) = series.phi_matrix_with_bounds(s).unwrap();
                let w = exact.phi_matrix(s).unwrap();
                for i in 0..v.len() {
                    for j in 0..v.len() {
                        let gap = (v[i][j] - w[i][j]).norm();
                        assert!(gap <= bound[i][j], "{} ({i},{j}) at {s}: {gap:e} > {:e}", model.id, bound[i][j]);
                    }
                }
            }
        }
    }
}
