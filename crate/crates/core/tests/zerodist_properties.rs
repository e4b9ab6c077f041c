use hypscatter::lattices::LatticeId;
use hypscatter::scattering::ScatteringModel;
use hypscatter::specfun::{zeta_zeros_up_to, PrecisionProfile};
use hypscatter::zerodist::{
    count_zeros, f1_sum, f_smoothed_sum, l_star_census, littlewood_rhs, sandwich_check, Census, Rectangle,
    WindingOptions,
};
use num_complex::Complex64;
use proptest::prelude::*;
use std::sync::OnceLock;

fn sl2z() -> &'static ScatteringModel {
    static M: OnceLock<ScatteringModel> = OnceLock::new();
    M.get_or_init(|| ScatteringModel::closed_form(LatticeId::SL2Z, PrecisionProfile::default()))
}

fn census() -> &'static Census {
    static C: OnceLock<Census> = OnceLock::new();
    C.get_or_init(|| l_star_census(sl2z(), 50.0, 1e-10, &WindingOptions::default()).unwrap())
}

fn l_star(s: Complex64) -> Complex64 {
    sl2z().l_star(s).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

#[test]
fn conjugate_pairs_double_the_upper_count() {
    for id in [LatticeId::SL2Z, LatticeId::Gamma0(2)] {
        let m = ScatteringModel::closed_form(id, PrecisionProfile::default());
        let f = |s: Complex64| m.l_star(s).unwrap_or(Complex64::new(f64::NAN, f64::NAN));
        let upper = l_star_census(&m, 30.0, 1e-10, &WindingOptions::default()).unwrap().total_multiplicity();
        let h = m.critical_line() + 1e-6;
        let full = Rectangle { re_min: h, re_max: m.d as f64 + 0.5, im_min: -30.0, im_max: 30.0 };
        let winding = count_zeros(&f, full, &WindingOptions::default()).unwrap();
        assert_eq!(winding + m.poles.len() as i64, 2 * upper, "{id}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn counts_add_over_random_splits(x in 0.62..1.9f64, y in 6.0..39.0f64, vertical in any::<bool>()) {
        let r = Rectangle { re_min: 0.6, re_max: 2.0, im_min: 5.0, im_max: 40.0 };
        let (a, b) = if vertical {
            (Rectangle { re_max: x, ..r }, Rectangle { re_min: x, ..r })
        } else {
            (Rectangle { im_max: y, ..r }, Rectangle { im_min: y, ..r })
        };
        let o = WindingOptions::default();
        let whole = count_zeros(&l_star, r, &o).unwrap();
        prop_assert_eq!(whole, count_zeros(&l_star, a, &o).unwrap() + count_zeros(&l_star, b, &o).unwrap());
    }
}

#[test]
fn littlewood_formula_matches_the_zero_sum() {
    for alpha in [0.6, 0.75] {
        for t in [20.0, 30.0] {
            let parts = littlewood_rhs(&l_star, alpha, t, &sl2z().poles, &WindingOptions::default()).unwrap();
            let f1 = f1_sum(&census().zeros, alpha, t);
            assert!((parts.total - f1).abs() < 1e-3, "alpha {alpha}, T {t}: {parts:?} vs {f1}");
        }
    }
}

#[test]
fn sandwich_holds_on_the_census() {
    let z = &census().zeros;
    for alpha in [0.5, 0.55, 0.7] {
        for k in 4..=98 {
            let t = 0.5 * k as f64;
            let f = |t| f_smoothed_sum(z, alpha, t);
            assert!(sandwich_check(f(t - 1.0), f(t), f(t + 1.0), f1_sum(z, alpha, t)), "alpha {alpha}, T {t}");
        }
    }
}

#[test]
fn zeros_sit_over_zeta_zeros() {
    let zeta = zeta_zeros_up_to(100.0, &PrecisionProfile::default()).unwrap();
    let zeros = &census().zeros;
    assert_eq!(zeros.len(), zeta.len());
    for (z, r) in zeros.iter().zip(&zeta) {
        assert_eq!(z.multiplicity, 1);
        assert!((z.beta - 0.75).abs() < 1e-6 && (z.gamma - r.ordinate / 2.0).abs() < 1e-6, "{z:?} vs {r:?}");
    }
}
