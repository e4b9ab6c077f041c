use hypscatter::hypgeom::{action_params, apply_isometry, distance, UpperHalfSpacePoint};
use hypscatter::lattices::{embed_sl2c, embed_sl2r};
use num_complex::Complex64;
use proptest::prelude::*;

fn sl2r(a: f64, b: f64, c: f64) -> [[f64; 2]; 2] {
    [[a, b], [c, (1.0 + b * c) / a]]
}

fn point2() -> impl Strategy<Value = UpperHalfSpacePoint> {
    (-3.0..3.0f64, 0.1..4.0f64).prop_map(|(x, y)| UpperHalfSpacePoint::new(vec![x], y).unwrap())
}

fn point3() -> impl Strategy<Value = UpperHalfSpacePoint> {
    (-3.0..3.0f64, -3.0..3.0f64, 0.1..4.0f64).prop_map(|(x1, x2, y)| UpperHalfSpacePoint::new(vec![x1, x2], y).unwrap())
}

fn entry() -> impl Strategy<Value = f64> {
    prop_oneof![-2.5..-0.4f64, 0.4..2.5f64]
}

fn sl2c() -> impl Strategy<Value = [[Complex64; 2]; 2]> {
    (entry(), -1.0..1.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64).prop_map(|(ar, ai, br, bi, cr, ci)| {
        let a = Complex64::new(ar, ai);
        let b = Complex64::new(br, bi);
        let c = Complex64::new(cr, ci);
        [[a, b], [c, (1.0 + b * c) / a]]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn distance_is_invariant_in_dimension_two(a in entry(), b in -2.0..2.0f64, c in -2.0..2.0f64, p in point2(), q in point2()) {
        let g = embed_sl2r(&sl2r(a, b, c)).unwrap();
        let before = distance(&p, &q);
        let after = distance(&apply_isometry(&g, &p).unwrap(), &apply_isometry(&g, &q).unwrap());
        prop_assert!((before - after).abs() < 1e-10 * (1.0 + before), "{before} vs {after}");
    }

    #[test]
    fn distance_is_invariant_in_dimension_three(m in sl2c(), p in point3(), q in point3()) {
        let g = embed_sl2c(&m).unwrap();
        let before = distance(&p, &q);
        let after = distance(&apply_isometry(&g, &p).unwrap(), &apply_isometry(&g, &q).unwrap());
        prop_assert!((before - after).abs() < 1e-10 * (1.0 + before), "{before} vs {after}");
    }

    #[test]
    fn lambda_is_invariant_under_translations(a in entry(), b in -2.0..2.0f64, c in entry(), u in -5.0..5.0f64) {
        let m = sl2r(a, b, c);
        let lam = action_params(&embed_sl2r(&m).unwrap()).unwrap().lambda();
        let mn = [[m[0][0], m[0][0] * u + m[0][1]], [m[1][0], m[1][0] * u + m[1][1]]];
        let lam_n = action_params(&embed_sl2r(&mn).unwrap()).unwrap().lambda();
        prop_assert!((lam - c * c).abs() < 1e-9 * (1.0 + lam));
        prop_assert!((lam - lam_n).abs() < 1e-9 * (1.0 + lam));
    }

    #[test]
    fn lambda_is_invariant_under_gaussian_translations(m in sl2c(), u in -3.0..3.0f64, v in -3.0..3.0f64) {
        prop_assume!(m[1][0].norm() > 0.3);
        let w = Complex64::new(u, v);
        let mn = [[m[0][0], m[0][0] * w + m[0][1]], [m[1][0], m[1][0] * w + m[1][1]]];
        let lam = action_params(&embed_sl2c(&m).unwrap()).unwrap().lambda();
        let lam_n = action_params(&embed_sl2c(&mn).unwrap()).unwrap().lambda();
        prop_assert!((lam - lam_n).abs() < 1e-9 * (1.0 + lam), "{lam} vs {lam_n}");
    }
}

#[test]
fn inversion_identity_is_constant_over_random_points() {
    use hypscatter::hypgeom::ActionParams;
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for m in [sl2r(2.0, 1.0, 3.0), sl2r(0.5, -1.5, 0.7)] {
        let g = embed_sl2r(&m).unwrap();
        let ActionParams::Inversion { lambda, eta } = action_params(&g).unwrap() else { panic!("c != 0") };
        for _ in 0..100 {
            let z = UpperHalfSpacePoint::new(vec![rng.gen_range(-4.0..4.0)], rng.gen_range(0.05..5.0)).unwrap();
            let gz = apply_isometry(&g, &z).unwrap();
            let r = z.y / (gz.y * (z.y * z.y + (z.x[0] + eta[0]).powi(2)));
            assert!((r - lambda).abs() < 1e-10 * lambda, "{r} vs {lambda}");
        }
    }
    let m = [[Complex64::new(1.0, 1.0), Complex64::new(2.0, 0.0)], [Complex64::new(1.0, -1.0), Complex64::new(3.0, 0.0)]];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let m = m.map(|r| r.map(|v| v / det.sqrt()));
    let g = embed_sl2c(&m).unwrap();
    let ActionParams::Inversion { lambda, eta } = action_params(&g).unwrap() else { panic!("c != 0") };
    for _ in 0..100 {
        let z = UpperHalfSpacePoint::new(vec![rng.gen_range(-4.0..4.0), rng.gen_range(-4.0..4.0)], rng.gen_range(0.05..5.0)).unwrap();
        let gz = apply_isometry(&g, &z).unwrap();
        let shift = (z.x[0] + eta[0]).powi(2) + (z.x[1] + eta[1]).powi(2);
        let r = z.y / (gz.y * (z.y * z.y + shift));
        assert!((r - lambda).abs() < 1e-10 * lambda, "{r} vs {lambda}");
    }
}
