use hypscatter::hypgeom::action_params;
use hypscatter::lattices::{double_coset_representatives, embed_sl2c, embed_sl2r, enumerate_double_cosets, LatticeModel};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn sl2z_multiplicities_are_totients() {
    let spec = enumerate_double_cosets(&LatticeModel::sl2z(), 0, 0, 1e4).unwrap();
    assert_eq!(spec.len(), 100);
    for (k, e) in spec.entries.iter().enumerate() {
        let c = k as u64 + 1;
        let phi = (1..=c).filter(|&a| gcd(a, c) == 1).count() as u64;
        assert_eq!((e.lambda, e.count), ((c * c) as f64, phi));
    }
}

#[test]
fn off_diagonal_lambdas_are_positive() {
    for p in [2, 3, 5, 7] {
        let m = LatticeModel::gamma0(p).unwrap();
        for (i, j) in [(0, 1), (1, 0)] {
            let s = enumerate_double_cosets(&m, i, j, 500.0).unwrap();
            assert!(!s.is_empty());
            assert!(s.entries.iter().all(|e| e.lambda > 0.0 && e.count > 0), "p = {p}, ({i},{j})");
        }
    }
}

#[test]
fn representatives_reproduce_their_lambda() {
    for model in [LatticeModel::sl2z(), LatticeModel::gamma0(3).unwrap(), LatticeModel::gaussian()] {
        let cusps = model.cusps.len();
        for i in 0..cusps {
            for j in 0..cusps {
                for (lambda, g) in double_coset_representatives(&model, i, j, 60.0).unwrap() {
                    let a = if model.d == 2 { embed_sl2r(&g.map(|r| r.map(|v| v.re))) } else { embed_sl2c(&g) };
                    let got = action_params(&a.unwrap()).unwrap().lambda();
                    assert!((got - lambda).abs() < 1e-9 * lambda, "{} ({i},{j}): {got} vs {lambda}", model.id);
                }
            }
        }
    }
}
