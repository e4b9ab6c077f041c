//! Moebius maps acting on upper half-space through their Lorentz embedding.

use hypscatter::hypgeom::{action_params, apply_isometry, distance, ActionParams, UpperHalfSpacePoint};
use hypscatter::lattices::{embed_sl2c, embed_sl2r};
use num_complex::Complex64;

fn main() {
    let g = embed_sl2r(&[[2.0, 1.0], [3.0, 2.0]]).unwrap();
    let p = UpperHalfSpacePoint::new(vec![0.3], 1.2).unwrap();
    let q = UpperHalfSpacePoint::new(vec![-1.0], 0.4).unwrap();
    let (gp, gq) = (apply_isometry(&g, &p).unwrap(), apply_isometry(&g, &q).unwrap());
    println!("d(p, q) = {:.15}", distance(&p, &q));
    println!("d(gp, gq) = {:.15}", distance(&gp, &gq));
    if let ActionParams::Inversion { lambda, eta } = action_params(&g).unwrap() {
        println!("lambda = {lambda} (c^2 = 9), eta = {eta:?}");
    }

    let i = Complex64::i();
    let one = Complex64::new(1.0, 0.0);
    let h = embed_sl2c(&[[one, i], [one + i, i]]).unwrap();
    let z = UpperHalfSpacePoint::new(vec![0.5, -0.25], 2.0).unwrap();
    let w = apply_isometry(&h, &z).unwrap();
    println!("in dimension 3: {z:?} -> {w:?}, lambda = {}", action_params(&h).unwrap().lambda());
}
