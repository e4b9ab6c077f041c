//! Primitive length spectra from reduced quadratic forms, cross-checked by
//! brute-force conjugacy classes, and compared between two lattices.

use hypscatter::lattices::LatticeModel;
use hypscatter::lengths::{brute_force_conjugacy_oracle, dl_estimate, length_spectrum};

fn main() {
    let sl2z = LatticeModel::sl2z();
    let spec = length_spectrum(&sl2z, 6.0).unwrap();
    println!("SL2(Z) primitive lengths up to 6:");
    for e in &spec {
        println!("  trace {:>3}  length {:.6}  multiplicity {}", e.trace, e.length, e.multiplicity);
    }
    println!("brute force: {:?}", brute_force_conjugacy_oracle(&sl2z, 12, 40).unwrap());

    let g = LatticeModel::gamma0(2).unwrap();
    let a = length_spectrum(&sl2z, 10.0).unwrap();
    let b = length_spectrum(&g, 10.0).unwrap();
    let grid: Vec<f64> = (1..=20).map(|k| 0.5 * k as f64).collect();
    let cmp = dl_estimate(&a, &b, &grid);
    for (t, v) in cmp.t_grid.iter().zip(&cmp.dl_values).step_by(4) {
        println!("D_L(T = {t}) = {v}");
    }
    println!("growth rate estimate d_L = {:.4}", cmp.dl_estimate);
}
