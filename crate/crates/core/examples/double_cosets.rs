//! Double-coset spectra `{(lambda, count)}` whose Dirichlet series give the
//! scattering matrix entries.

use hypscatter::lattices::{enumerate_double_cosets, LatticeModel};

fn main() {
    let sl2z = enumerate_double_cosets(&LatticeModel::sl2z(), 0, 0, 144.0).unwrap();
    println!("SL2(Z): lambda = c^2 with Euler's totient as multiplicity");
    for e in &sl2z.entries {
        println!("  {:>6} {:>4}", e.lambda, e.count);
    }
    let g = LatticeModel::gamma0(3).unwrap();
    for (i, j) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let s = enumerate_double_cosets(&g, i, j, 100.0).unwrap();
        let head: Vec<String> = s.entries.iter().take(6).map(|e| format!("{}x{}", e.lambda, e.count)).collect();
        println!("Gamma0(3) entry ({i},{j}): {}", head.join(" "));
    }
    let k = enumerate_double_cosets(&LatticeModel::gaussian(), 0, 0, 30.0).unwrap();
    let head: Vec<String> = k.entries.iter().map(|e| format!("{}x{}", e.lambda, e.count)).collect();
    println!("SL2(Z[i]): {}", head.join(" "));
}
