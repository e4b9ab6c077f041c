//! Ruelle and Selberg zeta functions as truncated Euler products, and the
//! zero/pole lattice of a perturbed length spectrum.

use hypscatter::lattices::LatticeModel;
use hypscatter::lengths::{length_spectrum, ruelle_zeta, surface_zeta, zeta_identity_check, PerturbationQuotient};
use hypscatter::zerodist::WindingOptions;
use num_complex::Complex64;

fn main() {
    let spec = length_spectrum(&LatticeModel::sl2z(), 10.0).unwrap();
    let s = Complex64::new(3.5, 2.0);
    let r = ruelle_zeta(&spec, s, 10.0).unwrap();
    let z = surface_zeta(&spec, s, 10.0, 8).unwrap();
    println!("R({s}) = {:.12} (tail {:.1e})", r.value, r.tail_bound);
    println!("Z({s}) = {:.12} (tail {:.1e})", z.value, z.tail_bound);
    println!("|R - Z(s)/Z(s+1)| = {:.1e}", zeta_identity_check(&spec, s, 10.0, 8, 7).unwrap());

    for (name, q) in [("single", PerturbationQuotient::single_preset()), ("paired", PerturbationQuotient::paired_preset())] {
        let found = q.locate(3.5, 1e-8, &WindingOptions::default()).unwrap();
        println!("{name} perturbation, |Im s| <= 3.5:");
        for p in found {
            println!("  s = {:>8.5} {:+.5}i  order {:+}", p.s.re, p.s.im, p.order);
        }
    }
}
