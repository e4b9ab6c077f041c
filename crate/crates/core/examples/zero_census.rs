//! Zeros of the completed determinant L* for SL2(Z): they sit at (1 + rho)/2
//! over the zeta zeros rho.

use hypscatter::lattices::LatticeId;
use hypscatter::scattering::ScatteringModel;
use hypscatter::specfun::{zeta_zeros_up_to, PrecisionProfile};
use hypscatter::zerodist::{l_star_census, WindingOptions};

fn main() {
    let p = PrecisionProfile::default();
    let m = ScatteringModel::closed_form(LatticeId::SL2Z, p);
    let census = l_star_census(&m, 40.0, 1e-10, &WindingOptions::default()).unwrap();
    let zeta = zeta_zeros_up_to(80.0, &p).unwrap();
    println!("{} zeros up to height 40 (rectangle count {})", census.zeros.len(), census.rectangle_count);
    for (z, r) in census.zeros.iter().zip(&zeta) {
        println!("  {:.10} + {:>14.10} i   (1 + rho)/2 = 0.75 + {:>14.10} i", z.beta, z.gamma, r.ordinate / 2.0);
    }
    let g = ScatteringModel::closed_form(LatticeId::Gamma0(2), p);
    let c = l_star_census(&g, 40.0, 1e-10, &WindingOptions::default()).unwrap();
    println!("Gamma0(2): {} zeros up to 40, multiplicity {}", c.zeros.len(), c.total_multiplicity());
}
