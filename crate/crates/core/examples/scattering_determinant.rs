//! Closed-form and series-backed scattering matrices, the functional
//! equation, and unitarity on the critical line.

use hypscatter::lattices::{LatticeId, LatticeModel};
use hypscatter::scattering::{build_from_double_cosets, functional_equation_residual, maass_selberg_bound_check, ScatteringModel};
use hypscatter::specfun::PrecisionProfile;
use num_complex::Complex64;

fn main() {
    let p = PrecisionProfile::default();
    for id in [LatticeId::SL2Z, LatticeId::Gamma0(2), LatticeId::SL2ZiGaussian] {
        let m = ScatteringModel::closed_form(id, p);
        let h = m.critical_line();
        let s = Complex64::new(h + 0.3, 7.0);
        println!("{id}: d = {}, kappa = {}, a_Gamma = {:.6}, poles {:?}", m.d, m.kappa, m.a_gamma, m.poles);
        println!("  det phi({s}) = {:.8}", m.scattering_determinant(s).unwrap());
        println!("  |det phi({h} + 20i)| = {:.15}", m.scattering_determinant(Complex64::new(h, 20.0)).unwrap().norm());
        println!("  functional equation residual {:.1e}", functional_equation_residual(&m, s).unwrap());
        let row = maass_selberg_bound_check(&m, h + 0.5, 25.0, 1.0).unwrap();
        println!("  max |phi_ij| = {:.4} against envelope {:.4}", row.lhs, row.rhs);
    }

    let series = build_from_double_cosets(&LatticeModel::gamma0(2).unwrap(), 1e6, p).unwrap();
    let exact = ScatteringModel::closed_form(LatticeId::Gamma0(2), p);
    let s = Complex64::new(1.8, 4.0);
    let (v, bound) = series.phi_matrix_with_bounds(s).unwrap();
    let w = exact.phi_matrix(s).unwrap();
    for i in 0..2 {
        for j in 0..2 {
            println!("phi_{i}{j}({s}): series {:.8} (tail {:.1e}), closed form {:.8}", v[i][j], bound[i][j], w[i][j]);
        }
    }
}
