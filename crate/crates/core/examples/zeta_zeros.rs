//! Riemann zeta zeros from sign changes of Hardy's Z, checked against the
//! argument principle.

use hypscatter::specfun::{count_zeta_zeros_rectangle, dedekind_zeta_qi, riemann_zeta, zeta_zeros_up_to, PrecisionProfile};
use num_complex::Complex64;

fn main() {
    let p = PrecisionProfile::default();
    let zeros = zeta_zeros_up_to(60.0, &p).unwrap();
    for z in &zeros {
        let v = riemann_zeta(Complex64::new(0.5, z.ordinate)).unwrap();
        println!("{:>16.10}  |zeta| = {:.1e}", z.ordinate, v.norm());
    }
    println!("N(60) = {} by sign changes, {} by the argument principle", zeros.len(), count_zeta_zeros_rectangle(60.0, &p).unwrap());
    println!("zeta_Q(i)(2) = {}", dedekind_zeta_qi(Complex64::new(2.0, 0.0)).unwrap());
}
