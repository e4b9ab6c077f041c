//! The positive Dirichlet series sum phi(n)/n n^{-s} = zeta(s)/zeta(s+1):
//! summatory asymptotics, smoothed truncation and mean squares.

use hypscatter::dirichlet::{
    mean_square, mean_square_envelope, sigma1, smoothed_truncation, summatory, summatory_deviation_sup,
    PositiveDirichletSeries, Sigma1Rule, TruncationWindow,
};
use hypscatter::numeric::QuadOptions;
use hypscatter::specfun::riemann_zeta;
use num_complex::Complex64;
use std::f64::consts::PI;

fn main() {
    let f = PositiveDirichletSeries::sl2z_scaled(1_000_000);
    let a = 6.0 / (PI * PI);
    for x in [1e2, 1e4, 1e6] {
        println!("A({x:e}) = {:.3}, (6/pi^2) x = {:.3}", summatory(&f, x).unwrap(), a * x);
    }
    println!("sup |A(x) - (6/pi^2) x| / log x = {:.4}", summatory_deviation_sup(&f, a, 1e6).unwrap());

    let exact = |s: Complex64| riemann_zeta(s).unwrap() / riemann_zeta(s + 1.0).unwrap();
    let w = TruncationWindow::new(1e6, 1).unwrap();
    let (lo, hi) = w.t_range(0.75, f.growth_exponent());
    println!("window for sigma_0 = 3/4: {lo:.2} <= t <= {hi:.3e}");
    for s in [Complex64::new(0.8, 10.0), Complex64::new(1.0, 30.0), Complex64::new(1.4, 45.0)] {
        let v = smoothed_truncation(&f, &w, s).unwrap();
        println!("  s = {s}: f* = {v:.6}, f = {:.6}", exact(s));
    }

    let s1 = sigma1(f.growth_exponent(), Sigma1Rule::Proposition);
    let opts = QuadOptions { abs_tol: 1e-8, rel_tol: 1e-8, max_panels: 20_000 };
    for sigma in [0.6, 0.75, 1.0] {
        let m = mean_square(exact, sigma, 100.0, s1, opts).unwrap().value;
        println!("sigma = {sigma}: mean square to T = 100 is {m:.4}, envelope {:.4}", mean_square_envelope(sigma, s1, 100.0));
    }
}
