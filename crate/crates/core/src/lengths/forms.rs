//! Indefinite binary quadratic forms `a x^2 + b xy + c y^2`: reduced forms,
//! the cycle operator and narrow class numbers.

use crate::lattices::Mat2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Form {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn content(&self) -> i64 {
        gcd(gcd(self.a, self.b), self.c)
    }

    /// The automorph of trace `t` attached to `g` times this form:
    /// `[[(t - g b)/2, -g c], [g a, (t + g b)/2]]`.
    pub fn automorph(&self, t: i64, g: i64) -> Mat2 {
        Mat2::new((t - g * self.b) / 2, -g * self.c, g * self.a, (t + g * self.b) / 2)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn isqrt(n: i64) -> i64 {
    if n < 0 {
        return -1;
    }
    let mut r = (n as f64).sqrt() as i64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_square(n: i64) -> bool {
    n >= 0 && isqrt(n).pow(2) == n
}

/// `0 < b < sqrt(D)` and `sqrt(D) - b < 2|a| < sqrt(D) + b`, in exact arithmetic.
pub fn is_reduced(f: &Form) -> bool {
    let d = f.discriminant();
    let two_a = 2 * f.a.abs();
    let upper = two_a - f.b <= 0 || (two_a - f.b).pow(2) < d;
    f.b > 0 && f.b * f.b < d && d < (two_a + f.b).pow(2) && upper
}

/// Primitive reduced forms of a positive non-square discriminant.
pub fn reduced_forms(d: i64) -> Vec<Form> {
    assert!(d > 0 && !is_square(d), "discriminant must be a positive non-square");
    let root = isqrt(d);
    let mut out = Vec::new();
    let mut b = if d % 2 == 0 { 2 } else { 1 };
    while b <= root {
        let n = (d - b * b) / 4;
        let mut k = 1;
        while k * k <= n {
            if n % k == 0 {
                for a in [k, n / k] {
                    for a in [a, -a] {
                        let f = Form { a, b, c: -n / a };
                        if is_reduced(&f) && f.content() == 1 && !out.contains(&f) {
                            out.push(f);
                        }
                    }
                }
            }
            k += 1;
        }
        b += 2;
    }
    out.sort();
    out
}

/// `rho(a, b, c) = (c, b', (b'^2 - D)/(4c))` with `b' = -b mod 2|c|` and
/// `sqrt(D) - 2|c| < b' < sqrt(D)`; properly equivalent via `[[0, -1], [1, k]]`.
pub fn rho(f: &Form) -> Form {
    let d = f.discriminant();
    let m = 2 * f.c.abs();
    let root = isqrt(d);
    let b2 = -f.b + m * (root + f.b).div_euclid(m);
    Form { a: f.c, b: b2, c: (b2 * b2 - d) / (4 * f.c) }
}

/// Cycles of reduced forms under `rho`; one per proper equivalence class.
pub fn cycles(d: i64) -> Vec<Vec<Form>> {
    let mut remaining = reduced_forms(d);
    let mut out = Vec::new();
    while let Some(&start) = remaining.first() {
        let mut cyc = vec![start];
        let mut f = rho(&start);
        while f != start {
            cyc.push(f);
            f = rho(&f);
            assert!(cyc.len() <= remaining.len(), "rho left the reduced forms at {f:?}");
        }
        remaining.retain(|x| !cyc.contains(x));
        out.push(cyc);
    }
    out
}

pub fn narrow_class_number(d: i64) -> usize {
    cycles(d).len()
}

/// True when `u` is the least positive solution of `t^2 - d u^2 = 4`.
pub fn is_fundamental(d: i64, u: i64) -> bool {
    is_square(d * u * u + 4) && (1..u).all(|v| !is_square(d * v * v + 4))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_numbers() {
        // narrow class numbers of small discriminants
        let known = [(5, 1), (8, 1), (12, 2), (13, 1), (17, 1), (21, 2), (24, 2), (28, 2), (29, 1), (60, 4), (136, 4), (145, 4)];
        for (d, h) in known {
            assert_eq!(narrow_class_number(d), h, "D = {d}");
        }
    }

    #[test]
    fn rho_preserves_reduction_and_discriminant() {
        for d in [5, 12, 21, 60, 221, 1000, 4093] {
            if d % 4 > 1 {
                continue;
            }
            for f in reduced_forms(d) {
                let g = rho(&f);
                assert!(is_reduced(&g) && g.discriminant() == d, "{f:?} -> {g:?}");
            }
        }
    }

    #[test]
    fn automorphs_have_unit_determinant() {
        let f = Form { a: 1, b: 1, c: -1 };
        let m = f.automorph(3, 1);
        assert_eq!((m.det(), m.trace()), (1, 3));
    }

    #[test]
    fn pell() {
        assert!(is_fundamental(5, 1));
        assert!(!is_fundamental(5, 3));
        assert!(is_fundamental(12, 1));
        assert!(is_fundamental(8, 2));
        assert!(!is_fundamental(8, 1));
    }
}
