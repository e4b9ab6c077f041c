//! Gaussian integers `Z[i]`.

use num_complex::Complex64;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussInt {
    pub re: i64,
    pub im: i64,
}

pub const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };
pub const I: GaussInt = GaussInt { re: 0, im: 1 };

impl GaussInt {
    pub const fn new(re: i64, im: i64) -> Self {
        GaussInt { re, im }
    }

    pub fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub fn conj(self) -> Self {
        GaussInt::new(self.re, -self.im)
    }

    pub fn is_zero(self) -> bool {
        self == ZERO
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }

    /// Box size `max(|re|, |im|)`.
    pub fn height(self) -> i64 {
        self.re.abs().max(self.im.abs())
    }

    /// Exact quotient, if `other` divides `self`.
    pub fn div_exact(self, other: GaussInt) -> Option<GaussInt> {
        let n = other.norm();
        if n == 0 {
            return None;
        }
        let p = self * other.conj();
        (p.re % n == 0 && p.im % n == 0).then(|| GaussInt::new(p.re / n, p.im / n))
    }

    /// Remainder of division with the quotient rounded to the nearest lattice point.
    pub fn rem_round(self, other: GaussInt) -> GaussInt {
        let n = other.norm();
        let p = self * other.conj();
        let q = GaussInt::new(div_round(p.re, n), div_round(p.im, n));
        self - q * other
    }

    /// Associate with `re > 0, im >= 0` (zero maps to zero).
    pub fn normalized(self) -> GaussInt {
        let mut z = self;
        if z.is_zero() {
            return z;
        }
        for _ in 0..4 {
            if z.re > 0 && z.im >= 0 {
                return z;
            }
            z = z * I;
        }
        unreachable!("one associate lies in the first quadrant")
    }
}

fn div_round(a: i64, n: i64) -> i64 {
    (2 * a + n).div_euclid(2 * n)
}

pub fn gcd(mut a: GaussInt, mut b: GaussInt) -> GaussInt {
    while !b.is_zero() {
        let r = a.rem_round(b);
        a = b;
        b = r;
    }
    a.normalized()
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re + o.re, self.im + o.im)
    }
}

impl Sub for GaussInt {
    type Output = GaussInt;
    fn sub(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for GaussInt {
    type Output = GaussInt;
    fn neg(self) -> GaussInt {
        GaussInt::new(-self.re, -self.im)
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    (g, y, x - a.div_euclid(b) * y)
}

/// A complete set of residues modulo `c`: the box `[0, g) x [0, N(c)/g)` for
/// `g = gcd(re c, im c)`, which is a fundamental domain of the lattice `c Z[i]`
/// because that lattice has Hermite basis `(g, *), (0, N(c)/g)`.
pub fn residues(c: GaussInt) -> impl Iterator<Item = GaussInt> {
    let n = c.norm();
    let (g, _, _) = ext_gcd(c.re, c.im);
    let (g, h) = if n == 0 { (0, 0) } else { (g, n / g) };
    (0..g).flat_map(move |x| (0..h).map(move |y| GaussInt::new(x, y)))
}

/// Number of residues mod `c` coprime to `c`, by direct count.
pub fn totient_by_residues(c: GaussInt) -> u64 {
    residues(c).filter(|r| gcd(c, *r).is_unit()).count() as u64
}
