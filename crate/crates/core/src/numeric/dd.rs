//! Double-double arithmetic and compensated accumulators.
//!
//! A [`DoubleDouble`] carries an unevaluated sum `hi + lo` with `|lo| <= ulp(hi)/2`,
//! giving roughly 32 significant digits for additions and products.
//! The accumulators are what the rest of the crate actually uses: long
//! Dirichlet sums and quadrature panel totals go through them.

use num_complex::Complex64;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

/// Error-free transformation `a + b = s + e`.
#[inline]
pub fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    let e = (a - (s - bb)) + (b - bb);
    (s, e)
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let e = b - (s - a);
    (s, e)
}

/// Error-free transformation `a * b = p + e` using a fused multiply-add.
#[inline]
pub fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let e = a.mul_add(b, -p);
    (p, e)
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        DoubleDouble::new(x)
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;
    fn add(self, rhs: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Add<f64> for DoubleDouble {
    type Output = DoubleDouble;
    fn add(self, rhs: f64) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        DoubleDouble { hi, lo }
    }
}

impl AddAssign<f64> for DoubleDouble {
    fn add_assign(&mut self, rhs: f64) {
        *self = *self + rhs;
    }
}

impl AddAssign for DoubleDouble {
    fn add_assign(&mut self, rhs: DoubleDouble) {
        *self = *self + rhs;
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    fn neg(self) -> DoubleDouble {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;
    fn sub(self, rhs: DoubleDouble) -> DoubleDouble {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;
    fn mul(self, rhs: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = DoubleDouble;
    fn mul(self, rhs: f64) -> DoubleDouble {
        self * DoubleDouble::new(rhs)
    }
}

/// Neumaier (improved Kahan) summation for `f64`.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for KahanSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = KahanSum::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Working precision of long accumulations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WorkingPrecision {
    #[default]
    Double,
    DoubleDouble,
}

impl WorkingPrecision {
    pub fn tag(self) -> &'static str {
        match self {
            WorkingPrecision::Double => "double",
            WorkingPrecision::DoubleDouble => "dd",
        }
    }
}

impl std::str::FromStr for WorkingPrecision {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "double" => Ok(WorkingPrecision::Double),
            "dd" | "double_double" => Ok(WorkingPrecision::DoubleDouble),
            other => Err(format!("unknown precision '{other}' (expected double|dd)")),
        }
    }
}

/// Complex accumulator whose behaviour depends on the working precision:
/// plain `f64` adds, or double-double adds on each component.
#[derive(Debug, Clone, Copy)]
pub struct ComplexAccumulator {
    mode: WorkingPrecision,
    re: DoubleDouble,
    im: DoubleDouble,
}

impl ComplexAccumulator {
    pub fn new(mode: WorkingPrecision) -> Self {
        ComplexAccumulator { mode, re: DoubleDouble::ZERO, im: DoubleDouble::ZERO }
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        match self.mode {
            WorkingPrecision::Double => {
                self.re.hi += z.re;
                self.im.hi += z.im;
            }
            WorkingPrecision::DoubleDouble => {
                self.re += z.re;
                self.im += z.im;
            }
        }
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}
