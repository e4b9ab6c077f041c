pub mod dd;
pub mod quad;

pub use dd::{ComplexAccumulator, DoubleDouble, KahanSum, WorkingPrecision};
pub use quad::{integrate, integrate_with_breaks, Integral, QuadOptions, QuadratureError};
