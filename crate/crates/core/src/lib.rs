pub mod acceptance;
pub mod commands;
pub mod contour;
pub mod dirichlet;
pub mod expected;
pub mod hypgeom;
pub mod io;
pub mod lattices;
pub mod lengths;
pub mod numeric;
pub mod scattering;
pub mod specfun;
pub mod zerodist;
