pub mod asymptotics;
pub mod backlund;
pub mod dpe;
pub mod error;
pub mod exact;
pub mod fpoly;
pub mod halfint;
pub mod io;
pub mod map;
pub mod modgcd;
pub mod poly;
pub mod quad;
pub mod ratfunc;
pub mod roots;
pub mod scalar;
pub mod umemura;
pub mod verify;
pub mod zpoly;

pub use error::{Error, Result};
pub use exact::{format_gr, parse_gr, GaussianRational};
pub use ratfunc::{QPoly, RationalFunction};
pub use roots::{find_roots, Factor, RootOptions, RootSet};
pub use scalar::{BigComplex, BigFloat, Real};
pub use umemura::{build_u, piii_residual, umemura_table, Params, UmemuraTable};

/// Root sets at arbitrary precision.
pub type BigRootSet = roots::RootSet<BigFloat>;
/// Root sets with a plain `f64` backend.
pub type F64RootSet = roots::RootSet<f64>;
/// Root sets with the extended-exponent double backend.
pub type DpeRootSet = roots::RootSet<dpe::Dpe>;
/// Quartic with exact Gaussian-rational coefficients.
pub type ExactQuartic = asymptotics::Quartic<num_rational::BigRational>;
/// Quartic at arbitrary precision.
pub type BigQuartic = asymptotics::Quartic<BigFloat>;
