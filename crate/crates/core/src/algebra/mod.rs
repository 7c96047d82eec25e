//! Exact polynomial arithmetic and Gröbner bases for submodules of free
//! modules.

pub mod field;
pub mod groebner;
pub mod linalg;
pub mod monomial;
pub mod poly;
pub mod vector;
pub mod zu;

pub use field::{format_rational, parse_rational, Field, Fp, Rational, PRIME};
pub use groebner::{groebner, groebner_modulo, ideal_groebner, kernel, lift, GroebnerBasis, IncrementalBasis, ModuleOrder};
pub use monomial::Monomial;
pub use poly::Polynomial;
pub use vector::{FreeModule, FreeVector, Term};
pub use zu::ZuPoly;
