//! Local invariants of rank-2 bundles on `Z_k`, the total space of
//! `O(-k)` over the projective line.
//!
//! A bundle with vanishing first Chern class and splitting type `j` is
//! given by a transition matrix `[[z^j, p], [0, z^-j]]`. Contracting the
//! zero section yields the cone `X_k`. The local charge, width plus
//! height, measures what the bundle loses in the contraction.
//!
//! ```
//! use localchi::{bundle::CanonicalBundle, invariants::local_charge, ComputeOptions};
//!
//! let b = CanonicalBundle::parse(3, 3, "z*u").unwrap();
//! let report = local_charge(&b, &ComputeOptions::default()).unwrap();
//! assert_eq!((report.width, report.height, report.chi), (0, 2, 2));
//! ```

pub mod algebra;
pub mod bundle;
pub mod cone;
mod error;
pub mod invariants;
mod options;
pub mod pushforward;

pub use error::{AlgebraError, Error, ParseError};
pub use options::{ComputeOptions, FieldMode, Truncation};
