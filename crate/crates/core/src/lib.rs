//! Exact toolkit for discrete concave tropical Plücker (DCTP) set functions.
//!
//! A DCTP function on `2^[n]` is submodular and satisfies the three-term
//! tropical Plücker relation. The crate covers Schubert matroid ranks
//! `θ_I`, weak separation, the crystal raising operator, g-polymatroid and
//! g-positroid geometry, regular subdivisions of `[0,1]^n`, and Grassmann
//! necklaces. All arithmetic is exact.

pub mod crystal;
pub mod dd;
pub mod error;
pub mod exact;
pub mod io;
pub mod lp;
pub mod necklace;
pub mod polyhedra;
pub mod scalar;
pub mod separation;
pub mod setfn;
pub mod schubert;
pub mod subdivision;
pub mod subset;
pub mod verdict;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Scalar;
pub use setfn::SetFunction;
pub use subset::{GroundSet, Mask};
pub use verdict::Verdict;

/// Arbitrary-precision rational, the default value type.
pub type Rational = num_rational::BigRational;
/// Set function with rational values.
pub type SetFn = SetFunction<Rational>;
/// Set function with machine-integer values (rank functions and their sums).
pub type IntSetFn = SetFunction<i64>;
