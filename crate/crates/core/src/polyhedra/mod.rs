//! Exact polytopes and the g-polymatroid machinery built on them.

mod decompose;
mod gmatroid;
mod polytope;

pub use decompose::*;
pub use gmatroid::*;
pub use polytope::*;
