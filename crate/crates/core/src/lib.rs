//! Exact computations with generalized root systems, their Weyl groups and
//! rational polyhedral cones.
//!
//! * [`corevec`]: rational vectors, covectors, integer matrices;
//! * [`cone`]: double-description cones;
//! * [`roots`]: root systems, axioms, Coxeter matrices, named examples;
//! * [`weyl`]: reflections, word balls, dominance, tiling audits;
//! * [`looijenga`]: the orbit-minimum cone of a linear functional and
//!   fundamental-domain checks for matrix groups preserving a cone.

pub mod cone;
pub mod corevec;
pub mod error;
pub mod group;
pub mod looijenga;
pub mod roots;
pub mod sampling;
pub mod weyl;

pub use cone::{Cone, Description, Membership};
pub use corevec::{canonical_primitive, pair, IntMatrix, IntVec, RationalCovector, RationalVector};
pub use error::{Error, Result};
pub use group::{GroupElement, WordBall};
pub use roots::{builtin, coxeter_matrix, validate_root_system, Root, RootSystem};
