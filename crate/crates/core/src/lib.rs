//! Exact computer algebra for graded modules over monomial quotient rings:
//! finite presentations, minimal free resolutions, Betti growth across
//! truncation towers with an empirical λ classification, Ext/Tor dimension
//! profiles against degreewise dual modules, and seeded property-test
//! suites for the homological laws these invariants obey.

pub mod error;
pub mod harness;
pub mod homalg;
pub mod kernel;
pub mod linalg;
pub mod modules;
pub mod monomial;
pub mod oracle;
pub mod pattern;
pub mod poly;
pub mod resolution;
pub mod ring;
pub mod scalar;
pub mod tower;

pub use error::{Error, Result};
pub use monomial::{Monomial, VarRef};
pub use pattern::RingPattern;
pub use ring::GradedRing;
pub use scalar::{FieldSpec, Scalar};
