//! Exact decision procedures for unramified extensions of `Q(t1..tn)`.
//!
//! * [`poly`]: integers, rationals, sparse multivariate and dense univariate
//!   polynomials, resultants and discriminants.
//! * [`gf`]: finite fields as towers over `F_p` and factorization over them.
//! * [`orders`]: monogenic presentations, triangular maximal ideals, fiber
//!   factorization and the Dedekind criterion.
//! * [`ramification`]: local and relative unramifiedness, composites and
//!   the executable checks on towers, composites and base change.
//! * [`audits`]: bounded searches for unit-discriminant generators and the
//!   fundamental-group report built on them.
//! * [`spec`]: the field-spec text format.

pub mod audits;
pub mod error;
pub mod gf;
pub mod orders;
pub mod poly;
pub mod ramification;
pub mod spec;

pub use error::{Error, Result};
