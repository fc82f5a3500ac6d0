//! Exact degenerate Stirling, Bell and Fubini polynomials, and a harness that
//! checks Spivey-type recurrences for them as polynomial identities.
//!
//! - [`algebra`]: rationals and sparse polynomials in `l, x, y, t`
//! - [`series`]: truncated EGFs, the generating-function oracle
//! - [`sequences`]: the degenerate families and their tables
//! - [`classical`]: non-degenerate reference values
//! - [`verify`]: identity checks and reports
//! - [`cli`]: the command-line front end

pub mod algebra;
pub mod classical;
pub mod cli;
pub mod error;
pub mod sequences;
pub mod series;
pub mod verify;

pub use algebra::{Bindings, Monomial, Poly, Rat, Var};
pub use error::{Error, Result};
pub use sequences::{Families, Provenance, SeqKind, SeqTable, Specialization};
pub use series::{NestedSeries, Series};
pub use verify::{IdentityId, Mode, Mutation, VerifyReport};
