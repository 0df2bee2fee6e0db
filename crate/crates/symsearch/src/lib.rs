//! Symmetry-aware modelling, search and verification for small constraint
//! problems over integer domains.
//!
//! The crate is organised in layers:
//!
//! * [`assignment`] and [`symmetry`] define the basic vocabulary: total and
//!   partial assignments, and symmetries acting on them (a variable
//!   permutation paired with a value permutation).
//! * [`csp`] provides the problem representation, the constraint vocabulary
//!   and a deterministic backtracking enumerator with reproducible node
//!   counts.
//! * [`symbreak`] emits symmetry-breaking constraints (lex-leader sets and a
//!   corner ordering for square problems), transforms them through
//!   symmetries, and validates what a candidate set does to each orbit of
//!   solutions.
//! * [`internal`] restricts a problem to assignments fixed by a symmetry,
//!   and runs the find-then-restrict pipeline that discovers symmetries
//!   inside seed solutions and carries them to a larger instance.
//! * [`problems`] builds the shipped problem families (magic squares,
//!   progression-free colourings, graceful labellings), their symmetry
//!   catalogues, independent certificate verifiers and the text certificate
//!   formats.

pub mod assignment;
pub mod csp;
pub mod error;
pub mod internal;
pub mod problems;
pub mod symbreak;
pub mod symmetry;

pub use assignment::Assignment;
pub use error::{Error, Result};
pub use symmetry::{Symmetry, SymmetryGroupSpec, ValuePerm, VarPerm};
