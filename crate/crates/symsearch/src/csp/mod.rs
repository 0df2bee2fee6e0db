//! Problem representation, constraint vocabulary and deterministic search.

pub mod constraint;
pub mod problem;
pub mod search;

pub use constraint::{arithmetic_progressions, CheckOutcome, Constraint};
pub use problem::Problem;
pub use search::{enumerate, solve, SearchConfig, SearchOutcome, SearchResult, SearchStats, ValOrder, VarOrder};
