//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable {var} is bound more than once")]
    DuplicateBinding { var: usize },

    #[error("variable {var} is out of range for arity {arity}")]
    VarOutOfRange { var: usize, arity: usize },

    #[error("a total assignment is required, but only {bound} of {arity} variables are bound")]
    PartialAssignment { bound: usize, arity: usize },

    #[error("variable images are not a permutation of 0..{arity}")]
    InvalidVarPerm { arity: usize },

    #[error("value universe must be a sorted list of distinct integers")]
    InvalidUniverse,

    #[error("value images are not a permutation of the declared universe")]
    InvalidValPerm,

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("universes differ: {0}")]
    UniverseMismatch(String),

    #[error("value {value} (bound to variable {var}) is outside the value universe")]
    ValueOutsideUniverse { var: usize, value: i64 },

    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("not a closed symmetry group: {0}")]
    NotAGroup(String),

    #[error("symmetry is not a member of the supplied group")]
    NotInGroup,

    #[error("domain of variable {var} is empty")]
    EmptyDomain { var: usize },

    #[error("constraint value {value} is outside the problem's value universe")]
    ConstraintValueOutOfRange { value: i64 },

    #[error("malformed constraint: {0}")]
    MalformedConstraint(String),

    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot transform the constraint through this symmetry: {0}")]
    NotTransformable(String),

    #[error("invalid problem specification: {0}")]
    InvalidSpec(String),

    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),

    #[error("malformed symmetry literal: {0}")]
    MalformedSymmetry(String),

    #[error("unknown symmetry name `{0}`")]
    UnknownSymmetry(String),

    #[error("symmetry does not lift to the target instance: {0}")]
    NotLiftable(String),

    #[error("at least one seed solution is required")]
    NoSeeds,
}
