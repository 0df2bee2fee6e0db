//! Total and partial assignments of integer values to indexed variables.

use std::fmt;

use crate::error::{Error, Result};

/// A partial or total assignment over variables `0..arity`.
///
/// Bindings are kept sorted by variable index with no duplicates, so
/// equality and ordering are canonical. Values are plain integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Assignment {
    arity: usize,
    bindings: Vec<(usize, i64)>,
}

impl Assignment {
    /// Builds an assignment from `(variable, value)` pairs.
    ///
    /// Rejects variable indices `>= arity` and duplicate bindings for the
    /// same variable.
    pub fn new(arity: usize, bindings: impl IntoIterator<Item = (usize, i64)>) -> Result<Self> {
        let mut bindings: Vec<(usize, i64)> = bindings.into_iter().collect();
        bindings.sort_unstable();
        for pair in bindings.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::DuplicateBinding { var: pair[0].0 });
            }
        }
        if let Some(&(var, _)) = bindings.last() {
            if var >= arity {
                return Err(Error::VarOutOfRange { var, arity });
            }
        }
        Ok(Self { arity, bindings })
    }

    /// The empty assignment over `arity` variables.
    pub fn empty(arity: usize) -> Self {
        Self { arity, bindings: Vec::new() }
    }

    /// A total assignment binding variable `i` to `values[i]`.
    pub fn total(values: &[i64]) -> Self {
        Self {
            arity: values.len(),
            bindings: values.iter().copied().enumerate().collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of bound variables.
    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// An assignment is total when every variable is bound.
    pub fn is_total(&self) -> bool {
        self.bindings.len() == self.arity
    }

    /// The value bound to `var`, if any.
    pub fn value(&self, var: usize) -> Option<i64> {
        self.bindings
            .binary_search_by_key(&var, |&(v, _)| v)
            .ok()
            .map(|i| self.bindings[i].1)
    }

    /// Bindings sorted by variable index.
    pub fn bindings(&self) -> &[(usize, i64)] {
        &self.bindings
    }

    /// The value row `[a(0), a(1), ...]` of a total assignment.
    pub fn values(&self) -> Result<Vec<i64>> {
        self.require_total()?;
        Ok(self.bindings.iter().map(|&(_, v)| v).collect())
    }

    pub fn require_total(&self) -> Result<()> {
        if self.is_total() {
            Ok(())
        } else {
            Err(Error::PartialAssignment { bound: self.bindings.len(), arity: self.arity })
        }
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (var, value)) in self.bindings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{var}={value}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_are_canonically_sorted() {
        let a = Assignment::new(3, vec![(2, 5), (0, 1)]).unwrap();
        let b = Assignment::new(3, vec![(0, 1), (2, 5)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.bindings(), &[(0, 1), (2, 5)]);
    }

    #[test]
    fn duplicate_variable_rejected() {
        let err = Assignment::new(3, vec![(1, 4), (1, 4)]).unwrap_err();
        assert_eq!(err, Error::DuplicateBinding { var: 1 });
    }

    #[test]
    fn out_of_range_variable_rejected() {
        let err = Assignment::new(2, vec![(2, 0)]).unwrap_err();
        assert_eq!(err, Error::VarOutOfRange { var: 2, arity: 2 });
    }

    #[test]
    fn totality() {
        assert!(Assignment::total(&[4, 9, 2]).is_total());
        assert!(!Assignment::new(3, vec![(0, 4)]).unwrap().is_total());
        assert!(Assignment::empty(0).is_total());
    }

    #[test]
    fn value_lookup() {
        let a = Assignment::new(4, vec![(1, 7), (3, -2)]).unwrap();
        assert_eq!(a.value(1), Some(7));
        assert_eq!(a.value(3), Some(-2));
        assert_eq!(a.value(0), None);
    }

    #[test]
    fn values_requires_total() {
        let a = Assignment::total(&[6, 1, 8]);
        assert_eq!(a.values().unwrap(), vec![6, 1, 8]);
        let p = Assignment::new(2, vec![(0, 6)]).unwrap();
        assert!(matches!(p.values(), Err(Error::PartialAssignment { .. })));
    }
}
