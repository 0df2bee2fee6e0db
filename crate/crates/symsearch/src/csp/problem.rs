//! Finite-domain problem representation.

use crate::assignment::Assignment;
use crate::csp::constraint::Constraint;
use crate::error::{Error, Result};

/// An immutable constraint problem: per-variable domains, the declared value
/// universe (the union of the domains) and a constraint list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    domains: Vec<Vec<i64>>,
    universe: Vec<i64>,
    constraints: Vec<Constraint>,
}

impl Problem {
    /// Builds a problem over `domains.len()` variables.
    ///
    /// Domains are sorted and deduplicated; each must be nonempty. Every
    /// constraint is validated against the arity and the value universe.
    pub fn new(domains: Vec<Vec<i64>>, constraints: Vec<Constraint>) -> Result<Self> {
        let mut domains = domains;
        for (var, domain) in domains.iter_mut().enumerate() {
            domain.sort_unstable();
            domain.dedup();
            if domain.is_empty() {
                return Err(Error::EmptyDomain { var });
            }
        }
        let mut universe: Vec<i64> = domains.iter().flatten().copied().collect();
        universe.sort_unstable();
        universe.dedup();
        let arity = domains.len();
        for constraint in &constraints {
            constraint.validate(arity, &universe)?;
        }
        Ok(Self { domains, universe, constraints })
    }

    pub fn arity(&self) -> usize {
        self.domains.len()
    }

    pub fn domains(&self) -> &[Vec<i64>] {
        &self.domains
    }

    /// The sorted union of all domains.
    pub fn universe(&self) -> &[i64] {
        &self.universe
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// A copy of this problem with extra constraints appended.
    pub fn with_constraints(&self, extra: impl IntoIterator<Item = Constraint>) -> Result<Self> {
        let mut constraints = self.constraints.clone();
        constraints.extend(extra);
        for constraint in &constraints {
            constraint.validate(self.arity(), &self.universe)?;
        }
        Ok(Self {
            domains: self.domains.clone(),
            universe: self.universe.clone(),
            constraints,
        })
    }

    /// Direct (non-search) evaluation: does the total assignment satisfy
    /// every constraint?
    pub fn satisfied_by(&self, a: &Assignment) -> Result<bool> {
        if a.arity() != self.arity() {
            return Err(Error::ArityMismatch { expected: self.arity(), found: a.arity() });
        }
        for constraint in &self.constraints {
            if !constraint.satisfied_by(a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
