//! The constraint vocabulary and its consistency checks.
//!
//! [`Constraint::check`] is the engine-facing check over a partial
//! assignment: it must report `Violated` only when no extension can satisfy
//! the constraint, and is exact on total assignments.
//! [`Constraint::satisfied_by`] is a separate direct evaluation over total
//! assignments, used to double-check emitted solutions without going through
//! the search-facing code path.

use crate::assignment::Assignment;
use crate::error::{Error, Result};
use crate::symmetry::{ValuePerm, VarPerm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Satisfied,
    Violated,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Constraint {
    /// All listed variables take pairwise distinct values.
    AllDifferent { vars: Vec<usize> },
    /// The listed variables sum to `target`.
    LinearSumEq { vars: Vec<usize>, target: i64 },
    /// `X_lhs < X_rhs`.
    BinaryLess { lhs: usize, rhs: usize },
    /// `(X_v)_{v in vars}` is lexicographically `<=` `(rho(X_{pi(v)}))_{v in vars}`.
    LexLeqUnder { vars: Vec<usize>, var_perm: VarPerm, val_perm: ValuePerm },
    /// No `length` variable indices in arithmetic progression all take the
    /// same value. Spans all variables of the problem.
    NoMonoAP { length: usize },
    /// The absolute differences `|X_u - X_v|` over the edges are pairwise
    /// distinct.
    GracefulEdges { edges: Vec<(usize, usize)> },
    /// For every variable `x`: `X_{pi(x)} = rho(X_x)`.
    FunctionalBind { var_perm: VarPerm, val_perm: ValuePerm },
}

/// All index sets `{s, s+d, ..., s+(length-1)d}` with `d >= 1` that fit in
/// `0..arity`, ordered by `(s, d)`.
pub fn arithmetic_progressions(arity: usize, length: usize) -> Vec<Vec<usize>> {
    let mut aps = Vec::new();
    if length < 2 {
        return aps;
    }
    for start in 0..arity {
        for diff in 1.. {
            if start + (length - 1) * diff >= arity {
                break;
            }
            aps.push((0..length).map(|i| start + i * diff).collect());
        }
    }
    aps
}

impl Constraint {
    /// Variant-specific well-formedness against a problem's arity and value
    /// universe.
    pub fn validate(&self, arity: usize, universe: &[i64]) -> Result<()> {
        let check_var = |var: usize| {
            if var < arity {
                Ok(())
            } else {
                Err(Error::VarOutOfRange { var, arity })
            }
        };
        let check_no_dups = |vars: &[usize]| {
            let mut sorted = vars.to_vec();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                Err(Error::MalformedConstraint("repeated variable in scope".into()))
            } else {
                Ok(())
            }
        };
        let check_perms = |var_perm: &VarPerm, val_perm: &ValuePerm| {
            if var_perm.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: var_perm.arity() });
            }
            if val_perm.universe() != universe {
                return Err(Error::UniverseMismatch(
                    "constraint value permutation acts on a different universe".into(),
                ));
            }
            Ok(())
        };
        match self {
            Self::AllDifferent { vars } | Self::LinearSumEq { vars, .. } => {
                vars.iter().try_for_each(|&v| check_var(v))?;
                check_no_dups(vars)
            }
            Self::BinaryLess { lhs, rhs } => {
                check_var(*lhs)?;
                check_var(*rhs)
            }
            Self::LexLeqUnder { vars, var_perm, val_perm } => {
                vars.iter().try_for_each(|&v| check_var(v))?;
                check_no_dups(vars)?;
                check_perms(var_perm, val_perm)
            }
            Self::NoMonoAP { length } => {
                if *length < 2 {
                    return Err(Error::MalformedConstraint(
                        "progression length must be at least 2".into(),
                    ));
                }
                Ok(())
            }
            Self::GracefulEdges { edges } => {
                let mut normalised = Vec::with_capacity(edges.len());
                for &(u, v) in edges {
                    check_var(u)?;
                    check_var(v)?;
                    if u == v {
                        return Err(Error::MalformedConstraint(format!(
                            "edge ({u}, {v}) is a self-loop"
                        )));
                    }
                    normalised.push((u.min(v), u.max(v)));
                }
                normalised.sort_unstable();
                if normalised.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::MalformedConstraint("duplicate edge".into()));
                }
                Ok(())
            }
            Self::FunctionalBind { var_perm, val_perm } => check_perms(var_perm, val_perm),
        }
    }

    /// The variables whose assignment can change this constraint's status.
    pub fn scope(&self, arity: usize) -> Vec<usize> {
        let mut scope: Vec<usize> = match self {
            Self::AllDifferent { vars } | Self::LinearSumEq { vars, .. } => vars.clone(),
            Self::BinaryLess { lhs, rhs } => vec![*lhs, *rhs],
            Self::LexLeqUnder { vars, var_perm, .. } => vars
                .iter()
                .flat_map(|&v| [v, var_perm.image(v)])
                .collect(),
            Self::NoMonoAP { .. } | Self::FunctionalBind { .. } => (0..arity).collect(),
            Self::GracefulEdges { edges } => {
                edges.iter().flat_map(|&(u, v)| [u, v]).collect()
            }
        };
        scope.sort_unstable();
        scope.dedup();
        scope
    }

    /// Consistency check against a partial assignment, with the (static)
    /// domains available for bounds reasoning.
    pub fn check(&self, a: &Assignment, domains: &[Vec<i64>]) -> CheckOutcome {
        let mut slots = vec![None; domains.len()];
        for &(var, value) in a.bindings() {
            slots[var] = Some(value);
        }
        self.check_slots(&slots, domains)
    }

    /// [`Constraint::check`] over the engine's slot representation.
    pub(crate) fn check_slots(&self, slots: &[Option<i64>], domains: &[Vec<i64>]) -> CheckOutcome {
        match self {
            Self::AllDifferent { vars } => {
                let mut seen = Vec::with_capacity(vars.len());
                let mut all_assigned = true;
                for &v in vars {
                    match slots[v] {
                        Some(value) => {
                            if seen.contains(&value) {
                                return CheckOutcome::Violated;
                            }
                            seen.push(value);
                        }
                        None => all_assigned = false,
                    }
                }
                if all_assigned {
                    CheckOutcome::Satisfied
                } else {
                    CheckOutcome::Unknown
                }
            }
            Self::LinearSumEq { vars, target } => {
                let (mut lo, mut hi) = (0i64, 0i64);
                let mut all_assigned = true;
                for &v in vars {
                    match slots[v] {
                        Some(value) => {
                            lo += value;
                            hi += value;
                        }
                        None => {
                            all_assigned = false;
                            lo += domains[v].first().copied().unwrap_or(0);
                            hi += domains[v].last().copied().unwrap_or(0);
                        }
                    }
                }
                if lo > *target || hi < *target {
                    CheckOutcome::Violated
                } else if all_assigned {
                    CheckOutcome::Satisfied
                } else {
                    CheckOutcome::Unknown
                }
            }
            Self::BinaryLess { lhs, rhs } => {
                let lhs_range = bounds(*lhs, slots, domains);
                let rhs_range = bounds(*rhs, slots, domains);
                if lhs_range.1 < rhs_range.0 {
                    CheckOutcome::Satisfied
                } else if lhs_range.0 >= rhs_range.1 {
                    CheckOutcome::Violated
                } else {
                    CheckOutcome::Unknown
                }
            }
            Self::LexLeqUnder { vars, var_perm, val_perm } => {
                for &v in vars {
                    let left = slots[v];
                    let right = slots[var_perm.image(v)].and_then(|w| val_perm.image(w));
                    match (left, right) {
                        (Some(l), Some(r)) if l < r => return CheckOutcome::Satisfied,
                        (Some(l), Some(r)) if l > r => return CheckOutcome::Violated,
                        (Some(_), Some(_)) => {}
                        _ => return CheckOutcome::Unknown,
                    }
                }
                CheckOutcome::Satisfied
            }
            Self::NoMonoAP { length } => {
                let aps = arithmetic_progressions(slots.len(), *length);
                check_no_mono_ap(&aps, slots)
            }
            Self::GracefulEdges { edges } => {
                let mut labels = Vec::with_capacity(edges.len());
                let mut all_assigned = true;
                for &(u, v) in edges {
                    match (slots[u], slots[v]) {
                        (Some(a), Some(b)) => {
                            let label = (a - b).abs();
                            if labels.contains(&label) {
                                return CheckOutcome::Violated;
                            }
                            labels.push(label);
                        }
                        _ => all_assigned = false,
                    }
                }
                if all_assigned {
                    CheckOutcome::Satisfied
                } else {
                    CheckOutcome::Unknown
                }
            }
            Self::FunctionalBind { var_perm, val_perm } => {
                let mut all_assigned = true;
                for x in 0..slots.len() {
                    match slots[x] {
                        Some(value) => {
                            if let Some(image) = slots[var_perm.image(x)] {
                                if val_perm.image(value) != Some(image) {
                                    return CheckOutcome::Violated;
                                }
                            } else {
                                all_assigned = false;
                            }
                        }
                        None => all_assigned = false,
                    }
                }
                if all_assigned {
                    CheckOutcome::Satisfied
                } else {
                    CheckOutcome::Unknown
                }
            }
        }
    }

    /// Direct evaluation over a total assignment, independent of the
    /// search-facing `check`.
    pub fn satisfied_by(&self, a: &Assignment) -> Result<bool> {
        a.require_total()?;
        let value = |var: usize| a.value(var).expect("total assignment");
        Ok(match self {
            Self::AllDifferent { vars } => {
                let mut values: Vec<i64> = vars.iter().map(|&v| value(v)).collect();
                values.sort_unstable();
                values.windows(2).all(|w| w[0] != w[1])
            }
            Self::LinearSumEq { vars, target } => {
                vars.iter().map(|&v| value(v)).sum::<i64>() == *target
            }
            Self::BinaryLess { lhs, rhs } => value(*lhs) < value(*rhs),
            Self::LexLeqUnder { vars, var_perm, val_perm } => {
                let left: Vec<i64> = vars.iter().map(|&v| value(v)).collect();
                let right = vars
                    .iter()
                    .map(|&v| {
                        let w = value(var_perm.image(v));
                        val_perm.image(w).ok_or(Error::ValueOutsideUniverse {
                            var: var_perm.image(v),
                            value: w,
                        })
                    })
                    .collect::<Result<Vec<i64>>>()?;
                left <= right
            }
            Self::NoMonoAP { length } => {
                arithmetic_progressions(a.arity(), *length)
                    .iter()
                    .all(|ap| !ap.iter().all(|&i| value(i) == value(ap[0])))
            }
            Self::GracefulEdges { edges } => {
                let mut labels: Vec<i64> =
                    edges.iter().map(|&(u, v)| (value(u) - value(v)).abs()).collect();
                labels.sort_unstable();
                labels.windows(2).all(|w| w[0] != w[1])
            }
            Self::FunctionalBind { var_perm, val_perm } => {
                for x in 0..a.arity() {
                    let image = val_perm.image(value(x)).ok_or(Error::ValueOutsideUniverse {
                        var: x,
                        value: value(x),
                    })?;
                    if value(var_perm.image(x)) != image {
                        return Ok(false);
                    }
                }
                true
            }
        })
    }
}

/// The inclusive value range a variable can still take: its assigned value,
/// or the extremes of its (static) domain.
fn bounds(var: usize, slots: &[Option<i64>], domains: &[Vec<i64>]) -> (i64, i64) {
    match slots[var] {
        Some(v) => (v, v),
        None => (
            domains[var].first().copied().unwrap_or(0),
            domains[var].last().copied().unwrap_or(0),
        ),
    }
}

/// Shared NoMonoAP verdict over precomputed progressions.
pub(crate) fn check_no_mono_ap(aps: &[Vec<usize>], slots: &[Option<i64>]) -> CheckOutcome {
    let mut all_decided = true;
    for ap in aps {
        let first = slots[ap[0]];
        let mut assigned = 0;
        let mut mono_so_far = true;
        for &i in ap {
            if let Some(v) = slots[i] {
                assigned += 1;
                if Some(v) != first {
                    mono_so_far = false;
                }
            }
        }
        if assigned == ap.len() && mono_so_far {
            return CheckOutcome::Violated;
        }
        // An AP with two distinct assigned values can never become
        // monochrome; anything else is still open.
        let decided_non_mono = {
            let mut values = ap.iter().filter_map(|&i| slots[i]);
            match values.next() {
                Some(v0) => values.any(|v| v != v0),
                None => false,
            }
        };
        if !decided_non_mono && assigned != ap.len() {
            all_decided = false;
        }
    }
    if all_decided {
        CheckOutcome::Satisfied
    } else {
        CheckOutcome::Unknown
    }
}
