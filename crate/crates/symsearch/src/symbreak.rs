//! Symmetry breaking between solutions: generating constraint sets that pick
//! orbit representatives, transforming such sets by a symmetry to obtain
//! alternative valid sets, and validating either kind by enumeration.

use std::collections::BTreeMap;

use crate::assignment::Assignment;
use crate::csp::{
    arithmetic_progressions, enumerate, Constraint, Problem, SearchConfig, SearchOutcome,
};
use crate::error::{Error, Result};
use crate::symmetry::{is_closed_group, orbit, Symmetry, ValuePerm, VarPerm};

/// One lex-leader constraint per non-identity group element: a total
/// assignment satisfies the returned set iff it is lexicographically minimal
/// (reading variables in `var_order`) within its orbit under the group.
///
/// The group must be closed; callers close generator sets with
/// [`crate::symmetry::close_group`] first.
pub fn lex_leader(group: &[Symmetry], var_order: &[usize]) -> Result<Vec<Constraint>> {
    if !is_closed_group(group) {
        return Err(Error::NotAGroup(
            "lex-leader needs a closed group containing the identity".into(),
        ));
    }
    let arity = group[0].var_perm().images().len();
    if var_order.len() != arity || VarPerm::new(var_order.to_vec()).is_err() {
        return Err(Error::MalformedConstraint(format!(
            "variable order must be a permutation of 0..{arity}"
        )));
    }
    Ok(group
        .iter()
        .filter(|sigma| !sigma.is_identity())
        .map(|sigma| Constraint::LexLeqUnder {
            vars: var_order.to_vec(),
            var_perm: sigma.var_perm().clone(),
            val_perm: sigma.val_perm().clone(),
        })
        .collect())
}

/// The partial-breaking constraint for square grids: the top-left cell is
/// smaller than the bottom-right cell. Breaks (only) the anti-diagonal
/// reflection, which exchanges those two corners.
pub fn corner_constraint(problem: &Problem) -> Result<Constraint> {
    let arity = problem.arity();
    let n = (1..).find(|n| n * n >= arity).expect("arity is finite");
    if n * n != arity {
        return Err(Error::InvalidSpec(format!(
            "corner constraint needs a square grid, got {arity} variables"
        )));
    }
    if n < 2 {
        return Err(Error::InvalidSpec(
            "corner constraint needs a grid of order at least 2".into(),
        ));
    }
    Ok(Constraint::BinaryLess { lhs: 0, rhs: arity - 1 })
}

fn conjugate(sigma: &Symmetry, var_perm: &VarPerm, val_perm: &ValuePerm) -> Result<Symmetry> {
    let inner = Symmetry::new(var_perm.clone(), val_perm.clone());
    sigma.compose(&inner)?.compose(&sigma.inverse())
}

/// Transforms a constraint by a symmetry. The image constraint is the
/// semantic pushforward: a total assignment `a` satisfies the result iff
/// `sigma.inverse().apply(a)` satisfies `c`.
///
/// The image must stay inside the constraint vocabulary, which restricts the
/// value component for some variants: sums and graceful differences survive
/// the identity and reflections `v -> S-v`, order constraints survive
/// monotone maps, and progression structure requires the variable component
/// to permute the progression family. Anything else is reported as not
/// transformable rather than approximated.
pub fn transform_constraint(c: &Constraint, sigma: &Symmetry) -> Result<Constraint> {
    let pi = sigma.var_perm();
    let rho = sigma.val_perm();
    let map_vars = |vars: &[usize]| vars.iter().map(|&v| pi.image(v)).collect::<Vec<_>>();
    match c {
        Constraint::AllDifferent { vars } => {
            Ok(Constraint::AllDifferent { vars: map_vars(vars) })
        }
        Constraint::LinearSumEq { vars, target } => {
            let target = if rho.is_identity() {
                *target
            } else if let Some(offset) = rho.reflection_offset() {
                vars.len() as i64 * offset - target
            } else {
                return Err(Error::NotTransformable(
                    "a sum is only preserved by the identity or a reflection of the values"
                        .into(),
                ));
            };
            Ok(Constraint::LinearSumEq { vars: map_vars(vars), target })
        }
        Constraint::BinaryLess { lhs, rhs } => {
            if rho.is_increasing() {
                Ok(Constraint::BinaryLess { lhs: pi.image(*lhs), rhs: pi.image(*rhs) })
            } else if rho.is_decreasing() {
                Ok(Constraint::BinaryLess { lhs: pi.image(*rhs), rhs: pi.image(*lhs) })
            } else {
                Err(Error::NotTransformable(
                    "an order constraint is only preserved by monotone value maps".into(),
                ))
            }
        }
        Constraint::LexLeqUnder { vars, var_perm, val_perm } => {
            if rho.is_increasing() {
                let inner = conjugate(sigma, var_perm, val_perm)?;
                Ok(Constraint::LexLeqUnder {
                    vars: map_vars(vars),
                    var_perm: inner.var_perm().clone(),
                    val_perm: inner.val_perm().clone(),
                })
            } else if rho.is_decreasing() && val_perm.is_identity() {
                let inner = conjugate(sigma, &var_perm.inverse(), val_perm)?;
                let shifted: Vec<usize> =
                    vars.iter().map(|&v| pi.image(var_perm.image(v))).collect();
                Ok(Constraint::LexLeqUnder {
                    vars: shifted,
                    var_perm: inner.var_perm().clone(),
                    val_perm: inner.val_perm().clone(),
                })
            } else {
                Err(Error::NotTransformable(
                    "a lex constraint is only preserved by monotone value maps".into(),
                ))
            }
        }
        Constraint::NoMonoAP { length } => {
            let arity = pi.images().len();
            let family: std::collections::BTreeSet<Vec<usize>> =
                arithmetic_progressions(arity, *length).into_iter().collect();
            let preserved = family.iter().all(|ap| {
                let mut image = map_vars(ap);
                image.sort_unstable();
                family.contains(&image)
            });
            if preserved {
                Ok(Constraint::NoMonoAP { length: *length })
            } else {
                Err(Error::NotTransformable(
                    "the variable permutation does not preserve the progression family".into(),
                ))
            }
        }
        Constraint::GracefulEdges { edges } => {
            if rho.is_identity() || rho.reflection_offset().is_some() {
                Ok(Constraint::GracefulEdges {
                    edges: edges.iter().map(|&(u, v)| (pi.image(u), pi.image(v))).collect(),
                })
            } else {
                Err(Error::NotTransformable(
                    "edge differences are only preserved by the identity or a reflection of \
                     the values"
                        .into(),
                ))
            }
        }
        Constraint::FunctionalBind { var_perm, val_perm } => {
            let inner = conjugate(sigma, var_perm, val_perm)?;
            Ok(Constraint::FunctionalBind {
                var_perm: inner.var_perm().clone(),
                val_perm: inner.val_perm().clone(),
            })
        }
    }
}

/// Transforms a symmetry-breaking set elementwise. When `group` is given,
/// `sigma` must be one of its members; transforming a set that breaks the
/// group by a member yields another set that breaks the group (a different
/// orbit representative survives).
pub fn transform_sbc_set(
    constraints: &[Constraint],
    sigma: &Symmetry,
    group: Option<&[Symmetry]>,
) -> Result<Vec<Constraint>> {
    if let Some(group) = group {
        if !group.contains(sigma) {
            return Err(Error::NotInGroup);
        }
    }
    constraints.iter().map(|c| transform_constraint(c, sigma)).collect()
}

/// What enumeration says about a symmetry-breaking set on a concrete
/// problem: all solutions, the survivors under the set, how many orbits the
/// solutions form, and whether the set is sound (keeps at least one per
/// orbit) and complete (keeps at most one per orbit).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SbcReport {
    pub solutions: Vec<Assignment>,
    pub survivors: Vec<Assignment>,
    pub orbit_count: usize,
    pub at_least_one_per_orbit: bool,
    pub at_most_one_per_orbit: bool,
    /// True when either enumeration stopped at a limit; counts and booleans
    /// then describe only the explored part.
    pub partial: bool,
}

/// Enumerates a problem with and without a symmetry-breaking set and checks
/// the per-orbit survivor counts under a closed group.
pub fn validate_sbc(
    problem: &Problem,
    constraints: &[Constraint],
    group: &[Symmetry],
    config: &SearchConfig,
) -> Result<SbcReport> {
    if !is_closed_group(group) {
        return Err(Error::NotAGroup(
            "orbit validation needs a closed group containing the identity".into(),
        ));
    }
    let full = enumerate(problem, config)?;
    let restricted = enumerate(&problem.with_constraints(constraints.to_vec())?, config)?;
    let partial =
        full.outcome != SearchOutcome::Complete || restricted.outcome != SearchOutcome::Complete;

    let mut survivors_per_orbit: BTreeMap<Assignment, usize> = BTreeMap::new();
    for solution in &full.solutions {
        let representative = orbit(solution, group)?
            .into_iter()
            .next()
            .expect("orbits are non-empty");
        survivors_per_orbit.entry(representative).or_insert(0);
    }
    for survivor in &restricted.solutions {
        let representative = orbit(survivor, group)?
            .into_iter()
            .next()
            .expect("orbits are non-empty");
        *survivors_per_orbit.entry(representative).or_insert(0) += 1;
    }
    Ok(SbcReport {
        orbit_count: survivors_per_orbit.len(),
        at_least_one_per_orbit: survivors_per_orbit.values().all(|&n| n >= 1),
        at_most_one_per_orbit: survivors_per_orbit.values().all(|&n| n <= 1),
        solutions: full.solutions,
        survivors: restricted.solutions,
        partial,
    })
}
