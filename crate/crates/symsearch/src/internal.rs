//! Symmetry within solutions: restricting a problem to the assignments fixed
//! by a chosen symmetry (quotient search), a cycle-based feasibility check
//! for such restrictions, and the find-then-restrict pipeline that carries
//! internal symmetries of small-instance solutions to a larger instance.

use crate::assignment::Assignment;
use crate::csp::{Constraint, Problem};
use crate::error::{Error, Result};
use crate::symmetry::{find_internal_symmetries, Symmetry};

/// The problem whose solutions are exactly the solutions of `problem` fixed
/// by `sigma`. The restriction is an ordinary constraint
/// (`X_{pi(x)} = rho(X_x)` for every variable), so the engine and the node
/// accounting stay unchanged.
pub fn restrict_to_internal(problem: &Problem, sigma: &Symmetry) -> Result<Problem> {
    let arity = sigma.var_perm().images().len();
    if arity != problem.arity() {
        return Err(Error::ArityMismatch { expected: problem.arity(), found: arity });
    }
    if sigma.val_perm().universe() != problem.universe() {
        return Err(Error::UniverseMismatch(
            "the symmetry's value universe must equal the problem's".into(),
        ));
    }
    problem.with_constraints([Constraint::FunctionalBind {
        var_perm: sigma.var_perm().clone(),
        val_perm: sigma.val_perm().clone(),
    }])
}

/// Values that fixing `sigma` removes from one variable's domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pruning {
    pub var: usize,
    pub removed: Vec<i64>,
}

/// Outcome of the cycle analysis of a restriction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precheck {
    Feasible { prunings: Vec<Pruning> },
    /// Some variable's domain empties: no assignment is fixed by the
    /// symmetry, so the restricted problem is unsatisfiable.
    Infeasible { var: usize },
}

/// Cycle analysis of `X_{pi(x)} = rho(X_x)`: around a variable cycle of
/// length L the value must return to itself, so the cycle's anchor (its
/// smallest variable) can only take values with `rho^L(v) = v`. Reports the
/// values this removes per anchor, or infeasibility when an anchor's domain
/// empties.
pub fn consistency_precheck(sigma: &Symmetry, domains: &[Vec<i64>]) -> Result<Precheck> {
    let arity = sigma.var_perm().images().len();
    if arity != domains.len() {
        return Err(Error::ArityMismatch { expected: domains.len(), found: arity });
    }
    let rho = sigma.val_perm();
    let mut prunings = Vec::new();
    for cycle in sigma.var_perm().cycles() {
        let anchor = *cycle.iter().min().expect("cycles are non-empty");
        let removed: Vec<i64> = domains[anchor]
            .iter()
            .copied()
            .filter(|&v| rho.iterate(v, cycle.len()) != Some(v))
            .collect();
        if removed.len() == domains[anchor].len() {
            return Ok(Precheck::Infeasible { var: anchor });
        }
        if !removed.is_empty() {
            prunings.push(Pruning { var: anchor, removed });
        }
    }
    prunings.sort_by_key(|p| p.var);
    Ok(Precheck::Feasible { prunings })
}

/// One restricted variant produced by the pipeline: a non-identity internal
/// symmetry common to all seeds, its lift to the target instance, and the
/// target problem restricted to assignments the lift fixes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedVariant {
    pub found: Symmetry,
    pub lifted: Symmetry,
    pub problem: Problem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PipelineOutcome {
    /// The seeds share no non-identity internal symmetry among the
    /// candidates; nothing to restrict by. Distinct from an error: the
    /// pipeline ran and has a definite empty answer.
    NoCommonInternalSymmetry,
    Restricted(Vec<RestrictedVariant>),
}

/// The two-step procedure: find the candidate symmetries internal to every
/// seed solution (of a smaller instance), lift each survivor to the target
/// instance via the family's template rule, and restrict the target problem
/// by each lift.
pub fn pipeline_find_then_restrict(
    target: &Problem,
    seeds: &[Assignment],
    candidates: &[Symmetry],
    lift: impl Fn(&Symmetry) -> Result<Symmetry>,
) -> Result<PipelineOutcome> {
    let Some((first, rest)) = seeds.split_first() else {
        return Err(Error::NoSeeds);
    };
    let mut common = find_internal_symmetries(first, candidates)?;
    for seed in rest {
        let here = find_internal_symmetries(seed, candidates)?;
        common.retain(|sigma| here.contains(sigma));
    }
    common.retain(|sigma| !sigma.is_identity());
    if common.is_empty() {
        return Ok(PipelineOutcome::NoCommonInternalSymmetry);
    }
    let mut variants = Vec::with_capacity(common.len());
    for found in common {
        let lifted = lift(&found)?;
        let problem = restrict_to_internal(target, &lifted)?;
        variants.push(RestrictedVariant { found, lifted, problem });
    }
    Ok(PipelineOutcome::Restricted(variants))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::csp::{enumerate, SearchConfig};
    use crate::problems::{
        build_magic, build_vdw, magic_symmetries, vdw, vdw_symmetries, MagicSpec, VdwSpec,
    };

    fn inv_rot180() -> Symmetry {
        let catalog = magic_symmetries(&MagicSpec::new(3).unwrap());
        catalog
            .get("inv")
            .unwrap()
            .compose(catalog.get("rot180").unwrap())
            .unwrap()
    }

    #[test]
    fn restriction_forces_the_centre_of_an_order_three_square() {
        let spec = MagicSpec::new(3).unwrap();
        let problem = build_magic(&spec);
        let sigma = inv_rot180();
        match consistency_precheck(&sigma, problem.domains()).unwrap() {
            Precheck::Feasible { prunings } => {
                assert_eq!(
                    prunings,
                    vec![Pruning { var: 4, removed: vec![1, 2, 3, 4, 6, 7, 8, 9] }]
                );
            }
            Precheck::Infeasible { .. } => panic!("restriction is feasible"),
        }
        let restricted = restrict_to_internal(&problem, &sigma).unwrap();
        let square_a = Assignment::total(&[4, 9, 2, 3, 5, 7, 8, 1, 6]);
        assert!(restricted.satisfied_by(&square_a).unwrap());
    }

    #[test]
    fn identity_restriction_prunes_nothing() {
        let spec = MagicSpec::new(3).unwrap();
        let problem = build_magic(&spec);
        let id = magic_symmetries(&spec).get("id").unwrap().clone();
        assert_eq!(
            consistency_precheck(&id, problem.domains()).unwrap(),
            Precheck::Feasible { prunings: vec![] }
        );
        let restricted = restrict_to_internal(&problem, &id).unwrap();
        assert_eq!(restricted.constraints().len(), problem.constraints().len() + 1);
    }

    #[test]
    fn incompatible_symmetries_are_rejected() {
        let problem = build_vdw(&VdwSpec::new(4, 2, 3).unwrap());
        let wrong_arity = Symmetry::from_images(vec![0, 1], vec![0, 1], vec![0, 1]).unwrap();
        assert!(matches!(
            restrict_to_internal(&problem, &wrong_arity),
            Err(Error::ArityMismatch { .. })
        ));
        assert!(consistency_precheck(&wrong_arity, problem.domains()).is_err());
        let wrong_universe =
            Symmetry::from_images((0..4).collect(), vec![0, 1, 2], vec![0, 1, 2]).unwrap();
        assert!(matches!(
            restrict_to_internal(&problem, &wrong_universe),
            Err(Error::UniverseMismatch(_))
        ));
    }

    #[test]
    fn odd_interval_with_a_fixed_point_free_colour_swap_is_infeasible() {
        let spec = VdwSpec::new(7, 2, 3).unwrap();
        let problem = build_vdw(&spec);
        let sigma = vdw_symmetries(&spec).get("reflect+colorswap:1-0").unwrap().clone();
        assert_eq!(
            consistency_precheck(&sigma, problem.domains()).unwrap(),
            Precheck::Infeasible { var: 3 }
        );
        let restricted = restrict_to_internal(&problem, &sigma).unwrap();
        let result = enumerate(&restricted, &SearchConfig::default()).unwrap();
        assert!(result.solutions.is_empty());
    }

    #[test]
    fn restricted_vdw_admits_the_blockwise_colouring() {
        let spec = VdwSpec::new(8, 2, 3).unwrap();
        let sigma = vdw_symmetries(&spec).get("reflect+colorswap:1-0").unwrap().clone();
        let restricted = restrict_to_internal(&build_vdw(&spec), &sigma).unwrap();
        let blocks = Assignment::total(&[0, 0, 1, 1, 0, 0, 1, 1]);
        assert!(restricted.satisfied_by(&blocks).unwrap());
    }

    #[test]
    fn pipeline_requires_seeds() {
        let spec = VdwSpec::new(8, 2, 3).unwrap();
        let target = build_vdw(&spec);
        let outcome = pipeline_find_then_restrict(&target, &[], &[], |s| Ok(s.clone()));
        assert_eq!(outcome, Err(Error::NoSeeds));
    }

    #[test]
    fn pipeline_reports_an_empty_intersection_distinctly() {
        let spec = VdwSpec::new(4, 2, 3).unwrap();
        let catalog = vdw_symmetries(&spec);
        let candidates: Vec<Symmetry> = catalog.iter().map(|(_, s)| s.clone()).collect();
        let seed = Assignment::total(&[0, 0, 1, 0]);
        let outcome = pipeline_find_then_restrict(&build_vdw(&spec), &[seed], &candidates, |s| {
            Ok(s.clone())
        })
        .unwrap();
        assert_eq!(outcome, PipelineOutcome::NoCommonInternalSymmetry);
    }

    #[test]
    fn pipeline_lifts_a_seed_symmetry_to_the_target_instance() {
        let small = VdwSpec::new(8, 2, 3).unwrap();
        let large = VdwSpec::new(10, 2, 3).unwrap();
        let catalog = vdw_symmetries(&small);
        let candidates: Vec<Symmetry> = catalog.iter().map(|(_, s)| s.clone()).collect();
        let seed = Assignment::total(&[0, 0, 1, 1, 0, 0, 1, 1]);
        let target = build_vdw(&large);
        let outcome =
            pipeline_find_then_restrict(&target, &[seed], &candidates, |sigma| {
                vdw::lift_symmetry(sigma, &small, &large)
            })
            .unwrap();
        let PipelineOutcome::Restricted(variants) = outcome else {
            panic!("the blockwise colouring has internal symmetries");
        };
        assert_eq!(variants.len(), 1);
        assert_eq!(
            variants[0].found,
            *catalog.get("reflect+colorswap:1-0").unwrap()
        );
        assert_eq!(
            variants[0].lifted,
            *vdw_symmetries(&large).get("reflect+colorswap:1-0").unwrap()
        );
        assert_eq!(variants[0].problem.arity(), 10);
    }
}
