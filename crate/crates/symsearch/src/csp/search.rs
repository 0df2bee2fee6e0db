//! Deterministic chronological backtracking over static domains.
//!
//! The variable order is fixed up front (input order, or ascending domain
//! size with lowest-index tie-break) and values are tried in ascending
//! order, so two runs over the same inputs visit the same tree: identical
//! solution sequences and identical node counts.
//!
//! A node is a consistent partial assignment the search visits, the empty
//! root included. Tentative values refuted by a constraint check are pruned
//! edges, not nodes, so adding constraints can only shrink the count.

use std::time::{Duration, Instant};

use crate::assignment::Assignment;
use crate::csp::constraint::{arithmetic_progressions, check_no_mono_ap, CheckOutcome, Constraint};
use crate::csp::problem::Problem;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum VarOrder {
    InputOrder,
    #[default]
    MinDomain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ValOrder {
    #[default]
    Ascending,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SearchConfig {
    pub var_order: VarOrder,
    pub val_order: ValOrder,
    pub solution_limit: Option<usize>,
    pub node_limit: Option<u64>,
}

impl SearchConfig {
    fn validate(&self) -> Result<()> {
        if self.solution_limit == Some(0) {
            return Err(Error::InvalidConfig("solution limit must be positive".into()));
        }
        if self.node_limit == Some(0) {
            return Err(Error::InvalidConfig("node limit must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchStats {
    /// Consistent partial assignments visited, the root included.
    pub nodes: u64,
    pub solutions: u64,
    pub elapsed: Duration,
}

/// How a search run ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchOutcome {
    /// The tree was exhausted; the solution list is complete.
    Complete,
    /// Truncated after reaching the solution limit.
    SolutionLimitReached,
    /// Truncated after reaching the node limit; the solution list may be
    /// incomplete.
    NodeLimitReached,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub solutions: Vec<Assignment>,
    pub stats: SearchStats,
    pub outcome: SearchOutcome,
}

impl SearchResult {
    pub fn is_complete(&self) -> bool {
        self.outcome == SearchOutcome::Complete
    }

    pub fn first(&self) -> Option<&Assignment> {
        self.solutions.first()
    }
}

/// Emits every solution of `problem` in deterministic DFS order, subject to
/// the configured limits.
pub fn enumerate(problem: &Problem, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let start = Instant::now();
    let mut searcher = Searcher::new(problem, cfg);
    searcher.dfs(0);
    let stats = SearchStats {
        nodes: searcher.nodes,
        solutions: searcher.solutions.len() as u64,
        elapsed: start.elapsed(),
    };
    Ok(SearchResult { solutions: searcher.solutions, stats, outcome: searcher.outcome })
}

/// The first solution in `enumerate` order, if any.
pub fn solve(problem: &Problem, cfg: &SearchConfig) -> Result<SearchResult> {
    cfg.validate()?;
    let cfg = SearchConfig { solution_limit: Some(1), ..cfg.clone() };
    enumerate(problem, &cfg)
}

/// A constraint as the inner loop sees it. `NoMonoAP` gets its progressions
/// enumerated once per run instead of once per check.
enum Compiled<'a> {
    Plain(&'a Constraint),
    MonoAps(Vec<Vec<usize>>),
}

impl Compiled<'_> {
    fn check(&self, slots: &[Option<i64>], domains: &[Vec<i64>]) -> CheckOutcome {
        match self {
            Self::Plain(c) => c.check_slots(slots, domains),
            Self::MonoAps(aps) => check_no_mono_ap(aps, slots),
        }
    }
}

struct Searcher<'a> {
    domains: &'a [Vec<i64>],
    compiled: Vec<Compiled<'a>>,
    /// For each variable, the constraints whose scope contains it.
    watching: Vec<Vec<usize>>,
    order: Vec<usize>,
    slots: Vec<Option<i64>>,
    nodes: u64,
    solutions: Vec<Assignment>,
    solution_limit: Option<usize>,
    node_limit: Option<u64>,
    outcome: SearchOutcome,
    stopped: bool,
}

impl<'a> Searcher<'a> {
    fn new(problem: &'a Problem, cfg: &SearchConfig) -> Self {
        let arity = problem.arity();
        let compiled = problem
            .constraints()
            .iter()
            .map(|c| match c {
                Constraint::NoMonoAP { length } => {
                    Compiled::MonoAps(arithmetic_progressions(arity, *length))
                }
                other => Compiled::Plain(other),
            })
            .collect();
        let mut watching = vec![Vec::new(); arity];
        for (idx, constraint) in problem.constraints().iter().enumerate() {
            for var in constraint.scope(arity) {
                watching[var].push(idx);
            }
        }
        let mut order: Vec<usize> = (0..arity).collect();
        if cfg.var_order == VarOrder::MinDomain {
            order.sort_by_key(|&v| (problem.domains()[v].len(), v));
        }
        let ValOrder::Ascending = cfg.val_order;
        Self {
            domains: problem.domains(),
            compiled,
            watching,
            order,
            slots: vec![None; arity],
            nodes: 0,
            solutions: Vec::new(),
            solution_limit: cfg.solution_limit,
            node_limit: cfg.node_limit,
            outcome: SearchOutcome::Complete,
            stopped: false,
        }
    }

    fn dfs(&mut self, depth: usize) {
        if let Some(limit) = self.node_limit {
            if self.nodes >= limit {
                self.outcome = SearchOutcome::NodeLimitReached;
                self.stopped = true;
                return;
            }
        }
        self.nodes += 1;
        if depth == self.order.len() {
            let values: Vec<i64> = self.slots.iter().map(|s| s.expect("total")).collect();
            self.solutions.push(Assignment::total(&values));
            if Some(self.solutions.len()) == self.solution_limit {
                self.outcome = SearchOutcome::SolutionLimitReached;
                self.stopped = true;
            }
            return;
        }
        let var = self.order[depth];
        for i in 0..self.domains[var].len() {
            let value = self.domains[var][i];
            self.slots[var] = Some(value);
            if self.consistent(var) {
                self.dfs(depth + 1);
            }
            self.slots[var] = None;
            if self.stopped {
                return;
            }
        }
    }

    /// Re-checks only the constraints watching the just-assigned variable;
    /// the others kept their previous non-Violated status.
    fn consistent(&self, var: usize) -> bool {
        self.watching[var]
            .iter()
            .all(|&idx| self.compiled[idx].check(&self.slots, self.domains) != CheckOutcome::Violated)
    }
}
