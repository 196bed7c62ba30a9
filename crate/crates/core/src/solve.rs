//! Variant routing and the verified solve entry point.

use crate::all_neighbour::{
    general_undirected_alln_fptas, uniform_directed_alln_ptas, uniform_undirected_alln,
};
use crate::error::{Error, Result};
use crate::exact::{exact_1n_with_limit, exact_alln_with_limit, DEFAULT_ORACLE_LIMIT};
use crate::graph::{Instance, VertexSet};
use crate::numeric::Epsilon;
use crate::one_neighbour::{greedy_1_neighbour, uniform_directed_1n_ptas, uniform_undirected_1n};
use crate::solution::{Algorithm, Constraint, Solution};

pub const DEFAULT_EPSILON: f64 = 0.25;

/// Where `auto` sends an instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    Solver(Algorithm),
    /// No approximation algorithm; exhaustive search if small enough,
    /// otherwise the hardness notice.
    ExactOnly {
        algorithm: Algorithm,
        notice: &'static str,
    },
}

pub const DIRECTED_ONE_HARDNESS: &str =
    "general directed 1-neighbour knapsack is 1/Ω(log^{1−ε} n)-hard to approximate";
pub const DIRECTED_ALL_HARDNESS: &str =
    "general directed all-neighbour knapsack is hard to approximate within 2^{log^δ n} for some δ > 0";

/// `auto` routing by constraint, direction and uniformity.
pub fn route(constraint: Constraint, directed: bool, uniform: bool) -> Route {
    use Algorithm::*;
    match (constraint, directed, uniform) {
        (Constraint::OneNeighbour, false, true) => Route::Solver(UniformUndirectedOneLinear),
        (Constraint::OneNeighbour, false, false) => Route::Solver(GreedyOneNeighbour),
        (Constraint::OneNeighbour, true, true) => Route::Solver(UniformDirectedOnePtas),
        (Constraint::OneNeighbour, true, false) => Route::ExactOnly {
            algorithm: ExactOne,
            notice: DIRECTED_ONE_HARDNESS,
        },
        (Constraint::AllNeighbour, true, true) => Route::Solver(UniformDirectedAllPtas),
        (Constraint::AllNeighbour, false, true) => Route::Solver(UniformUndirectedAllSubsetSum),
        (Constraint::AllNeighbour, false, false) => Route::Solver(GeneralUndirectedAllFptas),
        (Constraint::AllNeighbour, true, false) => Route::ExactOnly {
            algorithm: ExactAll,
            notice: DIRECTED_ALL_HARDNESS,
        },
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SolveOptions {
    pub constraint: Constraint,
    /// `None` means `auto`.
    pub variant: Option<Algorithm>,
    pub eps: Epsilon,
    /// Overrides the instance budget.
    pub budget: Option<u64>,
    pub oracle_limit: usize,
}

impl SolveOptions {
    pub fn new(constraint: Constraint) -> Self {
        Self {
            constraint,
            variant: None,
            eps: Epsilon::new(DEFAULT_EPSILON).expect("default epsilon is valid"),
            budget: None,
            oracle_limit: DEFAULT_ORACLE_LIMIT,
        }
    }
}

/// Runs one algorithm without verification.
pub fn run_algorithm(
    algorithm: Algorithm,
    instance: &Instance,
    k: u64,
    eps: Epsilon,
    oracle_limit: usize,
) -> Result<Solution> {
    match algorithm {
        Algorithm::UniformUndirectedOneLinear => uniform_undirected_1n(instance, k),
        Algorithm::GreedyOneNeighbour => greedy_1_neighbour(instance, k, eps),
        Algorithm::UniformDirectedOnePtas => uniform_directed_1n_ptas(instance, k, eps),
        Algorithm::UniformDirectedAllPtas => uniform_directed_alln_ptas(instance, k, eps),
        Algorithm::UniformUndirectedAllSubsetSum => uniform_undirected_alln(instance, k),
        Algorithm::GeneralUndirectedAllFptas => general_undirected_alln_fptas(instance, k, eps),
        Algorithm::ExactOne => exact_1n_with_limit(instance, k, oracle_limit),
        Algorithm::ExactAll => exact_alln_with_limit(instance, k, oracle_limit),
    }
}

/// Picks the algorithm for `opts`, or fails with the hardness notice.
pub fn select_algorithm(instance: &Instance, opts: &SolveOptions) -> Result<Algorithm> {
    if let Some(a) = opts.variant {
        if a.constraint() != opts.constraint {
            return Err(Error::Unsupported(format!(
                "{a} solves the {}-neighbour problem, not the {}-neighbour one",
                a.constraint(),
                opts.constraint
            )));
        }
        return Ok(a);
    }
    match route(
        opts.constraint,
        instance.is_directed(),
        instance.is_uniform(),
    ) {
        Route::Solver(a) => Ok(a),
        Route::ExactOnly { algorithm, notice } => {
            if instance.n() <= opts.oracle_limit {
                Ok(algorithm)
            } else {
                Err(Error::Hardness(format!(
                    "{notice}; exhaustive search is limited to {} vertices and the instance has {}",
                    opts.oracle_limit,
                    instance.n()
                )))
            }
        }
    }
}

/// Solves and re-verifies feasibility and budget before returning.
pub fn solve(instance: &Instance, opts: &SolveOptions) -> Result<Solution> {
    let k = opts.budget.unwrap_or(instance.budget());
    let algorithm = select_algorithm(instance, opts)?;
    let sol = run_algorithm(algorithm, instance, k, opts.eps, opts.oracle_limit)?;
    sol.verify(instance, k)?;
    Ok(sol)
}

/// Feasibility verdict for a user-supplied set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub feasible: bool,
    /// Smallest vertex violating the constraint.
    pub violation: Option<usize>,
    pub weight: u64,
    pub profit: u64,
    pub within_budget: bool,
}

pub fn check_set(
    instance: &Instance,
    constraint: Constraint,
    set: &VertexSet,
    budget: u64,
) -> CheckReport {
    let violation = constraint.violation(instance, set);
    let weight = instance.weight_of(set);
    CheckReport {
        feasible: violation.is_none(),
        violation,
        weight,
        profit: instance.profit_of(set),
        within_budget: weight <= budget,
    }
}
