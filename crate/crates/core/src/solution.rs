use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{all_neighbour_violation, one_neighbour_violation, Instance, VertexSet};
use crate::numeric::{trim_float, Epsilon};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    OneNeighbour,
    AllNeighbour,
}

impl Constraint {
    pub fn name(&self) -> &'static str {
        match self {
            Constraint::OneNeighbour => "one",
            Constraint::AllNeighbour => "all",
        }
    }

    /// Smallest member violating the constraint, if any.
    pub fn violation(&self, instance: &Instance, set: &VertexSet) -> Option<usize> {
        match self {
            Constraint::OneNeighbour => one_neighbour_violation(instance, set),
            Constraint::AllNeighbour => all_neighbour_violation(instance, set),
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    UniformUndirectedOneLinear,
    GreedyOneNeighbour,
    UniformDirectedOnePtas,
    UniformDirectedAllPtas,
    UniformUndirectedAllSubsetSum,
    GeneralUndirectedAllFptas,
    ExactOne,
    ExactAll,
}

impl Algorithm {
    pub const ALL: [Algorithm; 8] = [
        Algorithm::UniformUndirectedOneLinear,
        Algorithm::GreedyOneNeighbour,
        Algorithm::UniformDirectedOnePtas,
        Algorithm::UniformDirectedAllPtas,
        Algorithm::UniformUndirectedAllSubsetSum,
        Algorithm::GeneralUndirectedAllFptas,
        Algorithm::ExactOne,
        Algorithm::ExactAll,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::UniformUndirectedOneLinear => "uu1n-linear",
            Algorithm::GreedyOneNeighbour => "greedy-1n",
            Algorithm::UniformDirectedOnePtas => "ud1n-ptas",
            Algorithm::UniformDirectedAllPtas => "udall-ptas",
            Algorithm::UniformUndirectedAllSubsetSum => "uuall-subsetsum",
            Algorithm::GeneralUndirectedAllFptas => "guall-fptas",
            Algorithm::ExactOne => "exact-1n",
            Algorithm::ExactAll => "exact-all",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }

    pub fn constraint(&self) -> Constraint {
        match self {
            Algorithm::UniformUndirectedOneLinear
            | Algorithm::GreedyOneNeighbour
            | Algorithm::UniformDirectedOnePtas
            | Algorithm::ExactOne => Constraint::OneNeighbour,
            _ => Constraint::AllNeighbour,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Approximation factor promised by the algorithm that produced a solution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Guarantee {
    Exact,
    /// `((1−ε)/2)·(1 − e^{−(1−ε)})`
    Greedy(Epsilon),
    /// `1−ε`
    OneMinusEps(Epsilon),
}

impl Guarantee {
    pub fn factor(&self) -> f64 {
        match self {
            Guarantee::Exact => 1.0,
            Guarantee::Greedy(e) => {
                let b = 1.0 - e.value();
                b / 2.0 * (1.0 - (-b).exp())
            }
            Guarantee::OneMinusEps(e) => 1.0 - e.value(),
        }
    }
}

impl fmt::Display for Guarantee {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guarantee::Exact => f.write_str("exact"),
            Guarantee::Greedy(e) => {
                let b = 1.0 - e.value();
                write!(f, "({})(1−e^{{−{}}})", trim_float(b / 2.0), trim_float(b))
            }
            Guarantee::OneMinusEps(e) => write!(f, "{}", trim_float(1.0 - e.value())),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub chosen: VertexSet,
    pub constraint: Constraint,
    pub total_weight: u64,
    pub total_profit: u64,
    pub algorithm: Algorithm,
    pub guarantee: Guarantee,
    pub trace: Vec<String>,
}

impl Solution {
    pub fn new(
        instance: &Instance,
        chosen: VertexSet,
        algorithm: Algorithm,
        guarantee: Guarantee,
    ) -> Self {
        Self {
            total_weight: instance.weight_of(&chosen),
            total_profit: instance.profit_of(&chosen),
            constraint: algorithm.constraint(),
            chosen,
            algorithm,
            guarantee,
            trace: Vec::new(),
        }
    }

    pub fn with_trace(mut self, trace: Vec<String>) -> Self {
        self.trace = trace;
        self
    }

    /// Checks feasibility, the budget and the recorded totals.
    pub fn verify(&self, instance: &Instance, budget: u64) -> Result<()> {
        if let Some(v) = self.constraint.violation(instance, &self.chosen) {
            return Err(Error::Internal(format!(
                "{} produced a set violating the {}-neighbour constraint at vertex {v}",
                self.algorithm, self.constraint
            )));
        }
        let (w, p) = (
            instance.weight_of(&self.chosen),
            instance.profit_of(&self.chosen),
        );
        if w > budget {
            return Err(Error::Internal(format!(
                "{} exceeded the budget: weight {w} > {budget}",
                self.algorithm
            )));
        }
        if (w, p) != (self.total_weight, self.total_profit) {
            return Err(Error::Internal(format!(
                "{} reported totals ({}, {}) but the set has ({w}, {p})",
                self.algorithm, self.total_weight, self.total_profit
            )));
        }
        Ok(())
    }
}
