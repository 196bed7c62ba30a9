//! Knapsack solvers for items on a dependency graph, under the
//! 1-neighbour constraint (every chosen vertex with neighbours has a chosen
//! neighbour) and the all-neighbour constraint (every neighbour of a chosen
//! vertex is chosen).

pub mod all_neighbour;
pub mod bench;
pub mod error;
pub mod exact;
pub mod generators;
pub mod graph;
pub mod io;
pub mod knapsack;
pub mod numeric;
pub mod one_neighbour;
pub mod solution;
pub mod solve;
pub mod stars;

pub use error::{Error, Result};
pub use graph::{Instance, VertexSet};
pub use numeric::{Epsilon, Ratio};
pub use solution::{Algorithm, Constraint, Guarantee, Solution};
pub use solve::{solve, SolveOptions};
