//! Solvers for the 1-neighbour constraint: the greedy algorithm driven by
//! viable-set oracles, the linear-time exact algorithm for uniform
//! undirected graphs and the PTAS for uniform directed graphs.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::exact::max_size_1n;
use crate::graph::{
    bfs_order, condense, connected_components, in_boundary, Condensation, Instance, VertexSet,
};
use crate::numeric::{Epsilon, Ratio};
use crate::solution::{Algorithm, Guarantee, Solution};
use crate::stars::{best_profit_viable_star, best_ratio_viable_star};

/// Finds viable sets of a fixed viable family.
///
/// Both methods receive the current working graph and return vertex ids of
/// that graph.
pub trait ViableOracle {
    /// Viable set of weight ≤ `capacity` with near-maximum profit.
    fn best_profit(&self, graph: &Instance, capacity: u64) -> Result<Option<VertexSet>>;
    /// Viable set of weight ≤ `capacity` with near-maximum profit-to-weight ratio.
    fn best_ratio(&self, graph: &Instance, capacity: u64) -> Result<Option<VertexSet>>;
    fn guarantee(&self) -> Guarantee;
}

/// Star oracles for undirected graphs, both within `1−ε`.
#[derive(Debug, Clone, Copy)]
pub struct StarOracle {
    pub eps: Epsilon,
}

impl ViableOracle for StarOracle {
    fn best_profit(&self, graph: &Instance, capacity: u64) -> Result<Option<VertexSet>> {
        Ok(best_profit_viable_star(graph, capacity, self.eps)?.map(|s| s.vertices()))
    }

    fn best_ratio(&self, graph: &Instance, capacity: u64) -> Result<Option<VertexSet>> {
        Ok(best_ratio_viable_star(graph, capacity, self.eps)?.map(|s| s.vertices()))
    }

    fn guarantee(&self) -> Guarantee {
        Guarantee::Greedy(self.eps)
    }
}

/// What one greedy step added.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pick {
    Viable(VertexSet),
    Frontier(usize),
}

/// Evolving state of the greedy algorithm.
#[derive(Debug, Clone)]
pub struct GreedyState<'a> {
    instance: &'a Instance,
    knapsack: Vec<bool>,
    remaining: u64,
    frontier: VertexSet,
    /// Vertices of the working graph G′.
    alive: Vec<bool>,
    /// Arcs of G′ with their tail in the frontier are dropped when directed.
    pruned_tails: Vec<bool>,
    iteration: usize,
}

impl<'a> GreedyState<'a> {
    pub fn new(instance: &'a Instance, k: u64) -> Self {
        let n = instance.n();
        Self {
            instance,
            knapsack: vec![false; n],
            remaining: k,
            frontier: VertexSet::empty(),
            alive: vec![true; n],
            pruned_tails: vec![false; n],
            iteration: 0,
        }
    }

    pub fn knapsack(&self) -> VertexSet {
        VertexSet::from_mask(&self.knapsack)
    }

    pub fn frontier(&self) -> &VertexSet {
        &self.frontier
    }

    pub fn remaining(&self) -> u64 {
        self.remaining
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    /// The working graph G′ and the map from its ids to instance ids.
    pub fn working_graph(&self) -> (Instance, Vec<usize>) {
        let (g, map) = self.instance.induced(&self.alive);
        if !self.instance.is_directed() {
            return (g, map);
        }
        let edges = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, _)| !self.pruned_tails[map[u]])
            .collect();
        let pruned = Instance::new(
            true,
            g.weights().to_vec(),
            g.profits().to_vec(),
            edges,
            g.budget(),
        )
        .expect("edge subset of a valid instance");
        (pruned, map)
    }

    /// `Z = N⁻(U)`, `K = k − w(U)` and, when directed, no arc of G′ leaves `Z`.
    pub fn invariants_hold(&self, k: u64) -> bool {
        let u = self.knapsack();
        if self.frontier != in_boundary(self.instance, &u) {
            return false;
        }
        if self.instance.weight_of(&u) + self.remaining != k {
            return false;
        }
        if self.instance.is_directed() {
            let (g, map) = self.working_graph();
            if g.edges()
                .iter()
                .any(|&(t, _)| self.frontier.contains(map[t]))
            {
                return false;
            }
        }
        true
    }

    /// Best-ratio frontier vertex fitting in `K`; ties go to higher profit,
    /// then to the smaller id.
    fn best_frontier_vertex(&self) -> Option<usize> {
        let inst = self.instance;
        self.frontier
            .iter()
            .filter(|&v| inst.weight(v) <= self.remaining)
            .fold(None, |best: Option<usize>, v| {
                let better = best.is_none_or(|b| {
                    let (rv, rb) = (
                        Ratio::new(inst.profit(v), inst.weight(v)),
                        Ratio::new(inst.profit(b), inst.weight(b)),
                    );
                    rv > rb || (rv == rb && inst.profit(v) > inst.profit(b))
                });
                if better {
                    Some(v)
                } else {
                    best
                }
            })
    }

    /// Performs one iteration. `None` once neither a viable set nor a
    /// frontier vertex fits.
    pub fn step(&mut self, oracle: &dyn ViableOracle) -> Result<Option<Pick>> {
        let (g, map) = self.working_graph();
        let viable = oracle
            .best_ratio(&g, self.remaining)?
            .map(|s| VertexSet::from_unsorted(s.iter().map(|v| map[v]).collect()));
        let single = self.best_frontier_vertex();
        let inst = self.instance;
        let pick = match (viable, single) {
            (None, None) => return Ok(None),
            (Some(s), None) => Pick::Viable(s),
            (None, Some(v)) => Pick::Frontier(v),
            (Some(s), Some(v)) => {
                let rs = Ratio::new(inst.profit_of(&s), inst.weight_of(&s));
                let rv = Ratio::new(inst.profit(v), inst.weight(v));
                if rv > rs {
                    Pick::Frontier(v)
                } else {
                    Pick::Viable(s)
                }
            }
        };
        let added = match &pick {
            Pick::Viable(s) => s.clone(),
            Pick::Frontier(v) => VertexSet::from_unsorted(vec![*v]),
        };
        for v in added.iter() {
            debug_assert!(self.alive[v] && !self.knapsack[v]);
            self.knapsack[v] = true;
            self.alive[v] = false;
        }
        self.remaining -= inst.weight_of(&added);
        self.frontier = in_boundary(inst, &self.knapsack());
        if inst.is_directed() {
            for v in self.frontier.iter() {
                self.pruned_tails[v] = true;
            }
        }
        self.iteration += 1;
        Ok(Some(pick))
    }
}

/// Greedy over a viable family; returns the better of the greedy knapsack
/// and the best-profit viable set.
pub fn greedy_with_oracle(
    instance: &Instance,
    k: u64,
    oracle: &dyn ViableOracle,
) -> Result<Solution> {
    let best_single = oracle.best_profit(instance, k)?.unwrap_or_default();
    let mut state = GreedyState::new(instance, k);
    let mut trace = Vec::new();
    while let Some(pick) = state.step(oracle)? {
        trace.push(match pick {
            Pick::Viable(s) => format!(
                "iteration {}: viable set {:?}",
                state.iteration(),
                s.as_slice()
            ),
            Pick::Frontier(v) => format!("iteration {}: frontier vertex {v}", state.iteration()),
        });
    }
    let greedy = state.knapsack();
    let chosen = if instance.profit_of(&best_single) > instance.profit_of(&greedy) {
        trace.push("best-profit viable set beats the greedy knapsack".into());
        best_single
    } else {
        greedy
    };
    Ok(Solution::new(
        instance,
        chosen,
        Algorithm::GreedyOneNeighbour,
        oracle.guarantee(),
    )
    .with_trace(trace))
}

/// Greedy 1-neighbour knapsack on undirected graphs with star oracles.
/// Profit ≥ ((1−ε)/2)·(1 − e^{−(1−ε)})·OPT.
pub fn greedy_1_neighbour(instance: &Instance, k: u64, eps: Epsilon) -> Result<Solution> {
    if instance.is_directed() {
        return Err(Error::Unsupported(
            "greedy-1n has viable-set oracles only for undirected instances".into(),
        ));
    }
    greedy_with_oracle(instance, k, &StarOracle { eps })
}

fn require_uniform(instance: &Instance, what: &str) -> Result<()> {
    if !instance.is_uniform() {
        return Err(Error::Unsupported(format!(
            "{what} requires unit weights and profits"
        )));
    }
    Ok(())
}

/// Exact uniform undirected 1-neighbour knapsack in linear time.
pub fn uniform_undirected_1n(instance: &Instance, k: u64) -> Result<Solution> {
    if instance.is_directed() {
        return Err(Error::Unsupported(
            "uu1n-linear requires an undirected instance".into(),
        ));
    }
    require_uniform(instance, "uu1n-linear")?;
    let comps = connected_components(instance)?;
    let n = instance.n() as u64;
    let done = |ids: Vec<usize>| {
        Ok(Solution::new(
            instance,
            VertexSet::from_unsorted(ids),
            Algorithm::UniformUndirectedOneLinear,
            Guarantee::Exact,
        ))
    };
    if n <= k {
        return done((0..instance.n()).collect());
    }
    // k < n from here on, so k fits in usize
    let k = k as usize;
    if k % 2 == 1 && comps.iter().all(|c| c.len() == 2) {
        return done(comps[..k / 2].iter().flat_map(|c| c.iter()).collect());
    }
    let mut prefix = 0;
    let mut i = 0;
    while prefix + comps[i].len() <= k {
        prefix += comps[i].len();
        i += 1;
    }
    let mut chosen: Vec<usize> = comps[..i].iter().flat_map(|c| c.iter()).collect();
    if prefix == k {
        return done(chosen);
    }
    let order = bfs_order(instance, comps[i].as_slice()[0], None);
    let need = k - prefix;
    if need > 1 {
        chosen.extend_from_slice(&order[..need]);
        return done(chosen);
    }
    let last = comps.last().expect("n > k ≥ 0 means a component exists");
    if last.len() == 1 {
        chosen.extend(last.iter());
        return done(chosen);
    }
    if k == 1 {
        return done(Vec::new());
    }
    // Every component has ≥ 2 vertices and not all have exactly 2, so the
    // largest has ≥ 3; drop the last vertex of its breadth-first order (a
    // tree leaf) and take two vertices of component i instead of one.
    let first = bfs_order(instance, comps[0].as_slice()[0], None);
    let dropped = *first.last().expect("non-empty component");
    chosen.retain(|&v| v != dropped);
    chosen.extend_from_slice(&order[..2]);
    done(chosen)
}

/// One iteration of the uniform directed PTAS.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PtasIteration {
    /// Large SCC ids forming X.
    pub large: Vec<usize>,
    /// Whether every candidate sink fitted (`P′ = Z`).
    pub took_all_sinks: bool,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PtasReport {
    /// `ε ≤ 1/k`: answered by exhaustive search over small subsets.
    pub exhaustive: bool,
    pub iterations: Vec<PtasIteration>,
}

impl PtasReport {
    /// True when every enumerated X took all candidate sinks; the optimal
    /// X is among them, so the result is then optimal.
    pub fn all_sinks_taken(&self) -> bool {
        !self.exhaustive && self.iterations.iter().all(|it| it.took_all_sinks)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum CycleClass {
    Tiny,
    Petite,
    Large,
}

/// Backward search from `seed`: adds vertices with an out-neighbour already
/// chosen, then vertices without out-neighbours, until `k` are chosen.
fn grow_backwards(instance: &Instance, seed: &[usize], k: usize) -> Vec<bool> {
    let n = instance.n();
    let mut chosen = vec![false; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for &v in seed {
        if !chosen[v] {
            chosen[v] = true;
            count += 1;
            queue.push_back(v);
        }
    }
    let mut free = (0..n).filter(|&v| instance.degree(v) == 0);
    while count < k {
        let Some(x) = queue.pop_front().or_else(|| {
            let v = free.by_ref().find(|&v| !chosen[v])?;
            chosen[v] = true;
            count += 1;
            Some(v)
        }) else {
            break;
        };
        for &y in instance.in_neighbours(x) {
            if count == k {
                break;
            }
            if !chosen[y] {
                chosen[y] = true;
                count += 1;
                queue.push_back(y);
            }
        }
    }
    chosen
}

fn combinations(items: &[usize], max_size: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(
        items: &[usize],
        start: usize,
        max: usize,
        cur: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]),
    ) {
        visit(cur);
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, i + 1, max, cur, visit);
            cur.pop();
        }
    }
    rec(items, 0, max_size, &mut Vec::new(), &mut visit);
}

fn ptas_iteration(
    instance: &Instance,
    cond: &Condensation,
    class: &[CycleClass],
    large: &[usize],
    k: usize,
) -> Option<(Vec<bool>, bool)> {
    let c = &cond.smallest_cycle_len;
    let used: usize = large.iter().map(|&u| c[u]).sum();
    if used > k {
        return None;
    }
    let in_dx: Vec<bool> = (0..cond.scc_count())
        .map(|u| class[u] == CycleClass::Petite || large.contains(&u))
        .collect();
    let mut sinks: Vec<usize> = (0..cond.scc_count())
        .filter(|&u| match class[u] {
            CycleClass::Tiny => cond.dag_adjacency[u].is_empty(),
            CycleClass::Petite => cond.dag_adjacency[u].iter().all(|&v| !in_dx[v]),
            CycleClass::Large => false,
        })
        .collect();
    sinks.sort_by_key(|&u| (c[u], u));
    let mut budget = used;
    let mut took_all = true;
    let mut seed: Vec<usize> = large
        .iter()
        .flat_map(|&u| cond.smallest_cycle_vertices[u].iter().copied())
        .collect();
    for &u in &sinks {
        if budget + c[u] <= k {
            budget += c[u];
            seed.extend_from_slice(&cond.smallest_cycle_vertices[u]);
        } else {
            took_all = false;
        }
    }
    Some((grow_backwards(instance, &seed, k), took_all))
}

/// PTAS for uniform directed 1-neighbour knapsack: size ≥ (1−ε)·OPT.
pub fn uniform_directed_1n_ptas(instance: &Instance, k: u64, eps: Epsilon) -> Result<Solution> {
    uniform_directed_1n_ptas_with_report(instance, k, eps).map(|(s, _)| s)
}

pub fn uniform_directed_1n_ptas_with_report(
    instance: &Instance,
    k: u64,
    eps: Epsilon,
) -> Result<(Solution, PtasReport)> {
    if !instance.is_directed() {
        return Err(Error::Unsupported(
            "ud1n-ptas requires a directed instance".into(),
        ));
    }
    require_uniform(instance, "ud1n-ptas")?;
    let finish = |chosen: VertexSet, report: PtasReport| {
        let trace = report
            .iterations
            .iter()
            .map(|it| {
                format!(
                    "X = {:?}: size {}, all sinks taken: {}",
                    it.large, it.size, it.took_all_sinks
                )
            })
            .collect();
        let sol = Solution::new(
            instance,
            chosen,
            Algorithm::UniformDirectedOnePtas,
            Guarantee::OneMinusEps(eps),
        )
        .with_trace(trace);
        Ok((sol, report))
    };

    if eps.at_most_inverse_of(k) {
        let report = PtasReport {
            exhaustive: true,
            iterations: Vec::new(),
        };
        return finish(max_size_1n(instance, k), report);
    }
    let k = k.min(instance.n() as u64) as usize;
    let cond = condense(instance)?;
    let class: Vec<CycleClass> = cond
        .smallest_cycle_len
        .iter()
        .map(|&c| {
            if c == 1 {
                CycleClass::Tiny
            } else if eps.exceeds_fraction_of(c as u64, k as u64) {
                CycleClass::Large
            } else {
                CycleClass::Petite
            }
        })
        .collect();
    let large: Vec<usize> = (0..cond.scc_count())
        .filter(|&u| class[u] == CycleClass::Large)
        .collect();
    let max_x = eps.inverse_floor().min(large.len() as u64) as usize;

    let mut report = PtasReport::default();
    let mut best: Option<VertexSet> = None;
    combinations(&large, max_x, |x| {
        if let Some((mask, took_all)) = ptas_iteration(instance, &cond, &class, x, k) {
            let set = VertexSet::from_mask(&mask);
            report.iterations.push(PtasIteration {
                large: x.to_vec(),
                took_all_sinks: took_all,
                size: set.len(),
            });
            let better = best
                .as_ref()
                .is_none_or(|b| set.len() > b.len() || (set.len() == b.len() && set < *b));
            if better {
                best = Some(set);
            }
        }
    });
    finish(best.unwrap_or_default(), report)
}
