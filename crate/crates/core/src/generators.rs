//! Seeded random instances and instances built from set systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Instance;

/// Ground set `0..ground` and a collection of subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSystem {
    pub ground: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetSystem {
    pub fn new(ground: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&x) = s.iter().find(|&&x| x >= ground) {
                return Err(Error::InvalidArgument(format!(
                    "set element {x} outside the ground set 0..{ground}"
                )));
            }
        }
        Ok(Self { ground, sets })
    }

    /// Elements covered by the sets with the given indices.
    pub fn covered(&self, chosen: &[usize]) -> Vec<bool> {
        let mut hit = vec![false; self.ground];
        for &i in chosen {
            for &x in &self.sets[i] {
                hit[x] = true;
            }
        }
        hit
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandomParams {
    pub n: usize,
    pub edge_prob: f64,
    pub directed: bool,
    pub w_max: u64,
    pub p_max: u64,
    pub budget: u64,
    pub seed: u64,
}

/// Each pair (ordered when directed) becomes an edge independently with
/// probability `edge_prob`; weights and profits are uniform in `0..=max`.
pub fn gen_random(params: &RandomParams) -> Result<Instance> {
    if !(0.0..=1.0).contains(&params.edge_prob) {
        return Err(Error::InvalidArgument(format!(
            "edge probability must lie in [0, 1], got {}",
            params.edge_prob
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let n = params.n;
    let mut weights = Vec::with_capacity(n);
    let mut profits = Vec::with_capacity(n);
    for _ in 0..n {
        weights.push(rng.gen_range(0..=params.w_max));
        profits.push(rng.gen_range(0..=params.p_max));
    }
    let mut edges = Vec::new();
    for u in 0..n {
        let from = if params.directed { 0 } else { u + 1 };
        for v in from..n {
            if u != v && rng.gen_bool(params.edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Instance::new(params.directed, weights, profits, edges, params.budget)
}

/// Bipartite 1-neighbour instance for maximum k-coverage: element vertices
/// `0..ground` with `(w, p) = (0, 1)`, then one set vertex per subset with
/// `(w, p) = (1, 0)`, joined by membership.
pub fn gen_max_k_cover(system: &SetSystem, k: u64) -> Result<Instance> {
    let r = system.sets.len();
    gen_budgeted_max_cover(system, &vec![1; system.ground], &vec![1; r], k)
}

/// Budgeted variant: element weights become vertex profits and set costs
/// become vertex weights.
pub fn gen_budgeted_max_cover(
    system: &SetSystem,
    element_profits: &[u64],
    set_costs: &[u64],
    k: u64,
) -> Result<Instance> {
    if system.sets.is_empty() {
        return Err(Error::InvalidArgument("the set collection is empty".into()));
    }
    if element_profits.len() != system.ground || set_costs.len() != system.sets.len() {
        return Err(Error::InvalidArgument(
            "one profit per element and one cost per set are required".into(),
        ));
    }
    let s = system.ground;
    let mut weights = vec![0; s];
    let mut profits = element_profits.to_vec();
    weights.extend_from_slice(set_costs);
    profits.extend(std::iter::repeat_n(0, system.sets.len()));
    let edges = system
        .sets
        .iter()
        .enumerate()
        .flat_map(|(i, set)| set.iter().map(move |&x| (x, s + i)))
        .collect();
    Instance::new(false, weights, profits, edges, k)
}

/// Layout of a set-cover cycle instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleLayout {
    /// Cycle length `M = ground + 1`.
    pub cycle_len: usize,
    /// The cover size actually used, `min(t, |R|)`.
    pub t: usize,
    /// Marked vertex of each set's cycle.
    pub marked: Vec<usize>,
    /// First vertex of the trap cycle, present when some element lies in
    /// no set.
    pub trap: Option<usize>,
}

/// Directed uniform 1-neighbour instance: element vertices `0..ground`,
/// then one directed cycle of length `M = ground + 1` per set whose first
/// vertex `c_i` is marked, arcs from each element to the marked vertex of
/// every set containing it, and budget `t·M + ground`.
///
/// `t` is clamped to the number of sets. Elements in no set point into a
/// final trap cycle one vertex longer than the budget, so they can never be
/// chosen.
pub fn gen_set_cover_cycles(system: &SetSystem, t: usize) -> Result<(Instance, CycleLayout)> {
    if system.sets.is_empty() {
        return Err(Error::InvalidArgument("the set collection is empty".into()));
    }
    if t == 0 {
        return Err(Error::InvalidArgument(
            "the cover size t must be at least 1".into(),
        ));
    }
    let t = t.min(system.sets.len());
    let n = system.ground;
    let m = n + 1;
    let budget = t * m + n;
    let mut total = n + m * system.sets.len();
    let mut edges = Vec::new();
    let mut marked = Vec::with_capacity(system.sets.len());
    for (i, set) in system.sets.iter().enumerate() {
        let base = n + i * m;
        marked.push(base);
        for j in 0..m {
            edges.push((base + j, base + (j + 1) % m));
        }
        for &x in set {
            edges.push((x, base));
        }
    }
    let uncovered: Vec<usize> = system
        .covered(&(0..system.sets.len()).collect::<Vec<_>>())
        .iter()
        .enumerate()
        .filter_map(|(x, &c)| (!c).then_some(x))
        .collect();
    let trap = (!uncovered.is_empty()).then(|| {
        let base = total;
        let len = budget + 1;
        for j in 0..len {
            edges.push((base + j, base + (j + 1) % len));
        }
        for &x in &uncovered {
            edges.push((x, base));
        }
        total += len;
        base
    });
    let instance = Instance::uniform(true, total, edges, budget as u64)?;
    Ok((
        instance,
        CycleLayout {
            cycle_len: m,
            t,
            marked,
            trap,
        },
    ))
}

/// A network with edge costs, customer profits and a sink.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Network {
    pub nodes: usize,
    /// `(u, v, cost)`
    pub links: Vec<(usize, usize, u64)>,
    pub sink: usize,
    /// Profit per node; the sink's entry is ignored.
    pub profits: Vec<u64>,
}

/// Undirected 1-neighbour instance for budgeted network formation: nodes
/// keep their ids with weight 0 (the sink also has profit 0), and every
/// link becomes a vertex `nodes + i` of weight equal to its cost and profit
/// 0, adjacent to both endpoints.
pub fn gen_network_budget(net: &Network, k: u64) -> Result<Instance> {
    if net.sink >= net.nodes {
        return Err(Error::InvalidArgument(format!(
            "sink {} is not a node of a {}-node network",
            net.sink, net.nodes
        )));
    }
    if net.profits.len() != net.nodes {
        return Err(Error::InvalidArgument(
            "one profit per node is required".into(),
        ));
    }
    let mut weights = vec![0; net.nodes];
    let mut profits = net.profits.clone();
    profits[net.sink] = 0;
    let mut edges = Vec::with_capacity(2 * net.links.len());
    for (i, &(u, v, cost)) in net.links.iter().enumerate() {
        if u >= net.nodes || v >= net.nodes || u == v {
            return Err(Error::InvalidArgument(format!("bad link ({u}, {v})")));
        }
        let mid = net.nodes + i;
        weights.push(cost);
        profits.push(0);
        edges.push((u, mid));
        edges.push((mid, v));
    }
    Instance::new(false, weights, profits, edges, k)
}
