//! Dependency graphs, connectivity structure and the two feasibility
//! predicates.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Largest admissible weight, profit or budget (exclusive): values fit in 63 bits.
pub const VALUE_LIMIT: u64 = 1 << 63;

/// Strictly increasing list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    /// Sorts and deduplicates.
    pub fn from_unsorted(mut ids: Vec<usize>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        Self(ids)
    }

    /// Builds a set and checks every id against the instance.
    pub fn for_instance(instance: &Instance, ids: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = ids.iter().find(|&&v| v >= instance.n()) {
            return Err(Error::InvalidArgument(format!(
                "vertex {bad} out of range for an instance with {} vertices",
                instance.n()
            )));
        }
        Ok(Self::from_unsorted(ids))
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        Self(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &b)| b.then_some(v))
                .collect(),
        )
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn mask(&self, n: usize) -> Vec<bool> {
        let mut m = vec![false; n];
        for &v in &self.0 {
            m[v] = true;
        }
        m
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut ids = self.0.clone();
        ids.extend_from_slice(&other.0);
        Self::from_unsorted(ids)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self::from_unsorted(iter.into_iter().collect())
    }
}

/// A knapsack instance on a dependency graph.
///
/// For directed graphs `neighbours(v)` are the out-neighbours; the
/// constraints only look at out-arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    directed: bool,
    weights: Vec<u64>,
    profits: Vec<u64>,
    edges: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    budget: u64,
}

impl Instance {
    /// Validates and builds an instance. Undirected edges may be given in
    /// either orientation and are stored as `(min, max)`.
    pub fn new(
        directed: bool,
        weights: Vec<u64>,
        profits: Vec<u64>,
        edges: Vec<(usize, usize)>,
        budget: u64,
    ) -> Result<Self> {
        let n = weights.len();
        if profits.len() != n {
            return Err(Error::Validation(format!(
                "{} weights but {} profits",
                n,
                profits.len()
            )));
        }
        for (name, values) in [("weight", &weights), ("profit", &profits)] {
            if let Some(v) = values.iter().position(|&x| x >= VALUE_LIMIT) {
                return Err(Error::Validation(format!(
                    "{name} of vertex {v} does not fit in 63 bits"
                )));
            }
            let total: u128 = values.iter().map(|&x| x as u128).sum();
            if total >= VALUE_LIMIT as u128 {
                return Err(Error::Validation(format!(
                    "total {name} does not fit in 63 bits"
                )));
            }
        }
        if budget >= VALUE_LIMIT {
            return Err(Error::Validation("budget does not fit in 63 bits".into()));
        }
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= n || v >= n {
                return Err(Error::Validation(format!(
                    "edge ({u}, {v}) names a vertex outside 0..{n}"
                )));
            }
            if u == v {
                return Err(Error::Validation(format!("self-loop at vertex {u}")));
            }
            canon.push(if directed {
                (u, v)
            } else {
                (u.min(v), u.max(v))
            });
        }
        canon.sort_unstable();
        if let Some(w) = canon.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!(
                "duplicate edge ({}, {})",
                w[0].0, w[0].1
            )));
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for &(u, v) in &canon {
            out[u].push(v);
            inc[v].push(u);
            if !directed {
                out[v].push(u);
                inc[u].push(v);
            }
        }
        for list in out.iter_mut().chain(inc.iter_mut()) {
            list.sort_unstable();
        }
        Ok(Self {
            directed,
            weights,
            profits,
            edges: canon,
            out,
            inc,
            budget,
        })
    }

    /// Every weight and profit equal to one.
    pub fn uniform(
        directed: bool,
        n: usize,
        edges: Vec<(usize, usize)>,
        budget: u64,
    ) -> Result<Self> {
        Self::new(directed, vec![1; n], vec![1; n], edges, budget)
    }

    pub fn with_budget(&self, budget: u64) -> Result<Self> {
        if budget >= VALUE_LIMIT {
            return Err(Error::Validation("budget does not fit in 63 bits".into()));
        }
        Ok(Self {
            budget,
            ..self.clone()
        })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn profit(&self, v: usize) -> u64 {
        self.profits[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn profits(&self) -> &[u64] {
        &self.profits
    }

    /// Canonical edge list, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbours, or out-neighbours when directed. Sorted.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    /// Vertices with an edge (arc) into `v`. Sorted.
    pub fn in_neighbours(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    /// Degree, or out-degree when directed.
    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    /// All weights and profits equal to one.
    pub fn is_uniform(&self) -> bool {
        self.weights.iter().all(|&w| w == 1) && self.profits.iter().all(|&p| p == 1)
    }

    pub fn weight_equals_profit(&self) -> bool {
        self.weights == self.profits
    }

    pub fn weight_of(&self, set: &VertexSet) -> u64 {
        set.iter().map(|v| self.weights[v]).sum()
    }

    pub fn profit_of(&self, set: &VertexSet) -> u64 {
        set.iter().map(|v| self.profits[v]).sum()
    }

    /// Subgraph induced on the vertices with `keep[v]`, renumbered in
    /// increasing id order. Returns the new instance and the map from new
    /// ids to old ids.
    pub fn induced(&self, keep: &[bool]) -> (Instance, Vec<usize>) {
        let map: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        let mut new_id = vec![usize::MAX; self.n()];
        for (i, &v) in map.iter().enumerate() {
            new_id[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (new_id[u], new_id[v]))
            .collect();
        let sub = Instance::new(
            self.directed,
            map.iter().map(|&v| self.weights[v]).collect(),
            map.iter().map(|&v| self.profits[v]).collect(),
            edges,
            self.budget,
        )
        .expect("induced subgraph of a valid instance is valid");
        (sub, map)
    }
}

/// Condensation of a directed graph into its DAG of maximal SCCs.
///
/// SCC ids are assigned in increasing order of their smallest member vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condensation {
    pub membership: Vec<usize>,
    pub scc_vertices: Vec<VertexSet>,
    pub dag_adjacency: Vec<Vec<usize>>,
    pub scc_weight: Vec<u64>,
    pub smallest_cycle_len: Vec<usize>,
    pub smallest_cycle_vertices: Vec<Vec<usize>>,
}

impl Condensation {
    pub fn scc_count(&self) -> usize {
        self.scc_vertices.len()
    }

    /// SCC ids ordered so that every DAG arc goes from a later to an
    /// earlier position (sinks first).
    pub fn sinks_first_order(&self) -> Vec<usize> {
        let s = self.scc_count();
        let mut outdeg: Vec<usize> = self.dag_adjacency.iter().map(Vec::len).collect();
        let mut preds = vec![Vec::new(); s];
        for (u, outs) in self.dag_adjacency.iter().enumerate() {
            for &v in outs {
                preds[v].push(u);
            }
        }
        let mut queue: VecDeque<usize> = (0..s).filter(|&u| outdeg[u] == 0).collect();
        let mut order = Vec::with_capacity(s);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &p in &preds[u] {
                outdeg[p] -= 1;
                if outdeg[p] == 0 {
                    queue.push_back(p);
                }
            }
        }
        order
    }

    pub fn vertices_of(&self, sccs: &[usize]) -> VertexSet {
        sccs.iter()
            .flat_map(|&u| self.scc_vertices[u].iter())
            .collect()
    }
}

fn require_undirected(instance: &Instance, what: &str) -> Result<()> {
    if instance.is_directed() {
        return Err(Error::Unsupported(format!(
            "{what} requires an undirected instance"
        )));
    }
    Ok(())
}

fn require_directed(instance: &Instance, what: &str) -> Result<()> {
    if !instance.is_directed() {
        return Err(Error::Unsupported(format!(
            "{what} requires a directed instance"
        )));
    }
    Ok(())
}

pub(crate) fn bfs_order(instance: &Instance, start: usize, allowed: Option<&[bool]>) -> Vec<usize> {
    let mut seen = vec![false; instance.n()];
    let mut order = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() {
        let v = order[head];
        head += 1;
        for &u in instance.neighbours(v) {
            if !seen[u] && allowed.is_none_or(|a| a[u]) {
                seen[u] = true;
                order.push(u);
            }
        }
    }
    order
}

/// Connected components in decreasing order of size, ties broken by the
/// smallest contained id.
pub fn connected_components(instance: &Instance) -> Result<Vec<VertexSet>> {
    require_undirected(instance, "connected_components")?;
    let n = instance.n();
    let mut seen = vec![false; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let order = bfs_order(instance, s, None);
        for &v in &order {
            seen[v] = true;
        }
        comps.push(VertexSet::from_unsorted(order));
    }
    // Components are discovered in increasing order of their smallest id, so
    // a stable bucket pass by size keeps the tie-break and stays linear.
    let mut buckets: Vec<Vec<VertexSet>> = vec![Vec::new(); n + 1];
    for c in comps {
        let len = c.len();
        buckets[len].push(c);
    }
    Ok(buckets.into_iter().rev().flatten().collect())
}

/// Iterative Tarjan. Returns raw components in discovery order.
fn tarjan(instance: &Instance) -> Vec<Vec<usize>> {
    let n = instance.n();
    const UNVISITED: usize = usize::MAX;
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut next = 0;
    let mut call: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let outs = instance.neighbours(v);
            if *i < outs.len() {
                let w = outs[*i];
                *i += 1;
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comps.push(comp);
                }
            }
        }
    }
    comps
}

/// Contracts maximal strongly connected components.
pub fn condense(instance: &Instance) -> Result<Condensation> {
    require_directed(instance, "condense")?;
    let mut comps: Vec<VertexSet> = tarjan(instance)
        .into_iter()
        .map(VertexSet::from_unsorted)
        .collect();
    comps.sort_by_key(|c| c.as_slice()[0]);

    let mut membership = vec![0; instance.n()];
    for (id, c) in comps.iter().enumerate() {
        for v in c.iter() {
            membership[v] = id;
        }
    }
    let mut dag = vec![Vec::new(); comps.len()];
    for &(u, v) in instance.edges() {
        let (a, b) = (membership[u], membership[v]);
        if a != b {
            dag[a].push(b);
        }
    }
    for outs in &mut dag {
        outs.sort_unstable();
        outs.dedup();
    }
    let scc_weight = comps.iter().map(|c| instance.weight_of(c)).collect();
    let cycles: Vec<Vec<usize>> = comps
        .iter()
        .map(|c| shortest_cycle_in_scc(instance, c, &membership))
        .collect();
    Ok(Condensation {
        membership,
        scc_vertices: comps,
        dag_adjacency: dag,
        scc_weight,
        smallest_cycle_len: cycles.iter().map(Vec::len).collect(),
        smallest_cycle_vertices: cycles,
    })
}

/// Lexicographically smallest shortest cycle of an SCC, starting at its
/// smallest vertex. Singletons yield themselves.
fn shortest_cycle_in_scc(instance: &Instance, scc: &VertexSet, membership: &[usize]) -> Vec<usize> {
    let verts = scc.as_slice();
    if verts.len() == 1 {
        return vec![verts[0]];
    }
    let id = membership[verts[0]];
    let n = instance.n();
    let in_scc = |v: usize| membership[v] == id;

    // Distance from every vertex to `s` using only SCC vertices with id ≥ s.
    let dist_to = |s: usize| -> Vec<usize> {
        let mut dist = vec![usize::MAX; n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in instance.in_neighbours(x) {
                if y >= s && in_scc(y) && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    };

    // Shortest cycle through s whose minimum vertex is s.
    let mut best: Option<(usize, usize, Vec<usize>)> = None;
    for &s in verts {
        let dist = dist_to(s);
        let len = instance
            .neighbours(s)
            .iter()
            .filter(|&&u| u > s && in_scc(u) && dist[u] != usize::MAX)
            .map(|&u| dist[u] + 1)
            .min();
        if let Some(len) = len {
            if best.as_ref().is_none_or(|(l, _, _)| len < *l) {
                best = Some((len, s, dist));
            }
        }
    }
    let (len, s, dist) = best.expect("a strongly connected set with two vertices has a cycle");
    let mut cycle = vec![s];
    let mut cur = s;
    for step in 1..len {
        let want = len - step;
        cur = *instance
            .neighbours(cur)
            .iter()
            .find(|&&u| u > s && in_scc(u) && dist[u] == want)
            .expect("distance labels guide the walk");
        cycle.push(cur);
    }
    cycle
}

/// Shortest directed cycle inside a maximal SCC (`[v]` for a singleton).
pub fn smallest_cycle(instance: &Instance, scc_vertices: &VertexSet) -> Result<Vec<usize>> {
    require_directed(instance, "smallest_cycle")?;
    if scc_vertices.is_empty() {
        return Err(Error::InvalidArgument(
            "empty vertex set is not an SCC".into(),
        ));
    }
    let cond = condense(instance)?;
    let first = scc_vertices.as_slice()[0];
    if first >= instance.n() || scc_vertices.as_slice().iter().any(|&v| v >= instance.n()) {
        return Err(Error::InvalidArgument("vertex id out of range".into()));
    }
    let id = cond.membership[first];
    if &cond.scc_vertices[id] != scc_vertices {
        return Err(Error::InvalidArgument(
            "vertex set is not a maximal strongly connected component".into(),
        ));
    }
    Ok(cond.smallest_cycle_vertices[id].clone())
}

/// Vertices outside `set` with an edge (arc) into `set`.
pub fn in_boundary(instance: &Instance, set: &VertexSet) -> VertexSet {
    let mask = set.mask(instance.n());
    let mut hit = vec![false; instance.n()];
    for v in set.iter() {
        for &u in instance.in_neighbours(v) {
            if !mask[u] {
                hit[u] = true;
            }
        }
    }
    VertexSet::from_mask(&hit)
}

/// Reflexive-transitive closure of the DAG from `roots`. Sorted.
pub fn descendants(cond: &Condensation, roots: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; cond.scc_count()];
    let mut stack: Vec<usize> = Vec::new();
    for &r in roots {
        if !seen[r] {
            seen[r] = true;
            stack.push(r);
        }
    }
    while let Some(u) = stack.pop() {
        for &v in &cond.dag_adjacency[u] {
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    (0..cond.scc_count()).filter(|&u| seen[u]).collect()
}

/// Smallest member of `set` that has neighbours but none inside `set`.
pub fn one_neighbour_violation(instance: &Instance, set: &VertexSet) -> Option<usize> {
    let mask = set.mask(instance.n());
    set.iter().find(|&v| {
        let outs = instance.neighbours(v);
        !outs.is_empty() && !outs.iter().any(|&u| mask[u])
    })
}

/// Smallest member of `set` with a neighbour outside `set`.
pub fn all_neighbour_violation(instance: &Instance, set: &VertexSet) -> Option<usize> {
    let mask = set.mask(instance.n());
    set.iter()
        .find(|&v| instance.neighbours(v).iter().any(|&u| !mask[u]))
}

pub fn is_one_neighbour_set(instance: &Instance, set: &VertexSet) -> bool {
    one_neighbour_violation(instance, set).is_none()
}

pub fn is_all_neighbour_set(instance: &Instance, set: &VertexSet) -> bool {
    all_neighbour_violation(instance, set).is_none()
}
