//! Solvers for the all-neighbour constraint.

use crate::error::{Error, Result};
use crate::graph::{
    condense, connected_components, descendants, Condensation, Instance, VertexSet,
};
use crate::knapsack::{knapsack_fptas, subset_sum_max, Item};
use crate::numeric::Epsilon;
use crate::solution::{Algorithm, Guarantee, Solution};

/// Descendant closures of every SCC with their weights and profits.
#[derive(Debug, Clone)]
pub struct ClosureCatalog {
    pub condensation: Condensation,
    pub closure: Vec<Vec<usize>>,
    pub closure_weight: Vec<u64>,
    pub closure_profit: Vec<u64>,
    /// `w(u) > ε·k`
    pub heavy: Vec<bool>,
}

impl ClosureCatalog {
    pub fn build(instance: &Instance, k: u64, eps: Epsilon) -> Result<Self> {
        let cond = condense(instance)?;
        let scc_profit: Vec<u64> = cond
            .scc_vertices
            .iter()
            .map(|s| instance.profit_of(s))
            .collect();
        let closure: Vec<Vec<usize>> = (0..cond.scc_count())
            .map(|u| descendants(&cond, &[u]))
            .collect();
        let closure_weight = closure
            .iter()
            .map(|c| c.iter().map(|&u| cond.scc_weight[u]).sum())
            .collect();
        let closure_profit = closure
            .iter()
            .map(|c| c.iter().map(|&u| scc_profit[u]).sum())
            .collect();
        let heavy = cond
            .scc_weight
            .iter()
            .map(|&w| eps.exceeds_fraction_of(w, k))
            .collect();
        Ok(Self {
            condensation: cond,
            closure,
            closure_weight,
            closure_profit,
            heavy,
        })
    }
}

/// True when `set` is the union of the descendant closures of the SCCs
/// (components, when undirected) it touches.
pub fn is_closure_union(instance: &Instance, set: &VertexSet) -> bool {
    let expected: VertexSet = if instance.is_directed() {
        let Ok(cond) = condense(instance) else {
            return false;
        };
        let mut touched: Vec<usize> = set.iter().map(|v| cond.membership[v]).collect();
        touched.sort_unstable();
        touched.dedup();
        cond.vertices_of(&descendants(&cond, &touched))
    } else {
        let Ok(comps) = connected_components(instance) else {
            return false;
        };
        comps
            .iter()
            .filter(|c| c.iter().any(|v| set.contains(v)))
            .flat_map(|c| c.iter())
            .collect()
    };
    expected == *set
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

/// PTAS for directed all-neighbour knapsack with `w(v) = p(v)`:
/// weight ≥ (1−ε)·OPT.
pub fn uniform_directed_alln_ptas(instance: &Instance, k: u64, eps: Epsilon) -> Result<Solution> {
    if !instance.is_directed() {
        return Err(Error::Unsupported(
            "udall-ptas requires a directed instance".into(),
        ));
    }
    if !instance.weight_equals_profit() {
        return Err(Error::Unsupported(
            "udall-ptas requires weight equal to profit at every vertex".into(),
        ));
    }
    let cat = ClosureCatalog::build(instance, k, eps)?;
    let cond = &cat.condensation;
    let s = cond.scc_count();
    let heavy: Vec<usize> = (0..s).filter(|&u| cat.heavy[u]).collect();
    let max_size = eps.inverse_floor().min(heavy.len() as u64) as usize;

    let mut best: Option<(u64, Vec<bool>)> = None;
    let mut trace = Vec::new();
    combinations(&heavy, max_size, |roots| {
        let closed = descendants(cond, roots);
        let mut w: u64 = closed.iter().map(|&u| cond.scc_weight[u]).sum();
        if w > k {
            return;
        }
        let mut taken = vec![false; s];
        for &u in &closed {
            taken[u] = true;
        }
        loop {
            let next = (0..s).find(|&b| {
                !taken[b]
                    && !cat.heavy[b]
                    && w + cond.scc_weight[b] <= k
                    && cond.dag_adjacency[b].iter().all(|&x| taken[x])
            });
            match next {
                Some(b) => {
                    taken[b] = true;
                    w += cond.scc_weight[b];
                }
                None => break,
            }
        }
        trace.push(format!("A' = {roots:?}: weight {w}"));
        if best.as_ref().is_none_or(|(bw, _)| w > *bw) {
            best = Some((w, taken));
        }
    });
    let chosen = best.map_or_else(VertexSet::empty, |(_, taken)| {
        let ids: Vec<usize> = (0..s).filter(|&u| taken[u]).collect();
        cond.vertices_of(&ids)
    });
    Ok(Solution::new(
        instance,
        chosen,
        Algorithm::UniformDirectedAllPtas,
        Guarantee::OneMinusEps(eps),
    )
    .with_trace(trace))
}

/// Exact uniform undirected all-neighbour knapsack via subset sum over
/// component sizes.
pub fn uniform_undirected_alln(instance: &Instance, k: u64) -> Result<Solution> {
    if instance.is_directed() {
        return Err(Error::Unsupported(
            "uuall-subsetsum requires an undirected instance".into(),
        ));
    }
    if !instance.is_uniform() {
        return Err(Error::Unsupported(
            "uuall-subsetsum requires unit weights and profits".into(),
        ));
    }
    let comps = connected_components(instance)?;
    let sizes: Vec<u64> = comps.iter().map(|c| c.len() as u64).collect();
    let (picked, _) = subset_sum_max(&sizes, k);
    let chosen = picked.iter().flat_map(|&i| comps[i].iter()).collect();
    Ok(Solution::new(
        instance,
        chosen,
        Algorithm::UniformUndirectedAllSubsetSum,
        Guarantee::Exact,
    ))
}

/// FPTAS for undirected all-neighbour knapsack: one knapsack item per
/// connected component.
pub fn general_undirected_alln_fptas(
    instance: &Instance,
    k: u64,
    eps: Epsilon,
) -> Result<Solution> {
    if instance.is_directed() {
        return Err(Error::Unsupported(
            "guall-fptas requires an undirected instance".into(),
        ));
    }
    let comps = connected_components(instance)?;
    let items: Vec<Item> = comps
        .iter()
        .enumerate()
        .map(|(i, c)| Item::new(i, instance.weight_of(c), instance.profit_of(c)))
        .collect();
    // zero-profit components are free to include when they fit; the FPTAS
    // ignores them, which does not affect the profit
    let sel = knapsack_fptas(&items, k, eps)?;
    let chosen = sel.ids.iter().flat_map(|&i| comps[i].iter()).collect();
    Ok(Solution::new(
        instance,
        chosen,
        Algorithm::GeneralUndirectedAllFptas,
        Guarantee::OneMinusEps(eps),
    ))
}
