//! Exhaustive optimizers used as ground truth and as the solver of last
//! resort for variants without an approximation algorithm.

use crate::error::{Error, Result};
use crate::graph::{condense, connected_components, Instance, VertexSet};
use crate::solution::{Algorithm, Guarantee, Solution};

/// Default vertex-count limit for exhaustive search.
pub const DEFAULT_ORACLE_LIMIT: usize = 22;

fn check_scale(instance: &Instance, limit: usize) -> Result<()> {
    if instance.n() > limit {
        return Err(Error::OracleScaleExceeded {
            n: instance.n(),
            limit,
        });
    }
    Ok(())
}

/// Incumbent under the (profit desc, weight asc, lexicographic) order.
#[derive(Debug, Default)]
struct Best {
    profit: u64,
    weight: u64,
    set: Vec<usize>,
    found: bool,
}

impl Best {
    fn offer(&mut self, profit: u64, weight: u64, set: &[usize]) {
        let better = !self.found
            || profit > self.profit
            || (profit == self.profit
                && (weight < self.weight || (weight == self.weight && set < self.set.as_slice())));
        if better {
            self.profit = profit;
            self.weight = weight;
            self.set = set.to_vec();
            self.found = true;
        }
    }
}

/// `check_at[v]` lists the vertices whose 1-neighbour condition is fully
/// decided once vertex `v` has been decided.
fn check_schedule(instance: &Instance) -> Vec<Vec<usize>> {
    let n = instance.n();
    let mut at = vec![Vec::new(); n];
    for u in 0..n {
        if let Some(&last) = instance.neighbours(u).last() {
            at[last.max(u)].push(u);
        }
    }
    at
}

struct OneSearch<'a> {
    instance: &'a Instance,
    budget: u64,
    check_at: Vec<Vec<usize>>,
    suffix_profit: Vec<u64>,
    included: Vec<bool>,
    set: Vec<usize>,
    best: Best,
}

impl OneSearch<'_> {
    fn satisfied(&self, u: usize) -> bool {
        !self.included[u]
            || self
                .instance
                .neighbours(u)
                .iter()
                .any(|&x| self.included[x])
    }

    fn run(&mut self, v: usize, weight: u64, profit: u64) {
        if self.best.found && profit + self.suffix_profit[v] < self.best.profit {
            return;
        }
        if v == self.instance.n() {
            self.best.offer(profit, weight, &self.set);
            return;
        }
        let (wv, pv) = (self.instance.weight(v), self.instance.profit(v));
        if weight + wv <= self.budget {
            self.included[v] = true;
            self.set.push(v);
            if self.check_at[v].iter().all(|&u| self.satisfied(u)) {
                self.run(v + 1, weight + wv, profit + pv);
            }
            self.set.pop();
            self.included[v] = false;
        }
        if self.check_at[v].iter().all(|&u| self.satisfied(u)) {
            self.run(v + 1, weight, profit);
        }
    }
}

/// Maximum-profit 1-neighbour set of weight ≤ `k`, by pruned exhaustive
/// search. Ties: smaller weight, then lexicographically smallest.
pub fn exact_1n(instance: &Instance, k: u64) -> Result<Solution> {
    exact_1n_with_limit(instance, k, DEFAULT_ORACLE_LIMIT)
}

pub fn exact_1n_with_limit(instance: &Instance, k: u64, limit: usize) -> Result<Solution> {
    check_scale(instance, limit)?;
    let n = instance.n();
    let mut suffix_profit = vec![0; n + 1];
    for v in (0..n).rev() {
        suffix_profit[v] = suffix_profit[v + 1] + instance.profit(v);
    }
    let mut search = OneSearch {
        instance,
        budget: k,
        check_at: check_schedule(instance),
        suffix_profit,
        included: vec![false; n],
        set: Vec::new(),
        best: Best::default(),
    };
    search.run(0, 0, 0);
    Ok(Solution::new(
        instance,
        VertexSet::from_unsorted(search.best.set),
        Algorithm::ExactOne,
        Guarantee::Exact,
    ))
}

/// Largest 1-neighbour set with at most `k` vertices, lexicographically
/// smallest among ties. Intended for uniform instances with small `k`; the
/// work is bounded by the number of vertex subsets of size ≤ `k`.
pub fn max_size_1n(instance: &Instance, k: u64) -> VertexSet {
    let n = instance.n();
    let check_at = check_schedule(instance);
    let top = (k.min(n as u64)) as usize;

    fn first_of_size(
        instance: &Instance,
        check_at: &[Vec<usize>],
        included: &mut Vec<bool>,
        set: &mut Vec<usize>,
        v: usize,
        target: usize,
    ) -> bool {
        let n = instance.n();
        if set.len() == target {
            // the rest stays out; remaining checks must still hold
            let ok = (v..n).all(|x| {
                check_at[x]
                    .iter()
                    .all(|&u| !included[u] || instance.neighbours(u).iter().any(|&y| included[y]))
            });
            return ok;
        }
        if set.len() + (n - v) < target {
            return false;
        }
        let sat = |included: &Vec<bool>| {
            check_at[v]
                .iter()
                .all(|&u| !included[u] || instance.neighbours(u).iter().any(|&y| included[y]))
        };
        included[v] = true;
        set.push(v);
        if sat(included) && first_of_size(instance, check_at, included, set, v + 1, target) {
            return true;
        }
        set.pop();
        included[v] = false;
        sat(included) && first_of_size(instance, check_at, included, set, v + 1, target)
    }

    for target in (0..=top).rev() {
        let mut included = vec![false; n];
        let mut set = Vec::new();
        if first_of_size(instance, &check_at, &mut included, &mut set, 0, target) {
            return VertexSet::from_unsorted(set);
        }
    }
    VertexSet::empty()
}

/// Maximum-profit all-neighbour set of weight ≤ `k`.
///
/// Feasible sets are exactly the successor-closed unions of SCCs (of
/// connected components when undirected), so the search runs over blocks in
/// sinks-first order and only admits a block once all its successors are in.
pub fn exact_alln(instance: &Instance, k: u64) -> Result<Solution> {
    exact_alln_with_limit(instance, k, DEFAULT_ORACLE_LIMIT)
}

pub fn exact_alln_with_limit(instance: &Instance, k: u64, limit: usize) -> Result<Solution> {
    check_scale(instance, limit)?;
    let (blocks, succ, order): (Vec<VertexSet>, Vec<Vec<usize>>, Vec<usize>) =
        if instance.is_directed() {
            let cond = condense(instance)?;
            let order = cond.sinks_first_order();
            (cond.scc_vertices, cond.dag_adjacency, order)
        } else {
            let comps = connected_components(instance)?;
            let s = comps.len();
            (comps, vec![Vec::new(); s], (0..s).collect())
        };
    let weight: Vec<u64> = blocks.iter().map(|b| instance.weight_of(b)).collect();
    let profit: Vec<u64> = blocks.iter().map(|b| instance.profit_of(b)).collect();
    let mut suffix = vec![0; order.len() + 1];
    for i in (0..order.len()).rev() {
        suffix[i] = suffix[i + 1] + profit[order[i]];
    }

    struct Ctx<'a> {
        blocks: &'a [VertexSet],
        succ: &'a [Vec<usize>],
        order: &'a [usize],
        weight: &'a [u64],
        profit: &'a [u64],
        suffix: &'a [u64],
        budget: u64,
        taken: Vec<bool>,
        best: Best,
    }

    fn go(ctx: &mut Ctx<'_>, i: usize, w: u64, p: u64) {
        if ctx.best.found && p + ctx.suffix[i] < ctx.best.profit {
            return;
        }
        if i == ctx.order.len() {
            let set: VertexSet = (0..ctx.blocks.len())
                .filter(|&b| ctx.taken[b])
                .flat_map(|b| ctx.blocks[b].iter())
                .collect();
            ctx.best.offer(p, w, set.as_slice());
            return;
        }
        let b = ctx.order[i];
        if w + ctx.weight[b] <= ctx.budget && ctx.succ[b].iter().all(|&s| ctx.taken[s]) {
            ctx.taken[b] = true;
            go(ctx, i + 1, w + ctx.weight[b], p + ctx.profit[b]);
            ctx.taken[b] = false;
        }
        go(ctx, i + 1, w, p);
    }

    let mut ctx = Ctx {
        blocks: &blocks,
        succ: &succ,
        order: &order,
        weight: &weight,
        profit: &profit,
        suffix: &suffix,
        budget: k,
        taken: vec![false; blocks.len()],
        best: Best::default(),
    };
    go(&mut ctx, 0, 0, 0);
    Ok(Solution::new(
        instance,
        VertexSet::from_unsorted(ctx.best.set),
        Algorithm::ExactAll,
        Guarantee::Exact,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_tie_break() {
        let g =
            Instance::new(false, vec![1, 1, 1], vec![1, 0, 1], vec![(0, 1), (1, 2)], 0).unwrap();
        let s = exact_1n(&g, 2).unwrap();
        assert_eq!(s.total_profit, 1);
        assert_eq!(s.chosen.as_slice(), &[0, 1]);
    }

    #[test]
    fn directed_triangle_needs_everything() {
        let g = Instance::uniform(true, 3, vec![(0, 1), (1, 2), (2, 0)], 0).unwrap();
        assert!(exact_1n(&g, 2).unwrap().chosen.is_empty());
        assert_eq!(exact_1n(&g, 3).unwrap().chosen.len(), 3);
        assert!(exact_1n(&g, 0).unwrap().chosen.is_empty());
    }

    #[test]
    fn scale_limit() {
        let g = Instance::uniform(false, 30, vec![], 0).unwrap();
        assert!(matches!(
            exact_1n(&g, 3),
            Err(Error::OracleScaleExceeded { n: 30, limit: 22 })
        ));
        assert!(exact_alln(&g, 3).is_err());
    }

    #[test]
    fn alln_examples() {
        let arc = Instance::uniform(true, 2, vec![(0, 1)], 0).unwrap();
        assert_eq!(exact_alln(&arc, 1).unwrap().chosen.as_slice(), &[1]);
        // components [2, 3], k = 4
        let g = Instance::uniform(false, 5, vec![(0, 1), (2, 3), (3, 4)], 0).unwrap();
        assert_eq!(exact_alln(&g, 4).unwrap().total_profit, 3);
    }

    #[test]
    fn max_size_matches_exact_on_uniform() {
        let g = Instance::uniform(true, 4, vec![(0, 1), (2, 1), (3, 0)], 0).unwrap();
        for k in 0..=5 {
            let a = max_size_1n(&g, k);
            let b = exact_1n(&g, k).unwrap();
            assert_eq!(a.len(), b.chosen.len());
        }
    }
}
