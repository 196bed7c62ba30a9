mod common;

use common::*;
use nkp_core::all_neighbour::is_closure_union;
use nkp_core::graph::{
    condense, connected_components, descendants, in_boundary, is_all_neighbour_set,
    is_one_neighbour_set, smallest_cycle,
};
use nkp_core::{Instance, VertexSet};
use proptest::prelude::*;

fn arb_instance(max_n: usize, directed: bool) -> impl Strategy<Value = Instance> {
    (1..=max_n, 0.0..0.6f64, any::<u64>())
        .prop_map(move |(n, p, seed)| random_instance(seed, n, p, directed, 5, 5, 0))
}

/// Length of the shortest directed cycle through vertices of `scc`, by
/// breadth-first search from every vertex.
fn brute_girth(inst: &Instance, scc: &[usize]) -> usize {
    if scc.len() == 1 {
        return 1;
    }
    let inside = |v: usize| scc.contains(&v);
    let mut best = usize::MAX;
    for &s in scc {
        let mut dist = vec![usize::MAX; inst.n()];
        dist[s] = 0;
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for &y in inst.neighbours(x) {
                if y == s {
                    best = best.min(dist[x] + 1);
                }
                if inside(y) && dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
    }
    best
}

fn reachable(inst: &Instance, from: usize) -> Vec<bool> {
    let mut seen = vec![false; inst.n()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(x) = stack.pop() {
        for &y in inst.neighbours(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

proptest! {
    #[test]
    fn condensation_partitions_and_is_acyclic(inst in arb_instance(14, true)) {
        let cond = condense(&inst).unwrap();
        let mut count = vec![0; inst.n()];
        for (id, scc) in cond.scc_vertices.iter().enumerate() {
            for v in scc.iter() {
                count[v] += 1;
                prop_assert_eq!(cond.membership[v], id);
            }
        }
        prop_assert!(count.iter().all(|&c| c == 1));
        prop_assert_eq!(cond.sinks_first_order().len(), cond.scc_count());
        // maximality: same SCC iff mutually reachable
        let reach: Vec<Vec<bool>> = (0..inst.n()).map(|v| reachable(&inst, v)).collect();
        for (u, ru) in reach.iter().enumerate() {
            for (v, rv) in reach.iter().enumerate() {
                let same = cond.membership[u] == cond.membership[v];
                prop_assert_eq!(same, ru[v] && rv[u]);
            }
        }
        // ids ordered by smallest member
        let mins: Vec<usize> = cond.scc_vertices.iter().map(|s| s.as_slice()[0]).collect();
        prop_assert!(mins.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn smallest_cycle_is_a_shortest_cycle(inst in arb_instance(8, true)) {
        let cond = condense(&inst).unwrap();
        for (id, scc) in cond.scc_vertices.iter().enumerate() {
            let cyc = smallest_cycle(&inst, scc).unwrap();
            prop_assert_eq!(cyc.len(), brute_girth(&inst, scc.as_slice()));
            prop_assert_eq!(cyc.len(), cond.smallest_cycle_len[id]);
            if cyc.len() > 1 {
                for i in 0..cyc.len() {
                    let (a, b) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                    prop_assert!(inst.neighbours(a).contains(&b));
                }
                let mut sorted = cyc.clone();
                sorted.sort_unstable();
                sorted.dedup();
                prop_assert_eq!(sorted.len(), cyc.len());
            }
        }
    }

    #[test]
    fn in_boundary_matches_definition(inst in arb_instance(12, true), mask in any::<u16>()) {
        let set: VertexSet = (0..inst.n()).filter(|&v| mask >> v & 1 == 1).collect();
        let b = in_boundary(&inst, &set);
        for u in 0..inst.n() {
            let expected = !set.contains(u) && inst.neighbours(u).iter().any(|&v| set.contains(v));
            prop_assert_eq!(b.contains(u), expected);
        }
    }

    #[test]
    fn components_are_sorted_and_cover(inst in arb_instance(20, false)) {
        let comps = connected_components(&inst).unwrap();
        prop_assert!(comps.windows(2).all(|w| w[0].len() >= w[1].len()));
        let mut count = vec![0; inst.n()];
        for c in &comps {
            for v in c.iter() {
                count[v] += 1;
            }
        }
        prop_assert!(count.iter().all(|&c| c == 1));
        for &(u, v) in inst.edges() {
            let cu = comps.iter().position(|c| c.contains(u));
            let cv = comps.iter().position(|c| c.contains(v));
            prop_assert_eq!(cu, cv);
        }
    }

    #[test]
    fn all_neighbour_sets_are_closure_unions(inst in arb_instance(10, true)) {
        for mask in 0u32..1 << inst.n() {
            let set: VertexSet = (0..inst.n()).filter(|&v| mask >> v & 1 == 1).collect();
            let inside = set.mask(inst.n());
            prop_assert_eq!(is_all_neighbour_set(&inst, &set), brute_all_feasible(&inst, &inside));
            prop_assert_eq!(is_one_neighbour_set(&inst, &set), brute_one_feasible(&inst, &inside));
            if is_all_neighbour_set(&inst, &set) {
                prop_assert!(is_closure_union(&inst, &set));
            }
        }
    }

    #[test]
    fn descendants_are_reachable_sccs(inst in arb_instance(12, true), root in 0usize..12) {
        let cond = condense(&inst).unwrap();
        let root = root % cond.scc_count();
        let d = descendants(&cond, &[root]);
        let from = cond.scc_vertices[root].as_slice()[0];
        let reach = reachable(&inst, from);
        let expected: Vec<usize> = {
            let mut ids: Vec<usize> = (0..inst.n()).filter(|&v| reach[v]).map(|v| cond.membership[v]).collect();
            ids.sort_unstable();
            ids.dedup();
            ids
        };
        prop_assert_eq!(d, expected);
    }
}

#[test]
fn smallest_cycle_examples() {
    // a→b→c→a plus c→d→a
    let g = Instance::uniform(true, 4, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 0)], 0).unwrap();
    let scc = VertexSet::from_unsorted(vec![0, 1, 2, 3]);
    assert_eq!(smallest_cycle(&g, &scc).unwrap(), vec![0, 1, 2]);
    assert!(smallest_cycle(&g, &VertexSet::from_unsorted(vec![0, 1])).is_err());
}

#[test]
fn descendants_examples() {
    let diamond = Instance::uniform(true, 4, vec![(0, 1), (0, 2), (1, 3), (2, 3)], 0).unwrap();
    let cond = condense(&diamond).unwrap();
    assert_eq!(descendants(&cond, &[1, 2]), vec![1, 2, 3]);
    assert!(descendants(&cond, &[]).is_empty());
}
