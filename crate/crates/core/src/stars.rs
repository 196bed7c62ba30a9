//! Stars as the viable family of undirected graphs: the star partition and
//! the best-profit / best-ratio star oracles.

use crate::error::{Error, Result};
use crate::graph::{bfs_order, Instance, VertexSet};
use crate::knapsack::{best_ratio_extension, knapsack_fptas, Item, Selection};
use crate::numeric::{Epsilon, Ratio};

/// A center vertex plus a (possibly empty) set of adjacent leaves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Star {
    pub center: usize,
    pub leaves: VertexSet,
}

impl Star {
    pub fn singleton(center: usize) -> Self {
        Self {
            center,
            leaves: VertexSet::empty(),
        }
    }

    pub fn vertices(&self) -> VertexSet {
        self.leaves
            .union(&VertexSet::from_unsorted(vec![self.center]))
    }

    pub fn weight(&self, instance: &Instance) -> u64 {
        instance.weight(self.center) + instance.weight_of(&self.leaves)
    }

    pub fn profit(&self, instance: &Instance) -> u64 {
        instance.profit(self.center) + instance.profit_of(&self.leaves)
    }

    pub fn ratio(&self, instance: &Instance) -> Ratio {
        Ratio::new(self.profit(instance), self.weight(instance))
    }

    /// Leaves adjacent to the center, and empty only for an isolated center.
    pub fn is_valid_in(&self, instance: &Instance) -> bool {
        let adj = instance.neighbours(self.center);
        let leaves_ok = self.leaves.iter().all(|l| adj.binary_search(&l).is_ok());
        leaves_ok && (self.leaves.is_empty() == adj.is_empty())
    }
}

/// Partition of the vertex set into stars, each a 1-neighbour set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarPartition {
    pub stars: Vec<Star>,
}

/// Partitions an undirected graph into 1-neighbour stars.
///
/// Each component gets a breadth-first tree rooted at its smallest vertex.
/// Vertices are matched in reverse breadth-first order: an unassigned
/// vertex joins its parent's star, opening one at the parent if needed. A
/// root left over joins the star of its smallest child, which is then
/// necessarily a center.
pub fn star_partition(instance: &Instance) -> Result<StarPartition> {
    if instance.is_directed() {
        return Err(Error::Unsupported(
            "star partitions are defined for undirected instances".into(),
        ));
    }
    let n = instance.n();
    const NONE: usize = usize::MAX;
    // owner[v] = center of the star containing v
    let mut owner = vec![NONE; n];
    let mut parent = vec![NONE; n];
    let mut visited = vec![false; n];

    for root in 0..n {
        if visited[root] {
            continue;
        }
        let order = bfs_order(instance, root, None);
        for &v in &order {
            visited[v] = true;
        }
        for &v in &order {
            for &u in instance.neighbours(v) {
                if u != root && parent[u] == NONE {
                    parent[u] = v;
                }
            }
        }
        // bfs_order discovers children from already ordered vertices, so the
        // first discoverer recorded above is the tree parent.
        if order.len() == 1 {
            owner[root] = root;
            continue;
        }
        for &v in order.iter().rev() {
            if v == root || owner[v] != NONE {
                continue;
            }
            let p = parent[v];
            if owner[p] == NONE {
                owner[p] = p;
            }
            debug_assert_eq!(owner[p], p, "parent is processed after its children");
            owner[v] = p;
        }
        if owner[root] == NONE {
            let child = order
                .iter()
                .copied()
                .filter(|&v| v != root && parent[v] == root)
                .min()
                .expect("non-trivial component root has a child");
            owner[root] = child;
        }
    }

    let mut leaves: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut is_center = vec![false; n];
    for (v, &c) in owner.iter().enumerate() {
        is_center[c] = true;
        if c != v {
            leaves[c].push(v);
        }
    }
    let stars = (0..n)
        .filter(|&c| is_center[c])
        .map(|c| Star {
            center: c,
            leaves: VertexSet::from_unsorted(std::mem::take(&mut leaves[c])),
        })
        .collect();
    Ok(StarPartition { stars })
}

fn check_oracle_input(instance: &Instance) -> Result<()> {
    if instance.is_directed() {
        return Err(Error::Unsupported(
            "star oracles are only available for undirected instances".into(),
        ));
    }
    Ok(())
}

fn neighbour_items(instance: &Instance, v: usize) -> Vec<Item> {
    instance
        .neighbours(v)
        .iter()
        .map(|&u| Item::new(u, instance.weight(u), instance.profit(u)))
        .collect()
}

/// Lightest neighbour fitting in `room`, smallest id on ties.
fn lightest_leaf(instance: &Instance, v: usize, room: u64) -> Option<usize> {
    instance
        .neighbours(v)
        .iter()
        .copied()
        .filter(|&u| instance.weight(u) <= room)
        .min_by_key(|&u| (instance.weight(u), u))
}

/// Viable star of weight ≤ `capacity` with profit within `1−ε` of the best.
///
/// Ties: higher profit, then lower weight, then smaller center.
pub fn best_profit_viable_star(
    instance: &Instance,
    capacity: u64,
    eps: Epsilon,
) -> Result<Option<Star>> {
    check_oracle_input(instance)?;
    let mut best: Option<(u64, u64, Star)> = None;
    for v in 0..instance.n() {
        let wv = instance.weight(v);
        if wv > capacity {
            continue;
        }
        let room = capacity - wv;
        let leaves = if instance.degree(v) == 0 {
            VertexSet::empty()
        } else {
            let sel: Selection = knapsack_fptas(&neighbour_items(instance, v), room, eps)?;
            if sel.ids.is_empty() {
                // zero-profit neighbourhood: any single fitting leaf is optimal
                match lightest_leaf(instance, v, room) {
                    Some(u) => VertexSet::from_unsorted(vec![u]),
                    None => continue,
                }
            } else {
                VertexSet::from_unsorted(sel.ids)
            }
        };
        let star = Star { center: v, leaves };
        let (p, w) = (star.profit(instance), star.weight(instance));
        if best
            .as_ref()
            .is_none_or(|(bp, bw, _)| p > *bp || (p == *bp && w < *bw))
        {
            best = Some((p, w, star));
        }
    }
    Ok(best.map(|(_, _, s)| s))
}

/// Viable star of weight ≤ `capacity` with profit-to-weight ratio within
/// `1−ε` of the best, under the cross-multiplication order of [`Ratio`].
///
/// For each center the leaf subset is chosen against the full star ratio,
/// center included. Ties: higher ratio, then higher profit, then smaller
/// center.
pub fn best_ratio_viable_star(
    instance: &Instance,
    capacity: u64,
    eps: Epsilon,
) -> Result<Option<Star>> {
    check_oracle_input(instance)?;
    let mut best: Option<(Ratio, u64, Star)> = None;
    for v in 0..instance.n() {
        let (wv, pv) = (instance.weight(v), instance.profit(v));
        if wv > capacity {
            continue;
        }
        let star = if instance.degree(v) == 0 {
            Star::singleton(v)
        } else {
            match best_ratio_extension(&neighbour_items(instance, v), capacity - wv, eps, pv, wv)? {
                Some(sel) => Star {
                    center: v,
                    leaves: VertexSet::from_unsorted(sel.ids),
                },
                None => continue,
            }
        };
        let (r, p) = (star.ratio(instance), star.profit(instance));
        if best
            .as_ref()
            .is_none_or(|(br, bp, _)| r > *br || (r == *br && p > *bp))
        {
            best = Some((r, p, star));
        }
    }
    Ok(best.map(|(_, _, s)| s))
}
