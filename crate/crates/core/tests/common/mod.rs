//! Brute-force oracles and instance builders shared by the integration tests.
#![allow(dead_code)]

use nkp_core::generators::{gen_random, RandomParams};
use nkp_core::knapsack::Item;
use nkp_core::stars::Star;
use nkp_core::{Epsilon, Instance, VertexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn eps(x: f64) -> Epsilon {
    Epsilon::new(x).unwrap()
}

pub fn random_instance(
    seed: u64,
    n: usize,
    edge_prob: f64,
    directed: bool,
    w_max: u64,
    p_max: u64,
    budget: u64,
) -> Instance {
    gen_random(&RandomParams {
        n,
        edge_prob,
        directed,
        w_max,
        p_max,
        budget,
        seed,
    })
    .unwrap()
}

/// Random instance with unit weights and profits.
pub fn random_uniform(seed: u64, n: usize, edge_prob: f64, directed: bool) -> Instance {
    let base = random_instance(seed, n, edge_prob, directed, 0, 0, 0);
    Instance::uniform(directed, n, base.edges().to_vec(), 0).unwrap()
}

/// Random instance whose weights equal its profits.
pub fn random_weight_equals_profit(seed: u64, n: usize, edge_prob: f64, w_max: u64) -> Instance {
    let base = random_instance(seed, n, edge_prob, true, w_max, 0, 0);
    let mut r = rng(seed ^ 0x9e37_79b9);
    let w: Vec<u64> = (0..n).map(|_| r.gen_range(0..=w_max)).collect();
    Instance::new(true, w.clone(), w, base.edges().to_vec(), 0).unwrap()
}

/// Undirected instance with every degree at most `max_degree`.
pub fn random_bounded_degree(
    seed: u64,
    n: usize,
    edge_prob: f64,
    max_degree: usize,
    w_max: u64,
    p_max: u64,
) -> Instance {
    let base = random_instance(seed, n, edge_prob, false, w_max, p_max, 0);
    let mut deg = vec![0; n];
    let edges: Vec<(usize, usize)> = base
        .edges()
        .iter()
        .copied()
        .filter(|&(u, v)| {
            if deg[u] < max_degree && deg[v] < max_degree {
                deg[u] += 1;
                deg[v] += 1;
                true
            } else {
                false
            }
        })
        .collect();
    Instance::new(
        false,
        base.weights().to_vec(),
        base.profits().to_vec(),
        edges,
        0,
    )
    .unwrap()
}

fn mask_set(mask: u64, n: usize) -> Vec<bool> {
    (0..n).map(|v| mask >> v & 1 == 1).collect()
}

pub fn brute_one_feasible(inst: &Instance, inside: &[bool]) -> bool {
    (0..inst.n()).all(|v| {
        !inside[v] || inst.neighbours(v).is_empty() || inst.neighbours(v).iter().any(|&u| inside[u])
    })
}

pub fn brute_all_feasible(inst: &Instance, inside: &[bool]) -> bool {
    (0..inst.n()).all(|v| !inside[v] || inst.neighbours(v).iter().all(|&u| inside[u]))
}

fn brute_best(inst: &Instance, k: u64, feasible: fn(&Instance, &[bool]) -> bool) -> u64 {
    let n = inst.n();
    assert!(n <= 20, "brute force limited to 20 vertices");
    (0u64..1 << n)
        .filter_map(|mask| {
            let inside = mask_set(mask, n);
            let w: u64 = (0..n).filter(|&v| inside[v]).map(|v| inst.weight(v)).sum();
            (w <= k && feasible(inst, &inside))
                .then(|| (0..n).filter(|&v| inside[v]).map(|v| inst.profit(v)).sum())
        })
        .max()
        .unwrap_or(0)
}

/// Best 1-neighbour profit by full enumeration.
pub fn brute_one(inst: &Instance, k: u64) -> u64 {
    brute_best(inst, k, brute_one_feasible)
}

/// Best all-neighbour profit by full enumeration.
pub fn brute_all(inst: &Instance, k: u64) -> u64 {
    brute_best(inst, k, brute_all_feasible)
}

/// `(profit, weight)` of every viable star: a center with a non-empty
/// subset of its neighbours, or an isolated vertex alone.
pub fn all_viable_stars(inst: &Instance) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for v in 0..inst.n() {
        let nb = inst.neighbours(v);
        if nb.is_empty() {
            out.push((inst.profit(v), inst.weight(v)));
            continue;
        }
        for mask in 1u32..1 << nb.len() {
            let (mut p, mut w) = (inst.profit(v), inst.weight(v));
            for (i, &u) in nb.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    p += inst.profit(u);
                    w += inst.weight(u);
                }
            }
            out.push((p, w));
        }
    }
    out
}

/// `a ≥ (1−ε)·b` for profits, exactly.
pub fn profit_within(a: u64, b: u64, e: Epsilon) -> bool {
    let (num, den) = (e.numerator() as u128, e.denominator() as u128);
    a as u128 * den >= (den - num) * b as u128
}

/// `ratio(a) ≥ (1−ε)·ratio(b)` for `(profit, weight)` pairs, compared by
/// cross-multiplication. Zero-weight positive-profit sets have infinite
/// ratio; any ratio is within a factor of a zero ratio.
pub fn ratio_within(a: (u64, u64), b: (u64, u64), e: Epsilon) -> bool {
    let (num, den) = (e.numerator() as u128, e.denominator() as u128);
    let inf = |r: (u64, u64)| r.1 == 0 && r.0 > 0;
    if inf(b) {
        return inf(a);
    }
    if b.0 == 0 || inf(a) {
        return true;
    }
    a.0 as u128 * b.1 as u128 * den >= (den - num) * b.0 as u128 * a.1 as u128
}

/// Exact ratio comparison `a ≥ b` with the zero-weight conventions.
pub fn ratio_ge(a: (u64, u64), b: (u64, u64)) -> bool {
    nkp_core::Ratio::new(a.0, a.1) >= nkp_core::Ratio::new(b.0, b.1)
}

pub fn star_is_valid(inst: &Instance, star: &Star) -> bool {
    let c = star.center;
    star.leaves
        .iter()
        .all(|l| l != c && inst.neighbours(c).contains(&l))
        && (!star.leaves.is_empty() || inst.neighbours(c).is_empty())
}

pub fn items_from(pairs: &[(u64, u64)]) -> Vec<Item> {
    pairs
        .iter()
        .enumerate()
        .map(|(i, &(w, p))| Item::new(i, w, p))
        .collect()
}

/// Best non-empty subset ratio `(profit, weight)` by enumeration, or `None`
/// when no single item fits.
pub fn brute_best_ratio(items: &[Item], cap: u64) -> Option<(u64, u64)> {
    let n = items.len();
    let mut best: Option<(u64, u64)> = None;
    for mask in 1u32..1 << n {
        let (mut p, mut w) = (0, 0);
        for (i, it) in items.iter().enumerate() {
            if mask >> i & 1 == 1 {
                p += it.profit;
                w += it.weight;
            }
        }
        if w <= cap && best.is_none_or(|b| !ratio_ge(b, (p, w))) {
            best = Some((p, w));
        }
    }
    best
}

pub fn brute_knapsack(items: &[Item], cap: u64) -> u64 {
    let n = items.len();
    (0u32..1 << n)
        .filter_map(|mask| {
            let (mut p, mut w) = (0, 0);
            for (i, it) in items.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    p += it.profit;
                    w += it.weight;
                }
            }
            (w <= cap).then_some(p)
        })
        .max()
        .unwrap_or(0)
}

pub fn vs(ids: &[usize]) -> VertexSet {
    VertexSet::from_unsorted(ids.to_vec())
}
