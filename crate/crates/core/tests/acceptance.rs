//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use nkp_core::all_neighbour::{
    general_undirected_alln_fptas, is_closure_union, uniform_directed_alln_ptas,
    uniform_undirected_alln,
};
use nkp_core::exact::{exact_1n, exact_1n_with_limit, exact_alln};
use nkp_core::generators::{gen_max_k_cover, gen_set_cover_cycles, SetSystem};
use nkp_core::graph::{is_all_neighbour_set, is_one_neighbour_set};
use nkp_core::io::serialize;
use nkp_core::knapsack::{knapsack_exact, knapsack_fptas, ratio_fptas, Item};
use nkp_core::one_neighbour::{
    greedy_1_neighbour, uniform_directed_1n_ptas_with_report, uniform_undirected_1n,
};
use nkp_core::stars::{best_profit_viable_star, best_ratio_viable_star, star_partition};
use nkp_core::{Instance, Solution};
use rand::Rng;

/// Failure details collected by a criterion; empty means PASS.
#[derive(Default)]
struct Outcome {
    cases: usize,
    failures: Vec<String>,
}

impl Outcome {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Closure-union tally across every all-neighbour output.
#[derive(Default)]
struct ClosureTally(Outcome);

impl ClosureTally {
    fn record(&mut self, inst: &Instance, sol: &Solution, label: &str) {
        let ok = is_all_neighbour_set(inst, &sol.chosen) && is_closure_union(inst, &sol.chosen);
        self.0.check(ok, || {
            format!(
                "{label}: {:?} is not a union of closures",
                sol.chosen.as_slice()
            )
        });
    }
}

fn report(id: usize, name: &str, out: &Outcome, elapsed: Duration, limit: Duration) -> bool {
    let in_time = elapsed <= limit;
    let pass = out.failures.is_empty() && in_time && out.cases > 0;
    println!(
        "{} {id}. {name}: {} cases, {} failures, {:.1}s (limit {}s)",
        if pass { "PASS" } else { "FAIL" },
        out.cases,
        out.failures.len(),
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for f in out.failures.iter().take(5) {
        println!("    {f}");
    }
    pass
}

fn exactness(closures: &mut ClosureTally) -> Outcome {
    let mut out = Outcome::default();
    let mut instances = 0;
    for seed in 0..520u64 {
        let mut r = rng(seed);
        let n = r.gen_range(1..=12);
        let prob = r.gen_range(0.05..0.6);
        let inst = random_uniform(seed, n, prob, false);
        instances += 1;
        for k in 0..=(n as u64 + 1) {
            let a = uniform_undirected_1n(&inst, k).unwrap();
            let b = exact_1n(&inst, k).unwrap();
            out.check(
                a.total_profit == b.total_profit
                    && is_one_neighbour_set(&inst, &a.chosen)
                    && a.total_weight <= k,
                || {
                    format!(
                        "uu1n seed {seed} k {k}: {} vs {}",
                        a.total_profit, b.total_profit
                    )
                },
            );
            let c = uniform_undirected_alln(&inst, k).unwrap();
            let d = exact_alln(&inst, k).unwrap();
            out.check(
                c.total_profit == d.total_profit && c.total_weight <= k,
                || {
                    format!(
                        "uuall seed {seed} k {k}: {} vs {}",
                        c.total_profit, d.total_profit
                    )
                },
            );
            closures.record(&inst, &c, "uuall");
            closures.record(&inst, &d, "exact-all");
        }
    }
    assert!(instances >= 500);
    out
}

fn greedy() -> Outcome {
    let mut out = Outcome::default();
    let e = eps(0.1);
    for seed in 0..320u64 {
        let mut r = rng(1000 + seed);
        let n = r.gen_range(1..=14);
        let prob = r.gen_range(0.05..0.5);
        let mut inst = random_instance(1000 + seed, n, prob, false, 8, 8, 0);
        let total: u64 = inst.weights().iter().sum();
        let k = r.gen_range(0..=total);
        inst = inst.with_budget(k).unwrap();
        let sol = greedy_1_neighbour(&inst, k, e).unwrap();
        let opt = exact_1n(&inst, k).unwrap().total_profit;
        out.check(
            sol.total_profit * 1000 >= 267 * opt
                && is_one_neighbour_set(&inst, &sol.chosen)
                && sol.total_weight <= k,
            || {
                format!(
                    "seed {seed} k {k}: greedy {} vs OPT {opt}",
                    sol.total_profit
                )
            },
        );
    }
    out
}

fn ptas(closures: &mut ClosureTally) -> Outcome {
    let mut out = Outcome::default();
    for seed in 0..320u64 {
        let mut r = rng(5000 + seed);
        let n = r.gen_range(1..=12);
        let prob = r.gen_range(0.05..0.45);
        let inst = random_uniform(5000 + seed, n, prob, true);
        for e in [eps(0.25), eps(0.5)] {
            let (num, den) = (e.numerator(), e.denominator());
            for k in 0..=(n as u64) {
                let (sol, rep) = uniform_directed_1n_ptas_with_report(&inst, k, e).unwrap();
                let opt = exact_1n(&inst, k).unwrap().total_profit;
                let size = sol.chosen.len() as u64;
                let bound_ok = size * den >= (den - num) * opt;
                let equality_ok = !rep.all_sinks_taken() || size == opt;
                out.check(
                    bound_ok
                        && equality_ok
                        && is_one_neighbour_set(&inst, &sol.chosen)
                        && size <= k,
                    || format!("ud1n seed {seed} eps {e} k {k}: {size} vs OPT {opt}"),
                );
                let all = uniform_directed_alln_ptas(&inst, k, e).unwrap();
                let opt_all = exact_alln(&inst, k).unwrap().total_weight;
                out.check(
                    all.total_weight * den >= (den - num) * opt_all && all.total_weight <= k,
                    || {
                        format!(
                            "udall seed {seed} eps {e} k {k}: {} vs OPT {opt_all}",
                            all.total_weight
                        )
                    },
                );
                closures.record(&inst, &all, "udall");
            }
        }
    }
    out
}

fn oracles() -> Outcome {
    let mut out = Outcome::default();
    for seed in 0..320u64 {
        let mut r = rng(9000 + seed);
        let n = r.gen_range(1..=12);
        let prob = r.gen_range(0.1..0.7);
        let inst = random_bounded_degree(9000 + seed, n, prob, 8, 8, 8);
        let stars = all_viable_stars(&inst);
        let total: u64 = inst.weights().iter().sum();
        let cap = r.gen_range(0..=total);
        let fitting: Vec<(u64, u64)> = stars.iter().copied().filter(|s| s.1 <= cap).collect();
        for e in [eps(0.1), eps(0.3)] {
            let bp = best_profit_viable_star(&inst, cap, e).unwrap();
            let best_profit = fitting.iter().map(|s| s.0).max();
            match (&bp, best_profit) {
                (None, None) => out.check(true, String::new),
                (Some(s), Some(b)) => out.check(
                    star_is_valid(&inst, s)
                        && is_one_neighbour_set(&inst, &s.vertices())
                        && s.weight(&inst) <= cap
                        && profit_within(s.profit(&inst), b, e),
                    || format!("profit seed {seed} eps {e}: {} vs {b}", s.profit(&inst)),
                ),
                _ => out.check(false, || format!("profit seed {seed}: existence mismatch")),
            }
            let br = best_ratio_viable_star(&inst, cap, e).unwrap();
            let best_ratio = fitting
                .iter()
                .copied()
                .reduce(|a, b| if ratio_ge(a, b) { a } else { b });
            match (&br, best_ratio) {
                (None, None) => out.check(true, String::new),
                (Some(s), Some(b)) => {
                    let got = (s.profit(&inst), s.weight(&inst));
                    out.check(
                        star_is_valid(&inst, s)
                            && is_one_neighbour_set(&inst, &s.vertices())
                            && got.1 <= cap
                            && ratio_within(got, b, e),
                        || format!("ratio seed {seed} eps {e}: {got:?} vs {b:?}"),
                    )
                }
                _ => out.check(false, || format!("ratio seed {seed}: existence mismatch")),
            }
        }
    }
    out
}

fn partition() -> Outcome {
    let mut out = Outcome::default();
    for seed in 0..520u64 {
        let mut r = rng(20_000 + seed);
        let n = r.gen_range(1..=50);
        let prob = r.gen_range(0.0..0.2);
        let inst = random_instance(20_000 + seed, n, prob, false, 3, 3, 0);
        let part = star_partition(&inst).unwrap();
        let mut seen = vec![0; n];
        let mut ok = true;
        for s in &part.stars {
            for v in s.vertices().iter() {
                seen[v] += 1;
            }
            ok &= star_is_valid(&inst, s) && is_one_neighbour_set(&inst, &s.vertices());
        }
        ok &= seen.iter().all(|&c| c == 1);
        out.check(ok, || format!("seed {seed}: invalid partition"));
    }
    let path = Instance::uniform(false, 3, vec![(0, 1), (1, 2)], 0).unwrap();
    let part = star_partition(&path).unwrap();
    out.check(
        part.stars.len() == 1
            && part.stars[0].center == 1
            && part.stars[0].leaves.as_slice() == [0, 2],
        || "path of three is not a single star".into(),
    );
    out
}

fn all_subsets_of(ground: usize) -> Vec<Vec<usize>> {
    (0u32..1 << ground)
        .map(|m| (0..ground).filter(|&x| m >> x & 1 == 1).collect())
        .collect()
}

fn min_cover(sys: &SetSystem) -> Option<usize> {
    let r = sys.sets.len();
    (0u32..1 << r)
        .filter(|&m| {
            let chosen: Vec<usize> = (0..r).filter(|&i| m >> i & 1 == 1).collect();
            sys.covered(&chosen).iter().all(|&c| c)
        })
        .map(|m| m.count_ones() as usize)
        .min()
}

fn max_coverage(sys: &SetSystem, k: usize) -> u64 {
    let r = sys.sets.len();
    (0u32..1 << r)
        .filter(|m| m.count_ones() as usize <= k)
        .map(|m| {
            let chosen: Vec<usize> = (0..r).filter(|&i| m >> i & 1 == 1).collect();
            sys.covered(&chosen).iter().filter(|&&c| c).count() as u64
        })
        .max()
        .unwrap_or(0)
}

fn reductions() -> Outcome {
    let mut out = Outcome::default();
    for ground in 1..=3usize {
        let subsets = all_subsets_of(ground);
        let s = subsets.len();
        for r in 1..=3usize {
            // every collection of r subsets, as non-decreasing index tuples
            let mut idx = vec![0usize; r];
            loop {
                let sys = SetSystem::new(ground, idx.iter().map(|&i| subsets[i].clone()).collect())
                    .unwrap();
                let cover = min_cover(&sys);
                for t in 1..=3usize {
                    let (inst, layout) = gen_set_cover_cycles(&sys, t).unwrap();
                    let opt = exact_1n_with_limit(&inst, inst.budget(), 40)
                        .unwrap()
                        .total_profit;
                    let target = (layout.t * layout.cycle_len + ground) as u64;
                    let exists = cover.is_some_and(|c| c <= t);
                    out.check(exists == (opt == target), || {
                        format!(
                            "set cover {:?} t {t}: cover {cover:?}, OPT {opt}, target {target}",
                            sys.sets
                        )
                    });
                }
                let mut pos = r;
                while pos > 0 && idx[pos - 1] == s - 1 {
                    pos -= 1;
                }
                if pos == 0 {
                    break;
                }
                idx[pos - 1] += 1;
                let v = idx[pos - 1];
                for x in &mut idx[pos..] {
                    *x = v;
                }
            }
        }
    }
    for seed in 0..300u64 {
        let mut rg = rng(40_000 + seed);
        let ground = rg.gen_range(1..=5usize);
        let r = rg.gen_range(1..=4usize);
        let mut sets: Vec<Vec<usize>> = (0..r)
            .map(|_| (0..ground).filter(|_| rg.gen_bool(0.4)).collect())
            .collect();
        // every element in some set, so none is selectable for free
        for x in 0..ground {
            if !sets.iter().any(|s| s.contains(&x)) {
                let i = rg.gen_range(0..r);
                sets[i].push(x);
            }
        }
        let sys = SetSystem::new(ground, sets).unwrap();
        for k in 0..=r {
            let inst = gen_max_k_cover(&sys, k as u64).unwrap();
            let opt = exact_1n(&inst, k as u64).unwrap().total_profit;
            let want = max_coverage(&sys, k);
            out.check(opt == want, || {
                format!("max cover {:?} k {k}: {opt} vs {want}", sys.sets)
            });
        }
    }
    out
}

fn fptas(closures: &mut ClosureTally) -> Outcome {
    let mut out = Outcome::default();
    for seed in 0..320u64 {
        let mut r = rng(60_000 + seed);
        let n = r.gen_range(0..=12);
        let items: Vec<Item> = (0..n)
            .map(|i| Item::new(i, r.gen_range(0..=40), r.gen_range(0..=60)))
            .collect();
        let total: u64 = items.iter().map(|i| i.weight).sum();
        let cap = r.gen_range(0..=total);
        for e in [eps(0.1), eps(0.3), eps(0.5)] {
            let best = knapsack_exact(&items, cap).unwrap().profit;
            let sel = knapsack_fptas(&items, cap, e).unwrap();
            out.check(
                sel.weight <= cap && profit_within(sel.profit, best, e),
                || format!("fptas seed {seed} eps {e}: {} vs {best}", sel.profit),
            );
            let got = ratio_fptas(&items, cap, e).unwrap();
            let want = brute_best_ratio(&items, cap);
            match (got, want) {
                (None, None) => out.check(true, String::new),
                (Some(s), Some(b)) => out.check(
                    !s.ids.is_empty()
                        && s.weight <= cap
                        && ratio_within((s.profit, s.weight), b, e),
                    || {
                        format!(
                            "ratio seed {seed} eps {e}: ({}, {}) vs {b:?}",
                            s.profit, s.weight
                        )
                    },
                ),
                _ => out.check(false, || format!("ratio seed {seed}: existence mismatch")),
            }
        }
        let m = r.gen_range(1..=14);
        let inst = random_instance(60_000 + seed, m, r.gen_range(0.0..0.4), false, 9, 9, 0);
        let comps = nkp_core::graph::connected_components(&inst).unwrap();
        let comp_items: Vec<Item> = comps
            .iter()
            .enumerate()
            .map(|(i, c)| Item::new(i, inst.weight_of(c), inst.profit_of(c)))
            .collect();
        let k = r.gen_range(0..=inst.weights().iter().sum::<u64>());
        let best = knapsack_exact(&comp_items, k).unwrap().profit;
        for e in [eps(0.1), eps(0.3)] {
            let sol = general_undirected_alln_fptas(&inst, k, e).unwrap();
            out.check(
                sol.total_weight <= k && profit_within(sol.total_profit, best, e),
                || format!("guall seed {seed} eps {e}: {} vs {best}", sol.total_profit),
            );
            closures.record(&inst, &sol, "guall");
        }
    }
    out
}

fn weight_equals_profit_closures(closures: &mut ClosureTally) {
    for seed in 0..150u64 {
        let mut r = rng(70_000 + seed);
        let n = r.gen_range(1..=12);
        let inst = random_weight_equals_profit(70_000 + seed, n, r.gen_range(0.05..0.4), 6);
        let k = r.gen_range(0..=inst.weights().iter().sum::<u64>());
        for e in [eps(0.25), eps(0.5)] {
            let sol = uniform_directed_alln_ptas(&inst, k, e).unwrap();
            closures.record(&inst, &sol, "udall w=p");
        }
        closures.record(&inst, &exact_alln(&inst, k).unwrap(), "exact-all directed");
    }
}

fn write_corpus(dir: &Path) {
    for i in 0..100u64 {
        let mut r = rng(80_000 + i);
        let n = r.gen_range(1..=12);
        let directed = i % 2 == 1;
        let uniform = i % 4 < 2;
        let prob = r.gen_range(0.05..0.4);
        let inst = if uniform {
            random_uniform(80_000 + i, n, prob, directed)
        } else {
            random_instance(80_000 + i, n, prob, directed, 6, 6, 0)
        };
        let k = r.gen_range(0..=inst.weights().iter().sum::<u64>());
        let inst = inst.with_budget(k).unwrap();
        std::fs::write(dir.join(format!("inst{i:03}.nkp")), serialize(&inst)).unwrap();
    }
}

fn bench_determinism() -> Outcome {
    let mut out = Outcome::default();
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    std::fs::create_dir(&corpus).unwrap();
    write_corpus(&corpus);
    let run = |name: &str, jobs: &str| -> Vec<u8> {
        let path = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_nkp"))
            .args(["bench", "--dir"])
            .arg(&corpus)
            .args([
                "--epsilon",
                "0.25",
                "--oracle-max-n",
                "12",
                "--jobs",
                jobs,
                "--out",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(path).unwrap()
    };
    let a = run("a.csv", "1");
    let b = run("b.csv", "1");
    let c = run("c.csv", "4");
    out.check(a == b, || "sequential runs differ".into());
    out.check(a == c, || "--jobs 4 differs from the sequential run".into());
    let mut reader = csv::Reader::from_reader(a.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(|r| r.unwrap()).collect();
    let mut instances: Vec<&str> = rows.iter().map(|r| &r[0]).collect();
    instances.dedup();
    out.check(instances.len() == 100, || {
        format!("{} instances in the CSV", instances.len())
    });
    for row in &rows {
        out.check(&row[9] == "true" && row[14].is_empty(), || {
            format!("row failed: {row:?}")
        });
    }
    out
}

fn main() {
    let mut all_pass = true;
    let mut closures = ClosureTally::default();
    let secs = Duration::from_secs;

    let t = Instant::now();
    let o = exactness(&mut closures);
    all_pass &= report(
        1,
        "exact solvers match the oracle on uniform undirected instances",
        &o,
        t.elapsed(),
        secs(60),
    );

    let t = Instant::now();
    let o = greedy();
    all_pass &= report(
        2,
        "greedy profit >= 0.267 OPT at eps 0.1",
        &o,
        t.elapsed(),
        secs(300),
    );

    let t = Instant::now();
    let o = ptas(&mut closures);
    all_pass &= report(
        3,
        "directed PTAS bounds at eps 0.25 and 0.5",
        &o,
        t.elapsed(),
        secs(300),
    );

    let t = Instant::now();
    let o = oracles();
    all_pass &= report(
        4,
        "star oracles within 1-eps of exhaustive stars",
        &o,
        t.elapsed(),
        secs(300),
    );

    let t = Instant::now();
    let o = partition();
    all_pass &= report(
        5,
        "star partition is a disjoint cover by stars",
        &o,
        t.elapsed(),
        secs(300),
    );

    let t = Instant::now();
    let o = reductions();
    all_pass &= report(
        6,
        "set cover and max k-cover constructions",
        &o,
        t.elapsed(),
        secs(300),
    );

    let t = Instant::now();
    let o = fptas(&mut closures);
    all_pass &= report(
        7,
        "knapsack, component and ratio FPTAS bounds",
        &o,
        t.elapsed(),
        secs(300),
    );

    let t = Instant::now();
    weight_equals_profit_closures(&mut closures);
    all_pass &= report(
        8,
        "all-neighbour outputs are unions of closures",
        &closures.0,
        t.elapsed(),
        secs(300),
    );

    let t = Instant::now();
    let o = bench_determinism();
    all_pass &= report(
        9,
        "bench output is deterministic, also with --jobs 4",
        &o,
        t.elapsed(),
        secs(300),
    );

    if !all_pass {
        std::process::exit(1);
    }
}
