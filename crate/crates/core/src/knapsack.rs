//! Classic 0-1 knapsack primitives: the exact min-weight-per-profit DP, the
//! profit-scaling FPTAS, the ratio FPTAS and exact subset sum.

use crate::error::{Error, Result};
use crate::numeric::{Epsilon, Ratio};

/// Largest total profit `knapsack_exact` accepts.
pub const PROFIT_TABLE_LIMIT: u128 = 1 << 40;

const INF: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Item {
    pub id: usize,
    pub weight: u64,
    pub profit: u64,
}

impl Item {
    pub fn new(id: usize, weight: u64, profit: u64) -> Self {
        Self { id, weight, profit }
    }
}

/// A chosen subset of items, ids sorted.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Selection {
    pub ids: Vec<usize>,
    pub profit: u64,
    pub weight: u64,
}

impl Selection {
    fn from_indices(items: &[Item], idx: &[usize]) -> Self {
        let mut ids: Vec<usize> = idx.iter().map(|&i| items[i].id).collect();
        ids.sort_unstable();
        Self {
            ids,
            profit: idx.iter().map(|&i| items[i].profit).sum(),
            weight: idx.iter().map(|&i| items[i].weight).sum(),
        }
    }

    pub fn ratio(&self) -> Ratio {
        Ratio::new(self.profit, self.weight)
    }
}

/// Minimum weight per exact (adjusted) profit level.
///
/// Rows are suffix rows: row `i` covers items `i..n`, so row 0 is the final
/// row over all items. Keeping every row lets witnesses be reconstructed
/// item by item in lexicographic order.
#[derive(Debug, Clone)]
pub struct ProfitTable {
    adjusted: Vec<u64>,
    weights: Vec<u64>,
    levels: usize,
    all: Vec<u64>,
    nonempty: Vec<u64>,
}

impl ProfitTable {
    /// `adjusted[i]` and `weights[i]` describe item `i`.
    pub fn build(adjusted: Vec<u64>, weights: Vec<u64>) -> Result<Self> {
        let total: u128 = adjusted.iter().map(|&p| p as u128).sum();
        if total > PROFIT_TABLE_LIMIT {
            return Err(Error::TableBound {
                total,
                limit: PROFIT_TABLE_LIMIT,
            });
        }
        let n = adjusted.len();
        let levels = total as usize + 1;
        let mut all = vec![INF; (n + 1) * levels];
        let mut nonempty = vec![INF; (n + 1) * levels];
        all[n * levels] = 0;
        for i in (0..n).rev() {
            let (p, w) = (adjusted[i] as usize, weights[i]);
            let (head, tail) = all.split_at_mut((i + 1) * levels);
            let next = &tail[..levels];
            let cur = &mut head[i * levels..];
            let (nhead, ntail) = nonempty.split_at_mut((i + 1) * levels);
            let nnext = &ntail[..levels];
            let ncur = &mut nhead[i * levels..];
            for q in 0..levels {
                let take = if q >= p && next[q - p] != INF {
                    next[q - p].saturating_add(w)
                } else {
                    INF
                };
                cur[q] = next[q].min(take);
                ncur[q] = nnext[q].min(take);
            }
        }
        Ok(Self {
            adjusted,
            weights,
            levels,
            all,
            nonempty,
        })
    }

    pub fn item_count(&self) -> usize {
        self.adjusted.len()
    }

    pub fn max_adjusted_profit(&self) -> u64 {
        self.adjusted.iter().copied().max().unwrap_or(0)
    }

    /// Number of profit levels, `0..levels`.
    pub fn levels(&self) -> usize {
        self.levels
    }

    fn row(&self, i: usize, q: usize) -> u64 {
        self.all[i * self.levels + q]
    }

    /// Minimum weight of any subset with adjusted profit exactly `q`.
    pub fn min_weight(&self, q: usize) -> Option<u64> {
        (q < self.levels)
            .then(|| self.row(0, q))
            .filter(|&w| w != INF)
    }

    /// Same as [`min_weight`](Self::min_weight) restricted to non-empty subsets.
    pub fn nonempty_min_weight(&self, q: usize) -> Option<u64> {
        (q < self.levels)
            .then(|| self.nonempty[q])
            .filter(|&w| w != INF)
    }

    fn complete(
        &self,
        mut out: Vec<usize>,
        mut start: usize,
        mut q: usize,
        mut w: u64,
    ) -> Vec<usize> {
        while q != 0 || w != 0 {
            let j = (start..self.item_count())
                .find(|&j| self.fits(j, q, w))
                .expect("table row guides reconstruction");
            out.push(j);
            q -= self.adjusted[j] as usize;
            w -= self.weights[j];
            start = j + 1;
        }
        out
    }

    fn fits(&self, j: usize, q: usize, w: u64) -> bool {
        let (p, wj) = (self.adjusted[j] as usize, self.weights[j]);
        p <= q && wj <= w && self.row(j + 1, q - p) == w - wj
    }

    /// Lexicographically smallest minimum-weight subset (item indices)
    /// reaching adjusted profit `q`.
    pub fn witness(&self, q: usize) -> Option<Vec<usize>> {
        let w = self.min_weight(q)?;
        Some(self.complete(Vec::new(), 0, q, w))
    }

    /// Lexicographically smallest non-empty minimum-weight subset reaching `q`.
    pub fn nonempty_witness(&self, q: usize) -> Option<Vec<usize>> {
        let w = self.nonempty_min_weight(q)?;
        let j = (0..self.item_count())
            .find(|&j| self.fits(j, q, w))
            .expect("non-empty row guides reconstruction");
        let q = q - self.adjusted[j] as usize;
        let w = w - self.weights[j];
        Some(self.complete(vec![j], j + 1, q, w))
    }
}

fn sorted_by_id(items: &[Item]) -> Vec<Item> {
    let mut v = items.to_vec();
    v.sort_by_key(|it| it.id);
    v
}

fn check_unique_ids(items: &[Item]) -> Result<()> {
    if items.windows(2).any(|w| w[0].id == w[1].id) {
        return Err(Error::InvalidArgument("item ids must be unique".into()));
    }
    Ok(())
}

/// Best level of a table under `capacity`: the highest adjusted profit.
fn best_level(table: &ProfitTable, capacity: u64) -> usize {
    (0..table.levels())
        .rev()
        .find(|&q| table.min_weight(q).is_some_and(|w| w <= capacity))
        .unwrap_or(0)
}

/// Exact 0-1 knapsack. Ties go to smaller weight, then to the
/// lexicographically smallest id set.
pub fn knapsack_exact(items: &[Item], capacity: u64) -> Result<Selection> {
    let items = sorted_by_id(items);
    check_unique_ids(&items)?;
    let table = ProfitTable::build(
        items.iter().map(|it| it.profit).collect(),
        items.iter().map(|it| it.weight).collect(),
    )?;
    let q = best_level(&table, capacity);
    let idx = table.witness(q).unwrap_or_default();
    Ok(Selection::from_indices(&items, &idx))
}

/// Adjusted profit `⌊p / max(1, ε·scale/count)⌋`, exact in integers.
fn adjusted_profit(p: u64, eps: Epsilon, scale: u64, count: usize) -> u64 {
    let num = eps.numerator() as u128 * scale as u128;
    let den = eps.denominator() as u128 * count as u128;
    if num <= den {
        p
    } else {
        ((p as u128 * den) / num) as u64
    }
}

fn scaling_is_identity(eps: Epsilon, scale: u64, count: usize) -> bool {
    eps.numerator() as u128 * scale as u128 <= eps.denominator() as u128 * count as u128
}

/// Profit-scaling FPTAS: profit ≥ (1−ε)·OPT.
///
/// Items heavier than the capacity are discarded before the maximum
/// profit `P` is taken, so that `OPT ≥ P` holds.
pub fn knapsack_fptas(items: &[Item], capacity: u64, eps: Epsilon) -> Result<Selection> {
    let items = sorted_by_id(items);
    check_unique_ids(&items)?;
    let fitting: Vec<Item> = items
        .into_iter()
        .filter(|it| it.weight <= capacity)
        .collect();
    let max_profit = fitting.iter().map(|it| it.profit).max().unwrap_or(0);
    if max_profit == 0 {
        return Ok(Selection::default());
    }
    let table = ProfitTable::build(
        fitting
            .iter()
            .map(|it| adjusted_profit(it.profit, eps, max_profit, fitting.len()))
            .collect(),
        fitting.iter().map(|it| it.weight).collect(),
    )?;
    let q = best_level(&table, capacity);
    let idx = table.witness(q).unwrap_or_default();
    Ok(Selection::from_indices(&fitting, &idx))
}

/// Non-empty subset maximizing `(base_profit + p(S)) / (base_weight + w(S))`
/// within `capacity`, up to a factor `1−ε`.
///
/// The scaling is repeated once per guess `q` of the largest item profit in
/// the optimal subset, over the items of profit at most `q`; every guess in
/// the unscaled regime is covered by one exact table. Each table is scanned
/// at every adjusted level and the candidate is ranked by its true ratio.
pub(crate) fn best_ratio_extension(
    items: &[Item],
    capacity: u64,
    eps: Epsilon,
    base_profit: u64,
    base_weight: u64,
) -> Result<Option<Selection>> {
    let fitting: Vec<Item> = items
        .iter()
        .copied()
        .filter(|it| it.weight <= capacity)
        .collect();
    if fitting.is_empty() {
        return Ok(None);
    }
    let mut guesses: Vec<u64> = fitting.iter().map(|it| it.profit).collect();
    guesses.sort_unstable();
    guesses.dedup();

    let count_upto = |q: u64| fitting.iter().filter(|it| it.profit <= q).count();
    let exact_cap = guesses
        .iter()
        .copied()
        .filter(|&q| scaling_is_identity(eps, q, count_upto(q)))
        .max();

    let mut best: Option<(Ratio, Selection)> = None;
    let mut consider = |sel: Selection| {
        let r = Ratio::new(base_profit + sel.profit, base_weight + sel.weight);
        let better = match &best {
            None => true,
            Some((br, bs)) => r > *br || (r == *br && sel.profit > bs.profit),
        };
        if better {
            best = Some((r, sel));
        }
    };

    let mut run = |q: u64, exact: bool| -> Result<()> {
        let sub: Vec<Item> = fitting
            .iter()
            .copied()
            .filter(|it| it.profit <= q)
            .collect();
        let adjusted = sub
            .iter()
            .map(|it| {
                if exact {
                    it.profit
                } else {
                    adjusted_profit(it.profit, eps, q, sub.len())
                }
            })
            .collect();
        let table = ProfitTable::build(adjusted, sub.iter().map(|it| it.weight).collect())?;
        for level in 0..table.levels() {
            if table
                .nonempty_min_weight(level)
                .is_some_and(|w| w <= capacity)
            {
                let idx = table.nonempty_witness(level).expect("level is reachable");
                consider(Selection::from_indices(&sub, &idx));
            }
        }
        Ok(())
    };

    if let Some(q) = exact_cap {
        run(q, true)?;
    }
    for &q in &guesses {
        if !scaling_is_identity(eps, q, count_upto(q)) {
            run(q, false)?;
        }
    }
    Ok(best.map(|(_, s)| s))
}

/// Non-empty subset whose profit-to-weight ratio is within `1−ε` of the
/// best ratio of any non-empty subset fitting in `capacity`. `None` iff no
/// single item fits.
pub fn ratio_fptas(items: &[Item], capacity: u64, eps: Epsilon) -> Result<Option<Selection>> {
    let items = sorted_by_id(items);
    check_unique_ids(&items)?;
    best_ratio_extension(&items, capacity, eps, 0, 0)
}

/// Exact subset sum: indices of a subset with the largest total ≤ `k`,
/// lexicographically smallest among ties.
pub fn subset_sum_max(sizes: &[u64], k: u64) -> (Vec<usize>, u64) {
    let n = sizes.len();
    let total: u64 = sizes.iter().sum();
    let cap = k.min(total) as usize;
    // reach[i][s]: items i..n can sum exactly to s
    let width = cap + 1;
    let mut reach = vec![false; (n + 1) * width];
    reach[n * width] = true;
    for i in (0..n).rev() {
        let sz = sizes[i] as usize;
        for s in 0..width {
            reach[i * width + s] =
                reach[(i + 1) * width + s] || (s >= sz && reach[(i + 1) * width + s - sz]);
        }
    }
    let best = (0..width).rev().find(|&s| reach[s]).unwrap_or(0);
    let mut chosen = Vec::new();
    let mut rest = best;
    let mut i = 0;
    while rest > 0 {
        let sz = sizes[i] as usize;
        if sz <= rest && reach[(i + 1) * width + rest - sz] {
            chosen.push(i);
            rest -= sz;
        }
        i += 1;
    }
    (chosen, best as u64)
}
