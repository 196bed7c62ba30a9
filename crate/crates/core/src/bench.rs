//! Benchmark harness: runs every applicable solver on a directory of
//! instance files and compares against the exact optimum on small inputs.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{exact_1n_with_limit, exact_alln_with_limit};
use crate::graph::Instance;
use crate::io::read_file;
use crate::numeric::{trim_float, Epsilon};
use crate::solution::{Algorithm, Constraint};
use crate::solve::{route, run_algorithm, Route};

pub const CSV_HEADER: [&str; 15] = [
    "instance",
    "variant",
    "algorithm",
    "epsilon",
    "n",
    "m",
    "k",
    "profit",
    "weight",
    "feasible",
    "guarantee",
    "opt",
    "ratio",
    "ms",
    "error",
];

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub instance: String,
    /// `<constraint>-<directed|undirected>-<uniform|general>`
    pub variant: String,
    pub algorithm: String,
    pub eps: Epsilon,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<u64>,
    pub profit: Option<u64>,
    pub weight: Option<u64>,
    pub feasible: Option<bool>,
    pub guarantee: String,
    pub opt: Option<u64>,
    pub ratio: Option<f64>,
    pub ms: Option<f64>,
    pub error: String,
}

impl RunRecord {
    fn fields(&self) -> [String; 15] {
        fn opt<T: ToString>(x: &Option<T>) -> String {
            x.as_ref().map_or_else(String::new, T::to_string)
        }
        [
            self.instance.clone(),
            self.variant.clone(),
            self.algorithm.clone(),
            self.eps.to_string(),
            opt(&self.n),
            opt(&self.m),
            opt(&self.k),
            opt(&self.profit),
            opt(&self.weight),
            opt(&self.feasible),
            self.guarantee.clone(),
            opt(&self.opt),
            self.ratio.map_or_else(String::new, trim_float),
            self.ms.map_or_else(String::new, |x| format!("{x:.3}")),
            self.error.clone(),
        ]
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BenchOptions {
    pub eps: Epsilon,
    pub oracle_max_n: usize,
    pub jobs: usize,
    /// Fill the `ms` column; off by default so the output is reproducible.
    pub timing: bool,
}

pub fn variant_name(constraint: Constraint, instance: &Instance) -> String {
    format!(
        "{}-{}-{}",
        constraint.name(),
        if instance.is_directed() {
            "directed"
        } else {
            "undirected"
        },
        if instance.is_uniform() {
            "uniform"
        } else {
            "general"
        }
    )
}

/// Non-exact algorithms whose input requirements `instance` meets.
pub fn applicable_algorithms(instance: &Instance, constraint: Constraint) -> Vec<Algorithm> {
    let (d, u) = (instance.is_directed(), instance.is_uniform());
    let mut out: Vec<Algorithm> = match constraint {
        Constraint::OneNeighbour => [
            (Algorithm::UniformUndirectedOneLinear, !d && u),
            (Algorithm::GreedyOneNeighbour, !d),
            (Algorithm::UniformDirectedOnePtas, d && u),
        ]
        .into_iter()
        .filter_map(|(a, ok)| ok.then_some(a))
        .collect(),
        Constraint::AllNeighbour => [
            (
                Algorithm::UniformDirectedAllPtas,
                d && instance.weight_equals_profit(),
            ),
            (Algorithm::UniformUndirectedAllSubsetSum, !d && u),
            (Algorithm::GeneralUndirectedAllFptas, !d),
        ]
        .into_iter()
        .filter_map(|(a, ok)| ok.then_some(a))
        .collect(),
    };
    if out.is_empty() {
        if let Route::ExactOnly { algorithm, .. } = route(constraint, d, u) {
            out.push(algorithm);
        }
    }
    out
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", dir.display())))?;
    let mut files = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| Error::InvalidArgument(e.to_string()))?;
        if entry.file_type().map(|t| t.is_file()).unwrap_or(false) {
            files.push(entry.path());
        }
    }
    files.sort();
    Ok(files)
}

fn run_instance(path: &Path, label: &str, opts: &BenchOptions) -> Vec<RunRecord> {
    let blank = |variant: String, algorithm: String, error: String| RunRecord {
        instance: label.to_string(),
        variant,
        algorithm,
        eps: opts.eps,
        n: None,
        m: None,
        k: None,
        profit: None,
        weight: None,
        feasible: None,
        guarantee: String::new(),
        opt: None,
        ratio: None,
        ms: None,
        error,
    };
    let instance = match read_file(path) {
        Ok(i) => i,
        Err(e) => return vec![blank(String::new(), String::new(), e.to_string())],
    };
    let k = instance.budget();
    let mut rows = Vec::new();
    for constraint in [Constraint::AllNeighbour, Constraint::OneNeighbour] {
        let variant = variant_name(constraint, &instance);
        let optimum = (instance.n() <= opts.oracle_max_n)
            .then(|| match constraint {
                Constraint::OneNeighbour => exact_1n_with_limit(&instance, k, opts.oracle_max_n),
                Constraint::AllNeighbour => exact_alln_with_limit(&instance, k, opts.oracle_max_n),
            })
            .and_then(|r| r.ok())
            .map(|s| s.total_profit);
        for algorithm in applicable_algorithms(&instance, constraint) {
            let mut row = blank(variant.clone(), algorithm.name().to_string(), String::new());
            row.n = Some(instance.n());
            row.m = Some(instance.m());
            row.k = Some(k);
            let start = Instant::now();
            let result = run_algorithm(algorithm, &instance, k, opts.eps, opts.oracle_max_n)
                .and_then(|s| s.verify(&instance, k).map(|_| s));
            let elapsed = start.elapsed().as_secs_f64() * 1000.0;
            match result {
                Ok(sol) => {
                    row.profit = Some(sol.total_profit);
                    row.weight = Some(sol.total_weight);
                    row.feasible = Some(true);
                    row.guarantee = sol.guarantee.to_string();
                    row.opt = optimum;
                    row.ratio = optimum.map(|o| {
                        if o == 0 {
                            1.0
                        } else {
                            sol.total_profit as f64 / o as f64
                        }
                    });
                    if opts.timing {
                        row.ms = Some(elapsed);
                    }
                }
                Err(e) => row.error = e.to_string(),
            }
            rows.push(row);
        }
    }
    rows
}

/// Runs the benchmark and returns rows sorted by instance, variant and
/// algorithm.
pub fn bench_records(dir: &Path, opts: &BenchOptions) -> Result<Vec<RunRecord>> {
    let files = instance_files(dir)?;
    let work = |path: &PathBuf| {
        let label = path
            .strip_prefix(dir)
            .unwrap_or(path)
            .to_string_lossy()
            .into_owned();
        run_instance(path, &label, opts)
    };
    let mut rows: Vec<RunRecord> = if opts.jobs > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::Internal(e.to_string()))?;
        pool.install(|| files.par_iter().flat_map_iter(work).collect())
    } else {
        files.iter().flat_map(work).collect()
    };
    rows.sort_by(|a, b| {
        (&a.instance, &a.variant, &a.algorithm).cmp(&(&b.instance, &b.variant, &b.algorithm))
    });
    Ok(rows)
}

pub fn write_csv<W: std::io::Write>(rows: &[RunRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Internal(format!("writing CSV: {e}"));
    w.write_record(CSV_HEADER).map_err(io)?;
    for r in rows {
        w.write_record(r.fields()).map_err(io)?;
    }
    w.flush()
        .map_err(|e| Error::Internal(format!("writing CSV: {e}")))?;
    Ok(())
}

pub fn bench_csv(dir: &Path, opts: &BenchOptions) -> Result<String> {
    let rows = bench_records(dir, opts)?;
    let mut buf = Vec::new();
    write_csv(&rows, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Internal(e.to_string()))
}
