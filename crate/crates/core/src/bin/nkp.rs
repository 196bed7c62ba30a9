use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nkp_core::bench::{bench_csv, BenchOptions};
use nkp_core::exact::DEFAULT_ORACLE_LIMIT;
use nkp_core::generators::{
    gen_budgeted_max_cover, gen_max_k_cover, gen_network_budget, gen_random, gen_set_cover_cycles,
    Network, RandomParams, SetSystem,
};
use nkp_core::io::{read_file, serialize_with_header};
use nkp_core::solve::{check_set, solve, DEFAULT_EPSILON};
use nkp_core::stars::star_partition;
use nkp_core::{Algorithm, Constraint, Epsilon, Error, Instance, Result, SolveOptions, VertexSet};

#[derive(Parser)]
#[command(name = "nkp", version, about = "Knapsack on dependency graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the verified result
    Solve(SolveArgs),
    /// Check whether a vertex set is feasible
    Check(CheckArgs),
    /// Run every applicable solver over a directory of instances
    Bench(BenchArgs),
    /// Print a star partition of an undirected instance without isolated vertices
    PartitionStars {
        #[arg(long)]
        input: PathBuf,
    },
    /// Generate an instance
    #[command(subcommand)]
    Gen(GenCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum ConstraintArg {
    One,
    All,
}

impl From<ConstraintArg> for Constraint {
    fn from(c: ConstraintArg) -> Self {
        match c {
            ConstraintArg::One => Constraint::OneNeighbour,
            ConstraintArg::All => Constraint::AllNeighbour,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Text,
    Csvrow,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    constraint: ConstraintArg,
    /// Algorithm name, or `auto`
    #[arg(long, default_value = "auto")]
    variant: String,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    /// Overrides the budget in the file
    #[arg(long)]
    budget: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_ORACLE_LIMIT)]
    oracle_max_n: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also print the solver's iteration log
    #[arg(long)]
    trace: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long, value_enum)]
    constraint: ConstraintArg,
    /// Comma-separated vertex ids; empty for the empty set
    #[arg(long, allow_hyphen_values = true)]
    set: String,
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    dir: PathBuf,
    #[arg(long, default_value_t = DEFAULT_EPSILON)]
    epsilon: f64,
    #[arg(long, default_value_t = 12)]
    oracle_max_n: usize,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Record wall time per run in the `ms` column
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Seeded random instance
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        edge_prob: f64,
        #[arg(long)]
        directed: bool,
        #[arg(long, default_value_t = 1)]
        w_max: u64,
        #[arg(long, default_value_t = 1)]
        p_max: u64,
        #[arg(long)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Unit weights and profits; ignores the maxima
        #[arg(long)]
        uniform: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bipartite element/set instance for maximum coverage
    MaxKCover {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        budget: u64,
        /// Comma-separated element profits (budgeted variant)
        #[arg(long)]
        profits: Option<String>,
        /// Comma-separated set costs (budgeted variant)
        #[arg(long)]
        costs: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Directed cycle instance for set cover
    SetCoverCycles {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Budgeted network formation instance
    Network {
        #[arg(long)]
        nodes: usize,
        /// Semicolon-separated `u-v:cost` links
        #[arg(long)]
        links: String,
        #[arg(long)]
        sink: usize,
        /// Comma-separated node profits
        #[arg(long)]
        profits: String,
        #[arg(long)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SystemArgs {
    /// Ground set size
    #[arg(long)]
    ground: usize,
    /// Semicolon-separated sets of comma-separated elements, e.g. `0,1;1,2`
    #[arg(long)]
    sets: String,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

fn parse_list(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse()
                .map_err(|_| bad(format!("not a non-negative integer: {s:?}")))
        })
        .collect()
}

fn parse_ids(text: &str) -> Result<Vec<usize>> {
    Ok(parse_list(text)?.into_iter().map(|x| x as usize).collect())
}

fn parse_system(args: &SystemArgs) -> Result<SetSystem> {
    let sets = args
        .sets
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_ids)
        .collect::<Result<Vec<_>>>()?;
    SetSystem::new(args.ground, sets)
}

fn parse_links(text: &str) -> Result<Vec<(usize, usize, u64)>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|link| {
            let err = || bad(format!("link must look like `u-v:cost`, got {link:?}"));
            let (ends, cost) = link.split_once(':').ok_or_else(err)?;
            let (u, v) = ends.split_once('-').ok_or_else(err)?;
            Ok((
                u.trim().parse().map_err(|_| err())?,
                v.trim().parse().map_err(|_| err())?,
                cost.trim().parse().map_err(|_| err())?,
            ))
        })
        .collect()
}

fn join(ids: &[usize], sep: &str) -> String {
    ids.iter()
        .map(usize::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| bad(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_solve(a: &SolveArgs) -> Result<()> {
    let instance = read_file(&a.input)?;
    let mut opts = SolveOptions::new(a.constraint.into());
    opts.eps = Epsilon::new(a.epsilon)?;
    opts.budget = a.budget;
    opts.oracle_limit = a.oracle_max_n;
    if a.variant != "auto" {
        opts.variant = Some(
            Algorithm::from_name(&a.variant)
                .ok_or_else(|| Error::Unsupported(format!("unknown variant {:?}", a.variant)))?,
        );
    }
    let sol = solve(&instance, &opts)?;
    let k = a.budget.unwrap_or(instance.budget());
    match a.format {
        Format::Text => {
            println!("algorithm: {}", sol.algorithm);
            println!("constraint: {}", sol.constraint);
            println!("guarantee: {}", sol.guarantee);
            println!("epsilon: {}", opts.eps);
            println!("budget: {k}");
            println!("profit: {}", sol.total_profit);
            println!("weight: {}", sol.total_weight);
            println!("size: {}", sol.chosen.len());
            println!("chosen: {}", join(sol.chosen.as_slice(), ","));
            if a.trace {
                for line in &sol.trace {
                    println!("trace: {line}");
                }
            }
        }
        Format::Csvrow => {
            let mut w = csv::Writer::from_writer(std::io::stdout());
            w.write_record([
                sol.algorithm.name().to_string(),
                sol.constraint.name().to_string(),
                sol.guarantee.to_string(),
                opts.eps.to_string(),
                k.to_string(),
                sol.total_profit.to_string(),
                sol.total_weight.to_string(),
                join(sol.chosen.as_slice(), " "),
            ])
            .and_then(|_| w.flush().map_err(Into::into))
            .map_err(|e| Error::Internal(e.to_string()))?;
        }
    }
    Ok(())
}

fn cmd_check(a: &CheckArgs) -> Result<()> {
    let instance = read_file(&a.input)?;
    let set = VertexSet::for_instance(&instance, parse_ids(&a.set)?)?;
    let budget = a.budget.unwrap_or(instance.budget());
    let r = check_set(&instance, a.constraint.into(), &set, budget);
    println!("{}", if r.feasible { "feasible" } else { "infeasible" });
    if let Some(v) = r.violation {
        println!("violation: {v}");
    }
    println!("weight: {}", r.weight);
    println!("profit: {}", r.profit);
    println!(
        "budget: {} ({budget})",
        if r.within_budget {
            "within"
        } else {
            "exceeded"
        }
    );
    Ok(())
}

fn cmd_bench(a: &BenchArgs) -> Result<()> {
    let opts = BenchOptions {
        eps: Epsilon::new(a.epsilon)?,
        oracle_max_n: a.oracle_max_n,
        jobs: a.jobs.max(1),
        timing: a.timing,
    };
    emit(&bench_csv(&a.dir, &opts)?, a.out.as_ref())
}

fn cmd_partition(input: &Path) -> Result<()> {
    let instance = read_file(input)?;
    for star in star_partition(&instance)?.stars {
        println!("{}: {}", star.center, join(star.leaves.as_slice(), ","));
    }
    Ok(())
}

fn generated(instance: &Instance, header: Vec<String>, out: Option<&PathBuf>) -> Result<()> {
    emit(&serialize_with_header(instance, &header), out)
}

fn cmd_gen(g: &GenCommand) -> Result<()> {
    match g {
        GenCommand::Random {
            n,
            edge_prob,
            directed,
            w_max,
            p_max,
            budget,
            seed,
            uniform,
            out,
        } => {
            let params = RandomParams {
                n: *n,
                edge_prob: *edge_prob,
                directed: *directed,
                w_max: *w_max,
                p_max: *p_max,
                budget: *budget,
                seed: *seed,
            };
            let header = vec![format!(
                "gen random n={n} edge_prob={edge_prob} directed={directed} w_max={w_max} p_max={p_max} budget={budget} seed={seed} uniform={uniform}"
            )];
            let mut inst = gen_random(&params)?;
            if *uniform {
                inst = Instance::uniform(*directed, *n, inst.edges().to_vec(), *budget)?;
            }
            generated(&inst, header, out.as_ref())
        }
        GenCommand::MaxKCover {
            system,
            budget,
            profits,
            costs,
            out,
        } => {
            let sys = parse_system(system)?;
            let mut header = vec![format!(
                "gen max-k-cover ground={} sets={} budget={budget}",
                system.ground, system.sets
            )];
            let inst = match (profits, costs) {
                (None, None) => gen_max_k_cover(&sys, *budget)?,
                (p, c) => {
                    let p = p.as_deref().map_or(Ok(vec![1; sys.ground]), parse_list)?;
                    let c = c
                        .as_deref()
                        .map_or(Ok(vec![1; sys.sets.len()]), parse_list)?;
                    header.push(format!("profits={} costs={}", join_u64(&p), join_u64(&c)));
                    gen_budgeted_max_cover(&sys, &p, &c, *budget)?
                }
            };
            generated(&inst, header, out.as_ref())
        }
        GenCommand::SetCoverCycles { system, t, out } => {
            let sys = parse_system(system)?;
            let (inst, layout) = gen_set_cover_cycles(&sys, *t)?;
            let header = vec![
                format!(
                    "gen set-cover-cycles ground={} sets={} t={t}",
                    system.ground, system.sets
                ),
                format!(
                    "cycle_len={} t_used={} marked={}",
                    layout.cycle_len,
                    layout.t,
                    join(&layout.marked, ",")
                ),
            ];
            generated(&inst, header, out.as_ref())
        }
        GenCommand::Network {
            nodes,
            links,
            sink,
            profits,
            budget,
            out,
        } => {
            let net = Network {
                nodes: *nodes,
                links: parse_links(links)?,
                sink: *sink,
                profits: parse_list(profits)?,
            };
            let header = vec![format!(
                "gen network nodes={nodes} links={links} sink={sink} profits={profits} budget={budget}"
            )];
            generated(&gen_network_budget(&net, *budget)?, header, out.as_ref())
        }
    }
}

fn join_u64(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Check(a) => cmd_check(a),
        Command::Bench(a) => cmd_bench(a),
        Command::PartitionStars { input } => cmd_partition(input),
        Command::Gen(g) => cmd_gen(g),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
