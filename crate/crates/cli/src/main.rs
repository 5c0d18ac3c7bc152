use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;
use symgen_core::automorphism::orbits;
use symgen_core::feasibility::{build_system, is_feasible, Feasibility};
use symgen_core::io::{parse_edge_list, to_dot, write_edge_list};
use symgen_core::metrics::{alignment_metric, records_csv, summarize, summary_csv, sweep, SweepConfig};
use symgen_core::quotient::coarsest_equitable;
use symgen_core::rewire::{randomize, DEFAULT_SWAPS_PER_EDGE};
use symgen_core::solver::solve_quotient;
use symgen_core::wiring::{generate, CompositionChoice};
use symgen_core::{Error, Partition, QuotientGraph};

const FORMATS: &str = "\
Quotient files (.qg), 1-based, `#` comments:
  quotient 3          # cluster count
  self 1 1            # each vertex of C1 has 1 neighbor in C1
  edge 1 2 2 1        # C1 vertices have 2 neighbors in C2, C2 vertices 1 in C1

Edge lists (.el), 1-based, node lines optional:
  graph 3
  node 1 1            # vertex 1 in cluster 1
  edge 1 2 edge:1-2   # optional tag self:i or edge:j-k

Sweep CSV: s,trial,n,mbc,oag,f   Summary CSV: s,mean_f,std_f,trials

Exit codes: 0 success, 1 usage/input error, 2 infeasible quotient.";

#[derive(Parser)]
#[command(name = "symgen", version, about = "Build graphs with prescribed quotient structure and measure their symmetry", after_help = FORMATS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility; prints the primitive size vector or an inconsistent cycle.
    Check { quotient: PathBuf },
    /// Minimal program variables and cluster sizes.
    Solve {
        quotient: PathBuf,
        #[arg(long, default_value_t = 1)]
        scale: u64,
    },
    /// Wire a graph realizing the quotient.
    Generate {
        quotient: PathBuf,
        #[arg(long, default_value_t = 1)]
        scale: u64,
        #[command(flatten)]
        random: RandomArgs,
        /// Edge-list output (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also write a Graphviz rendering.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Coarsest equitable partition, orbits and alignment of an edge list.
    /// With no flags, everything is reported.
    Analyze {
        graph: PathBuf,
        #[arg(long)]
        mbc: bool,
        #[arg(long)]
        oag: bool,
        #[arg(long)]
        metric: bool,
    },
    /// Alignment over many randomized realizations per scale factor.
    Sweep {
        quotient: PathBuf,
        /// Inclusive range `a..b` or comma list `1,2,4`.
        #[arg(long, default_value = "1..10", value_parser = parse_scales)]
        scales: Scales,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Attempted swaps per edge of each class.
        #[arg(long, default_value_t = DEFAULT_SWAPS_PER_EDGE)]
        swaps: f64,
        /// Seeded random inter-cluster compositions.
        #[arg(long)]
        b_random: bool,
        /// Per-trial CSV (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Per-scale summary CSV (stderr when omitted).
        #[arg(long)]
        summary: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RandomArgs {
    /// Shuffle edges by quotient-preserving double-edge swaps.
    #[arg(long)]
    randomize: bool,
    /// Attempted swaps per edge of each class.
    #[arg(long, default_value_t = DEFAULT_SWAPS_PER_EDGE)]
    swaps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Seeded random inter-cluster compositions.
    #[arg(long)]
    b_random: bool,
}

#[derive(Clone, Debug)]
struct Scales(Vec<u64>);

fn parse_scales(text: &str) -> Result<Scales, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| format!("invalid scale `{t}`"))
            .and_then(|s| if s == 0 { Err("scales start at 1".to_string()) } else { Ok(s) })
    };
    let scales = if let Some((a, b)) = text.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a > b {
            return Err(format!("empty scale range {text}"));
        }
        (a..=b).collect()
    } else {
        text.split(',').map(num).collect::<Result<Vec<_>, _>>()?
    };
    Ok(Scales(scales))
}

enum Failure {
    Infeasible(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Infeasible => Failure::Infeasible("quotient graph is infeasible".into()),
            e => Failure::Other(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

fn load_quotient(path: &Path) -> Result<QuotientGraph, Failure> {
    QuotientGraph::parse(&read(path)?).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))
}

fn joined<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn sizes_line(p: &Partition) -> String {
    let mut sizes = p.sizes().to_vec();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    joined(&sizes)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Check { quotient } => {
            let q = load_quotient(&quotient)?;
            let sys = build_system(&q);
            match is_feasible(&sys)? {
                Feasibility::Feasible(cert) => {
                    println!("FEASIBLE");
                    println!("vector: {}", joined(&cert.vector));
                    println!("lower bounds: {}", joined(sys.x_lower()));
                    Ok(())
                }
                Feasibility::Infeasible(w) => {
                    println!("INFEASIBLE");
                    let cycle: Vec<String> = w.pairs.iter().map(|(j, k)| format!("{}-{}", j + 1, k + 1)).collect();
                    println!("inconsistent cycle: {}", cycle.join(" "));
                    Err(Failure::Infeasible("ratio constraints are inconsistent around a cycle".into()))
                }
            }
        }
        Command::Solve { quotient, scale } => {
            let q = load_quotient(&quotient)?;
            let sol = solve_quotient(&q, scale)?;
            println!("x: {}", joined(&sol.x));
            println!("n: {}", joined(&sol.n));
            println!("total: {}", sol.total_n);
            Ok(())
        }
        Command::Generate {
            quotient,
            scale,
            random,
            output,
            dot,
        } => {
            let q = load_quotient(&quotient)?;
            let sol = solve_quotient(&q, scale)?;
            let choice = if random.b_random {
                CompositionChoice::Random { seed: random.seed }
            } else {
                CompositionChoice::Balanced
            };
            let (mut g, part) = generate(&q, &sol, choice)?;
            if random.randomize {
                g = randomize(&g, &part, random.seed, random.swaps)?;
            }
            let text = write_edge_list(&g, Some(&part));
            match output {
                Some(path) => write(&path, &text)?,
                None => print!("{text}"),
            }
            if let Some(path) = dot {
                write(&path, &to_dot(&g, Some(&part)))?;
            }
            Ok(())
        }
        Command::Analyze {
            graph,
            mut mbc,
            mut oag,
            mut metric,
        } => {
            let el = parse_edge_list(&read(&graph)?).map_err(|e| Failure::Other(format!("{}: {e}", graph.display())))?;
            let g = el.graph;
            if !(mbc || oag || metric) {
                (mbc, oag, metric) = (true, true, true);
            }
            println!("n: {}", g.n());
            println!("edges: {}", g.edge_count());
            let c = (mbc || metric).then(|| coarsest_equitable(&g));
            let o = if oag || metric { Some(orbits(&g)?) } else { None };
            if let (true, Some(c)) = (mbc, &c) {
                println!("mbc: {}", c.p());
                println!("mbc sizes: {}", sizes_line(c));
            }
            if let (true, Some(o)) = (oag, &o) {
                println!("oag: {}", o.len());
                println!("oag sizes: {}", sizes_line(&o.partition));
                println!("generators: {}", o.generators.len());
            }
            if let (true, Some(c), Some(o)) = (metric, &c, &o) {
                let n = g.n() as u64;
                let f = alignment_metric(n, c.p() as u64, o.len() as u64)?;
                let note = if n == c.p() as u64 { " (degenerate: every cluster is a single vertex)" } else { "" };
                println!("f: {f} = {:.6}{note}", f.to_f64().unwrap_or(f64::NAN));
            }
            Ok(())
        }
        Command::Sweep {
            quotient,
            scales,
            trials,
            seed,
            swaps,
            b_random,
            output,
            summary,
        } => {
            let q = load_quotient(&quotient)?;
            let cfg = SweepConfig {
                scales: scales.0,
                trials,
                seed,
                swaps_per_edge: swaps,
                random_compositions: b_random,
            };
            let records = sweep(&q, &cfg)?;
            let csv = records_csv(&records);
            match output {
                Some(path) => write(&path, &csv)?,
                None => print!("{csv}"),
            }
            let sum = summary_csv(&summarize(&records));
            match summary {
                Some(path) => write(&path, &sum)?,
                None => eprint!("{sum}"),
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.to_string();
            let first = msg.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("symgen: {}", first.trim_start_matches("error: "));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Infeasible(msg)) => {
            eprintln!("symgen: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Other(msg)) => {
            eprintln!("symgen: {msg}");
            ExitCode::from(1)
        }
    }
}
