use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use intervention_design::bench::{run_benchmark, write_csv, BenchConfig, BenchError};
use intervention_design::designer::{
    design_exact, design_greedy_chordal, design_greedy_interval, design_unbounded_optimal, export_ilp, Algorithm,
    DesignError, ExactLimits,
};
use intervention_design::io::{self as dio, GraphDoc, IoError};
use intervention_design::oracle::{design_learns_all, OracleError};
use intervention_design::randgen::{self, CostDist, GenConfig};
use intervention_design::sepsys::{cost_breakdown, verify_graph_separating};

#[derive(Parser)]
#[command(
    name = "intdesign",
    version,
    about = "Minimum-cost intervention designs on chordal graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Unbounded,
    Greedy,
    GreedyInterval,
    Exact,
}

#[derive(Subcommand)]
enum Command {
    /// Build a separating design for a graph.
    Design {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Intervention budget; required except in unbounded mode.
        #[arg(long = "max-interventions", short)]
        m: Option<usize>,
        #[arg(long)]
        input: PathBuf,
        /// Defaults to stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Search node limit for exact mode.
        #[arg(long, default_value_t = ExactLimits::default().node_budget)]
        node_budget: u64,
    },
    /// Check that a design separates every edge and report its cost.
    Verify {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        design: PathBuf,
    },
    /// Sample a random connected chordal graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value = "exp_mean1")]
        dist: CostDist,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check by enumeration that a design learns every orientation.
    Oracle {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        design: PathBuf,
    },
    /// Write the labeled-coloring integer program in LP format.
    ExportIlp {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Average normalized cost over random graphs, one CSV row per m.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: f64,
        /// Inclusive range `a:b`.
        #[arg(long, value_parser = parse_range)]
        m_range: (usize, usize),
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value = "exp_mean1")]
        dist: CostDist,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "greedy")]
        algorithm: Mode,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

fn parse_range(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(':').ok_or("expected a:b")?;
    let a: usize = a.trim().parse().map_err(|e| format!("{a}: {e}"))?;
    let b: usize = b.trim().parse().map_err(|e| format!("{b}: {e}"))?;
    if a > b {
        return Err(format!("empty range {a}:{b}"));
    }
    Ok((a, b))
}

/// Error with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn validation(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        let code = if matches!(e, IoError::Io { .. }) { 1 } else { 2 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<DesignError> for Failure {
    fn from(e: DesignError) -> Self {
        let code = if matches!(e, DesignError::InsufficientInterventions { .. }) {
            3
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = if matches!(e, OracleError::TooLarge { .. }) {
            4
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Io(_) => Failure {
                code: 1,
                message: e.to_string(),
            },
            BenchError::Design { source, .. } => source.into(),
            e => Failure::validation(e),
        }
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => dio::write_file(path, text)?,
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure {
                    code: 1,
                    message: e.to_string(),
                })?;
        }
    }
    Ok(())
}

fn algorithm(mode: Mode) -> Algorithm {
    match mode {
        Mode::Unbounded => Algorithm::Unbounded,
        Mode::Greedy => Algorithm::Greedy,
        Mode::GreedyInterval => Algorithm::GreedyInterval,
        Mode::Exact => Algorithm::Exact,
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Design {
            mode,
            m,
            input,
            output,
            node_budget,
        } => {
            let doc = dio::read_graph(&input)?;
            let g = &doc.graph;
            let budget = || m.ok_or_else(|| Failure::validation("--max-interventions is required for this mode"));
            let result = match mode {
                Mode::Unbounded => design_unbounded_optimal(g)?,
                Mode::Greedy => design_greedy_chordal(g, budget()?)?,
                Mode::GreedyInterval => design_greedy_interval(g, budget()?)?,
                Mode::Exact => match design_exact(g, budget()?, ExactLimits { node_budget }) {
                    Err(DesignError::BudgetExceeded { nodes, best }) => {
                        eprintln!("warning: node budget exhausted after {nodes} nodes; writing best design found");
                        *best
                    }
                    other => other?,
                },
            };
            eprintln!(
                "{}: {} interventions, cost {}",
                result.algorithm,
                result.design.nonempty_interventions().count(),
                result.total_cost
            );
            for note in &result.notes {
                eprintln!("note: {note}");
            }
            emit(output.as_deref(), &dio::write_design(&doc, &result.design))
        }
        Command::Verify { graph, design } => {
            let doc = dio::read_graph(&graph)?;
            let design = dio::parse_design(&doc, &dio::read_to_string(&design)?)?;
            let report = verify_graph_separating(&doc.graph, &design);
            let cost = cost_breakdown(&design, doc.graph.weights());
            println!("cost: {}", cost.by_rows);
            if report.is_separating() {
                println!("separating: yes");
                Ok(())
            } else {
                for &(u, v) in &report.unseparated {
                    println!("unseparated: {} {}", doc.name(u), doc.name(v));
                }
                Err(Failure::validation(format!(
                    "design leaves {} edges unseparated",
                    report.unseparated.len()
                )))
            }
        }
        Command::Gen {
            n,
            d,
            seed,
            dist,
            output,
        } => {
            let cfg = GenConfig {
                n,
                d,
                seed,
                cost_dist: dist,
                always_add_parent: false,
            };
            let graph = randgen::sample_chordal(&cfg).map_err(Failure::validation)?;
            let doc = GraphDoc {
                graph,
                names: None,
                meta: Some(randgen::meta(&cfg)),
            };
            emit(output.as_deref(), &dio::write_graph(&doc))
        }
        Command::Oracle { graph, design } => {
            let doc = dio::read_graph(&graph)?;
            let design = dio::parse_design(&doc, &dio::read_to_string(&design)?)?;
            let report = design_learns_all(&doc.graph, &design)?;
            println!("orientations checked: {}", report.orientations_checked);
            match &report.failure {
                None => {
                    println!("learns all: yes");
                    Ok(())
                }
                Some(f) => {
                    let (u, v) = f.unlearned;
                    println!("unlearned: {} {}", doc.name(u), doc.name(v));
                    let truth: Vec<String> = f
                        .truth
                        .iter()
                        .map(|e| format!("{}->{}", doc.name(e.from), doc.name(e.to)))
                        .collect();
                    println!("truth: {}", truth.join(" "));
                    Err(Failure::validation("design does not learn every orientation"))
                }
            }
        }
        Command::ExportIlp { graph, m, output } => {
            let doc = dio::read_graph(&graph)?;
            emit(output.as_deref(), &export_ilp(&doc.graph, m))
        }
        Command::Bench {
            n,
            d,
            m_range,
            trials,
            dist,
            seed,
            algorithm: mode,
            output,
        } => {
            let mut cfg = BenchConfig::new(n, d, m_range.0..=m_range.1, trials);
            cfg.dist = dist;
            cfg.seed = seed;
            cfg.algorithm = algorithm(mode);
            let report = run_benchmark(&cfg)?;
            for &(m, skipped) in &report.diagnostics.skipped {
                if skipped > 0 {
                    eprintln!("m = {m}: {skipped} trials skipped (graph needs more interventions)");
                }
            }
            match output {
                Some(path) => {
                    let file = File::create(&path).map_err(|e| Failure {
                        code: 1,
                        message: format!("{}: {e}", path.display()),
                    })?;
                    write_csv(&report.rows, BufWriter::new(file))?;
                }
                None => write_csv(&report.rows, io::stdout().lock())?,
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
