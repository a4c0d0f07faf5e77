use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dihedral_metric::{
    classify_dim2, metric_dimension_exact, recognize, verify_range, CayleyGraph, ConnectionSet,
    ExportFormat, SearchConfig,
};
use serde_json::{json, Value};

/// Metric dimension of Cayley graphs on dihedral groups.
#[derive(Parser)]
#[command(name = "cayley-dim", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Cay(D_2n, S) and print it as JSON or DOT.
    Build {
        #[command(flatten)]
        graph: GraphArgs,
        /// Emit Graphviz DOT.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
        /// Emit the JSON document (default).
        #[arg(long)]
        json: bool,
    },
    /// Exact metric dimension with a witnessing basis.
    Dim {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Classify the connection set against the dimension-two characterization.
    Classify {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Recognize cycle, prism, Möbius ladder or cubic bipartite structure.
    Recognize {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Check the classifier against the solver for every connection set in a range.
    Verify {
        #[arg(long)]
        from: u32,
        #[arg(long)]
        to: u32,
        /// Largest connection set to enumerate.
        #[arg(long, default_value_t = 4)]
        max_set_size: usize,
        #[command(flatten)]
        search: SearchArgs,
        /// Write the full report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Half the group order: the group is D_2n.
    #[arg(long)]
    n: u32,
    /// Connection set, e.g. "r1,r4,s0".
    #[arg(long)]
    set: String,
}

#[derive(Args)]
struct SearchArgs {
    /// Largest basis size tried before giving up.
    #[arg(long, default_value_t = SearchConfig::default().max_k)]
    max_k: usize,
    /// Refuse graphs with more vertices than this.
    #[arg(long, default_value_t = SearchConfig::default().max_vertices)]
    max_vertices: usize,
    /// Worker threads.
    #[arg(long, env = "CAYLEY_DIM_JOBS", default_value_t = 1)]
    jobs: usize,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            max_vertices: self.max_vertices,
            max_k: self.max_k,
            parallelism: self.jobs.max(1),
        }
    }
}

impl GraphArgs {
    fn parse(&self) -> dihedral_metric::Result<ConnectionSet> {
        ConnectionSet::parse(&self.set, self.n)
    }

    fn build(&self) -> dihedral_metric::Result<CayleyGraph> {
        CayleyGraph::build(self.n, &self.parse()?)
    }
}

fn print(value: &Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON values serialize"));
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Build { graph, dot, .. } => {
            let g = graph.build()?;
            let format = if dot { ExportFormat::Dot } else { ExportFormat::Json };
            println!("{}", g.export(format));
        }
        Command::Dim { graph, search } => {
            let g = graph.build()?;
            let res = metric_dimension_exact(&g, &search.config())?;
            let tokens: Vec<String> = res.basis.iter().map(|&v| g.vertex(v).token()).collect();
            print(&json!({
                "n": graph.n,
                "set": g.connection_set().to_string(),
                "dimension": res.dimension,
                "basis": tokens,
                "basis_indices": res.basis,
                "lower_bound": res.lower_bound,
                "stats": res.stats,
            }));
        }
        Command::Classify { graph } => {
            let set = graph.parse()?;
            let c = classify_dim2(graph.n, &set)?;
            let mut value = serde_json::to_value(&c)?;
            value["n"] = json!(graph.n);
            value["set"] = json!(set.to_string());
            print(&value);
        }
        Command::Recognize { graph } => {
            let g = graph.build()?;
            let verdict = recognize(&g)?;
            let mut value = serde_json::to_value(&verdict)?;
            value["n"] = json!(graph.n);
            value["set"] = json!(g.connection_set().to_string());
            print(&value);
        }
        Command::Verify {
            from,
            to,
            max_set_size,
            search,
            out,
        } => {
            let report = verify_range(from, to, max_set_size, &search.config())?;
            match out {
                Some(path) => {
                    std::fs::write(&path, serde_json::to_string_pretty(&report)?)?;
                    print(&json!({ "out": path, "summary": report.summary }));
                }
                None => print(&serde_json::to_value(&report)?),
            }
            if report.has_disagreements() {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
