//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 unreadable or unparsable input,
//! 3 validation failure.

use std::ffi::OsString;
use std::fmt::Display;
use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::graph::{parse_clusters, parse_edge_list, Graph, ParseReport, TriangleStats};
use crate::layout::{force_layout, DEFAULT_ITERATIONS, DEFAULT_SEED};
use crate::reorder::{check_tau_min, reorder, Ordering, DEFAULT_TAU_MIN};
use crate::scene::{build_scene, Meta, OrderingDocument, Palette, SceneDocument};
use crate::server::SceneServer;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_INVALID: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tricube",
    version,
    about = "Triangle-centric adjacency matrices for undirected graphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print node, edge, triangle and wedge counts and triangle densities.
    Stats(InputArgs),
    /// Compute the block ordering and write it as JSON.
    Reorder {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Reorder, lay out and write the scene document for the viewer.
    ExportScene {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        run: RunArgs,
        /// Use an ordering written by `reorder` instead of recomputing it.
        #[arg(long)]
        order: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Serve a scene document and the viewer over HTTP.
    Serve {
        /// Scene document to serve.
        scene: PathBuf,
        #[arg(long, default_value_t = 8000)]
        port: u16,
        /// Directory holding the built viewer (index.html and its assets).
        #[arg(long)]
        assets: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Whitespace-separated edge list, one `u v` pair per line.
    #[arg(long)]
    pub edges: PathBuf,
    /// Node-to-cluster map, one `node cluster` pair per line.
    #[arg(long)]
    pub clusters: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Triangle density a block must reach to stay whole.
    #[arg(long, default_value_t = DEFAULT_TAU_MIN, value_parser = parse_tau_min)]
    pub tau_min: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, default_value_t = DEFAULT_ITERATIONS, value_parser = parse_iterations)]
    pub iterations: usize,
}

fn parse_tau_min(s: &str) -> Result<f64, String> {
    let tau: f64 = s.parse().map_err(|e| format!("{e}"))?;
    check_tau_min(tau).map_err(|e| e.to_string())?;
    Ok(tau)
}

fn parse_iterations(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Display) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }

    fn invalid(message: impl Display) -> Self {
        Failure {
            code: EXIT_INVALID,
            message: message.to_string(),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

pub fn execute(command: Command) -> CliResult<()> {
    match command {
        Command::Stats(input) => cmd_stats(&input),
        Command::Reorder { input, run, out } => cmd_reorder(&input, &run, &out),
        Command::ExportScene {
            input,
            run,
            order,
            out,
        } => cmd_export_scene(&input, &run, order.as_deref(), &out),
        Command::Serve {
            scene,
            port,
            assets,
        } => cmd_serve(&scene, port, assets.as_deref()),
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents)
        .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))
}

fn dataset_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn load_graph(input: &InputArgs) -> CliResult<(Graph, ParseReport)> {
    let text = read(&input.edges)?;
    let (graph, report) = parse_edge_list(&text)
        .map_err(|e| Failure::input(format!("{}: {e}", input.edges.display())))?;
    if graph.edge_count() == 0 {
        return Err(Failure::input(format!(
            "{}: edge list is empty",
            input.edges.display()
        )));
    }
    let Some(path) = &input.clusters else {
        return Ok((graph, report));
    };
    let text = read(path)?;
    let graph = parse_clusters(&text, graph).map_err(|e| {
        let message = format!("{}: {e}", path.display());
        match e {
            Error::Parse { .. } => Failure::input(message),
            _ => Failure::invalid(message),
        }
    })?;
    Ok((graph, report))
}

fn meta(input: &InputArgs, run: &RunArgs, tau_min: f64) -> Meta {
    Meta {
        dataset: dataset_name(&input.edges),
        tau_min,
        seed: run.seed,
        iterations: run.iterations,
    }
}

pub fn cmd_stats(input: &InputArgs) -> CliResult<()> {
    let (g, report) = load_graph(input)?;
    let stats = TriangleStats::of(&g);
    println!(
        "{} nodes, {} edges, {} triangles",
        g.node_count(),
        g.edge_count(),
        stats.triangles
    );
    println!("{} wedges", stats.wedges);
    println!("triangle density {:.6}", stats.density());
    if report.duplicate_edges > 0 || report.self_loops > 0 {
        println!(
            "dropped {} duplicate edges and {} self-loops",
            report.duplicate_edges, report.self_loops
        );
    }
    if let Some(clusters) = g.clusters() {
        for id in g.cluster_ids() {
            let members: Vec<usize> = (0..g.node_count()).filter(|&v| clusters[v] == id).collect();
            let sub = g.induced_subgraph(&members).map_err(Failure::invalid)?;
            let s = TriangleStats::of(&sub.graph);
            println!(
                "cluster {id}: {} nodes, {} triangles, triangle density {:.6}",
                members.len(),
                s.triangles,
                s.density()
            );
        }
    }
    Ok(())
}

fn print_blocks(ordering: &Ordering) {
    println!("{} blocks", ordering.blocks.len());
    let mut singletons = 0;
    for (k, block) in ordering.blocks.iter().enumerate() {
        if block.len() == 1 {
            singletons += 1;
        } else {
            println!(
                "block {k}: {} nodes, triangle density {:.4}",
                block.len(),
                block.density()
            );
        }
    }
    if singletons > 0 {
        println!("{singletons} single-node blocks");
    }
}

pub fn cmd_reorder(input: &InputArgs, run: &RunArgs, out: &Path) -> CliResult<()> {
    let (g, _) = load_graph(input)?;
    let ordering = reorder(&g, run.tau_min).map_err(|e| Failure {
        code: EXIT_USAGE,
        message: e.to_string(),
    })?;
    let doc = OrderingDocument::new(&ordering, meta(input, run, run.tau_min));
    write(out, &doc.to_json())?;
    print_blocks(&ordering);
    println!("wrote {}", out.display());
    Ok(())
}

pub fn cmd_export_scene(
    input: &InputArgs,
    run: &RunArgs,
    order: Option<&Path>,
    out: &Path,
) -> CliResult<()> {
    let (g, _) = load_graph(input)?;
    let ordering = match order {
        Some(path) => {
            let text = read(path)?;
            OrderingDocument::from_json(&text)
                .and_then(|doc| doc.to_ordering(&g))
                .map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))?
        }
        None => reorder(&g, run.tau_min).map_err(|e| Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        })?,
    };
    let layout = force_layout(&g, run.seed, run.iterations).map_err(Failure::invalid)?;
    let scene = build_scene(
        &g,
        &ordering,
        &layout,
        &Palette::for_graph(&g),
        &dataset_name(&input.edges),
    )
    .map_err(Failure::invalid)?;
    write(out, &scene.to_json())?;
    println!(
        "wrote {}: {} nodes, {} cells, {} blocks",
        out.display(),
        scene.nodes.len(),
        scene.cells.len(),
        scene.blocks.len()
    );
    Ok(())
}

pub fn cmd_serve(scene: &Path, port: u16, assets: Option<&Path>) -> CliResult<()> {
    let text = read(scene)?;
    SceneDocument::from_json(&text)
        .map_err(|e| Failure::invalid(format!("{}: {e}", scene.display())))?;

    let runtime = tokio::runtime::Runtime::new().map_err(Failure::input)?;
    runtime.block_on(async {
        let addr = SocketAddr::from(([127, 0, 0, 1], port));
        let server = SceneServer::bind(scene, assets, addr)
            .await
            .map_err(|e| Failure::input(format!("cannot serve on {addr}: {e}")))?;
        let local = server.local_addr().map_err(Failure::input)?;
        println!("serving {} at http://{local}/", server.dataset());
        let _ = std::io::stdout().flush();
        server
            .run_until(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await
            .map_err(Failure::input)
    })
}
