use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use geoflow::ensembles::{add_random_matching, gen_bethe, gen_complete, gen_er, gen_random_regular, gen_rgg};
use geoflow::io::{read_edges_file, read_points_file, write_edges_file, write_points_file};
use geoflow::metrics::{run_sweep, write_sweep_csv, SweepConfig};
use geoflow::pointgen::sample_points;
use geoflow::rng::seeded_rng;
use geoflow::routing::{congestion_with, FlowSweep};
use geoflow::{CongestionReport, DensityModel, Graph};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "geoflow",
    version,
    about = "Random graph ensembles and geodesic-routing congestion"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample a Poisson point set for a radial density.
    GenPoints {
        /// `name[:param]`, e.g. `poincare:1`, `genhyp:0.05` or `custom:"r r *"`.
        #[arg(long, default_value = "euclidean")]
        density: String,
        /// Expected number of points.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Delaunay triangulation of a point file.
    Triangulate {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Generate a random or deterministic graph family.
    Graph {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Degree (regular, default 6) or branching (bethe, default 3).
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        depth: Option<usize>,
        /// Edge probability for er (default 2 ln n / n).
        #[arg(long)]
        p: Option<f64>,
        /// Connection radius for rgg (default sqrt(2 ln n / n)).
        #[arg(long)]
        radius: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Add random maximal matchings to a graph.
    Augment {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 1)]
        matchings: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Route all-pairs demand and report congestion.
    Flow {
        #[arg(long = "in")]
        input: PathBuf,
        /// JSON report.
        #[arg(long)]
        out: PathBuf,
        /// Optional `v,T` dump of per-vertex flow.
        #[arg(long)]
        per_vertex: Option<PathBuf>,
        /// Route within the largest connected component.
        #[arg(long)]
        largest_component: bool,
        #[arg(long, value_enum, default_value = "ordered")]
        sweep: Sweep,
    },
    /// Run an experiment grid from a JSON config.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Er,
    Rgg,
    Regular,
    Bethe,
    Complete,
}

#[derive(Clone, Copy, ValueEnum)]
enum Sweep {
    Jacobi,
    Ordered,
}

#[derive(Serialize)]
struct FlowOutput<'a> {
    #[serde(flatten)]
    report: &'a CongestionReport,
    /// Original index of each routed vertex when restricted to a component.
    #[serde(skip_serializing_if = "Option::is_none")]
    vertex_ids: Option<&'a [usize]>,
}

fn require_n(n: Option<usize>, family: &str) -> Result<usize> {
    n.with_context(|| format!("--n is required for {family}"))
}

fn generate(
    family: Family,
    n: Option<usize>,
    k: Option<usize>,
    depth: Option<usize>,
    p: Option<f64>,
    radius: Option<f64>,
    seed: u64,
) -> Result<Graph> {
    let mut rng = seeded_rng(seed);
    Ok(match family {
        Family::Er => gen_er(require_n(n, "er")?, p, &mut rng)?,
        Family::Rgg => gen_rgg(require_n(n, "rgg")?, radius, &mut rng)?,
        Family::Regular => gen_random_regular(require_n(n, "regular")?, k.unwrap_or(6), &mut rng)?,
        Family::Bethe => gen_bethe(k.unwrap_or(3), depth.context("--depth is required for bethe")?)?,
        Family::Complete => gen_complete(require_n(n, "complete")?),
    })
}

fn flow(
    input: PathBuf,
    out: PathBuf,
    per_vertex: Option<PathBuf>,
    largest_component: bool,
    sweep: Sweep,
) -> Result<()> {
    let mut g = read_edges_file(&input).with_context(|| format!("reading {}", input.display()))?;
    let mut ids = None;
    if largest_component {
        let (sub, map) = g.largest_component();
        eprintln!("largest component: {} of {} vertices", sub.n(), g.n());
        g = sub;
        ids = Some(map);
    } else if !g.is_connected() {
        bail!(
            "graph is disconnected ({} components); pass --largest-component to route within the largest one",
            g.components().1
        );
    }
    let sweep = match sweep {
        Sweep::Jacobi => FlowSweep::Jacobi,
        Sweep::Ordered => FlowSweep::DistanceOrdered,
    };
    let mut report: CongestionReport = congestion_with(&g, sweep)?;
    if let Some(map) = &ids {
        for e in &mut report.edge_flow {
            (e.u, e.v) = (map[e.u], map[e.v]);
        }
        report.argmax_vertex = map[report.argmax_vertex];
        report.argmax_edge = (map[report.argmax_edge.0], map[report.argmax_edge.1]);
    }
    let n2 = (g.n() * g.n()).max(1) as f64;
    let mem = report.memory;
    eprintln!(
        "matrix bytes:         {:>14} ({:.2} n^2)",
        mem.matrix_bytes,
        mem.matrix_bytes as f64 / n2
    );
    eprintln!(
        "redistribution bytes: {:>14} ({:.2} n^2)",
        mem.redistribution_bytes,
        mem.redistribution_bytes as f64 / n2
    );
    eprintln!(
        "flow bytes:           {:>14} ({:.2} n^2)",
        mem.flow_bytes,
        mem.flow_bytes as f64 / n2
    );

    let file = File::create(&out).with_context(|| format!("creating {}", out.display()))?;
    serde_json::to_writer_pretty(
        BufWriter::new(file),
        &FlowOutput {
            report: &report,
            vertex_ids: ids.as_deref(),
        },
    )?;
    if let Some(path) = per_vertex {
        let mut w = BufWriter::new(File::create(&path).with_context(|| format!("creating {}", path.display()))?);
        writeln!(w, "v,T")?;
        for (i, t) in report.vertex_flow.iter().enumerate() {
            let v = ids.as_ref().map_or(i, |m| m[i]);
            writeln!(w, "{v},{t}")?;
        }
        w.flush()?;
    }
    println!(
        "n={} m={} diameter={} max_vflow={} avg_vflow={} max_eflow={} avg_eflow={}",
        report.n,
        report.m,
        report.diameter,
        report.max_vertex_flow,
        report.avg_vertex_flow,
        report.max_edge_flow,
        report.avg_edge_flow
    );
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::GenPoints { density, n, seed, out } => {
            let model: DensityModel = density.parse().with_context(|| format!("density {density:?}"))?;
            let set = sample_points(&model, n, seed)?;
            write_points_file(&out, &set.points)?;
            eprintln!("{} points for {}", set.len(), set.model);
        }
        Command::Triangulate { input, out } => {
            let points = read_points_file(&input).with_context(|| format!("reading {}", input.display()))?;
            let t = geoflow::delaunay::triangulate_points(&points)?;
            if t.degenerate {
                eprintln!("collinear input: wrote the path through the points");
            }
            write_edges_file(&out, &t.graph)?;
            eprintln!(
                "{} vertices, {} edges, {} triangles",
                t.graph.n(),
                t.graph.m(),
                t.triangles.len()
            );
        }
        Command::Graph {
            family,
            n,
            k,
            depth,
            p,
            radius,
            seed,
            out,
        } => {
            let g = generate(family, n, k, depth, p, radius, seed)?;
            write_edges_file(&out, &g)?;
            eprintln!("{} vertices, {} edges", g.n(), g.m());
        }
        Command::Augment {
            input,
            matchings,
            seed,
            out,
        } => {
            let mut g = read_edges_file(&input).with_context(|| format!("reading {}", input.display()))?;
            let before = g.m();
            let mut rng = seeded_rng(seed);
            for _ in 0..matchings {
                g = add_random_matching(&g, &mut rng);
            }
            write_edges_file(&out, &g)?;
            eprintln!("added {} edges", g.m() - before);
        }
        Command::Flow {
            input,
            out,
            per_vertex,
            largest_component,
            sweep,
        } => {
            flow(input, out, per_vertex, largest_component, sweep)?;
        }
        Command::Sweep { config, out } => {
            let text = std::fs::read_to_string(&config).with_context(|| format!("reading {}", config.display()))?;
            let outcome = run_sweep(&SweepConfig::from_json(&text)?)?;
            for f in &outcome.failures {
                eprintln!("failed: {} trial {}: {}", f.params, f.trial, f.message);
            }
            write_sweep_csv(BufWriter::new(File::create(&out)?), &outcome.rows)?;
        }
    }
    Ok(())
}
