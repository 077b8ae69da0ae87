use anyhow::{bail, Context, Result};
use atf_base::{
    dual_triangle, gl2z_equivalent, invariant_report, mutate, mutate_path, root_triangle,
    weights, BaseTriangle,
};
use atfkit::{
    check_family, moment_csv, parse_path, render_svg, run_verify, sphere_scan, torus_surface,
    Family, LagParams,
};
use clap::{Parser, Subcommand};
use markov::markov_tree;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exact mutation calculus for almost-toric base triangles and a
/// floating-point verification lab for the explicit Lagrangian families.
///
/// Vertex indices on the command line are 1-based and refer to the
/// counterclockwise vertex order of the triangle JSON; mutation paths are
/// comma-separated lists of such indices, applied left to right.
///
/// Exit codes: 0 all requested checks passed (or query answered yes),
/// 1 a check failed (or equivalence not found), 2 usage or input error.
#[derive(Parser)]
#[command(name = "atfkit", version, propagate_version = true)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// The Markov triple mutation tree
    Markov {
        #[command(subcommand)]
        cmd: MarkovCmd,
    },
    /// Exact triangle calculus: mutation, weights, duals, equivalence
    Atf {
        #[command(subcommand)]
        cmd: AtfCmd,
    },
    /// Floating-point Lagrangian lab
    Lag {
        #[command(subcommand)]
        cmd: LagCmd,
    },
}

#[derive(Subcommand)]
enum MarkovCmd {
    /// Print the deduplicated tree of Markov triples to a depth
    Tree {
        /// Tree depth in mutation edges from (1,1,1)
        #[arg(long)]
        depth: usize,
        /// Also write the tree as JSON to this path
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AtfCmd {
    /// Mutate a triangle at a vertex
    Mutate {
        /// Triangle JSON file
        #[arg(long = "in")]
        input: PathBuf,
        /// Vertex to mutate, 1-based
        #[arg(long)]
        vertex: usize,
        /// Write the mutated triangle JSON here (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a mutation path like "1,2,1" to the root triangle
    Path {
        /// Comma-separated 1-based vertex indices
        #[arg(long)]
        path: String,
        /// Write the resulting triangle JSON here (default: stdout)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the vertex weights of a triangle
    Weights {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print the dual triangle (primitive outward edge normals)
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Print the exact invariant report of a triangle
    Invariants {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Search for a unimodular map between two triangles
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
    },
    /// Identity, lockstep, involution and distinctness suite over the tree
    Verify {
        /// Mutation-tree depth to walk (full ternary tree, undo moves included)
        #[arg(long)]
        depth: usize,
        /// Number of random involution trials
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        /// Seed for the random trials
        #[arg(long, default_value_t = 7)]
        seed: u64,
    },
    /// Render a triangle as SVG
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Draw the mutation cut at this vertex (1-based) dashed
        #[arg(long)]
        cut: Option<usize>,
    },
}

#[derive(Subcommand)]
enum LagCmd {
    /// Run one family's numeric check suite
    Check {
        /// chekanov | clifford | ta-gamma | whitney | nemirovski | e-n
        #[arg(long)]
        family: Family,
        /// Total sample budget (per-axis grid is its square root)
        #[arg(long, default_value_t = 65536)]
        samples: usize,
        /// Central finite-difference step
        #[arg(long = "fd-step", default_value_t = 1e-4)]
        fd_step: f64,
        /// Degree for the e-n family
        #[arg(long, default_value_t = 1)]
        n: i64,
        /// Sphere dimension parameter for whitney / nemirovski / e-n
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Hamiltonian level for ta-gamma
        #[arg(long, default_value_t = 0.0)]
        a: f64,
    },
    /// Dump moment-map samples of a torus family as CSV
    Moment {
        /// chekanov | clifford | ta-gamma
        #[arg(long)]
        family: Family,
        #[arg(long)]
        out: PathBuf,
        /// Hamiltonian level for ta-gamma
        #[arg(long, default_value_t = 0.0)]
        a: f64,
    },
    /// Scan a sphere family for self-intersections
    DoublePoints {
        /// whitney | nemirovski | e-n
        #[arg(long)]
        family: Family,
        /// Sphere dimension parameter
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Grid resolution of the scan
        #[arg(long, default_value_t = 64)]
        resolution: usize,
        /// Degree for the e-n family
        #[arg(long, default_value_t = 1)]
        n: i64,
    },
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run() -> Result<ExitCode> {
    if let Ok(raw) = std::env::var("ATFKIT_THREADS") {
        let n: usize = raw
            .parse()
            .ok()
            .filter(|&n| n >= 1)
            .with_context(|| format!("ATFKIT_THREADS must be a positive integer, got {raw:?}"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("rayon thread pool")?;
    }
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Markov { cmd } => markov_cmd(cmd),
        Cmd::Atf { cmd } => atf_cmd(cmd),
        Cmd::Lag { cmd } => lag_cmd(cmd),
    }
}

fn read_triangle(path: &Path) -> Result<BaseTriangle> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading triangle file {}", path.display()))?;
    BaseTriangle::from_json_str(&text)
        .with_context(|| format!("parsing triangle JSON {}", path.display()))
}

fn write_or_print(out: Option<&Path>, content: &str, what: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))?;
            println!("wrote {} ({what})", path.display());
        }
        None => print!("{content}"),
    }
    Ok(())
}

fn one_based_vertex(v: usize) -> Result<usize> {
    if (1..=3).contains(&v) {
        Ok(v - 1)
    } else {
        bail!("vertex index {v} out of range; expected 1, 2 or 3")
    }
}

fn weights_line(t: &BaseTriangle) -> String {
    let w = weights(t);
    format!("({},{},{})", w[0], w[1], w[2])
}

fn markov_cmd(cmd: MarkovCmd) -> Result<ExitCode> {
    match cmd {
        MarkovCmd::Tree { depth, json } => {
            let tree = markov_tree(depth);
            tree.walk(&mut |node| {
                let indent = "  ".repeat(node.path.len());
                if node.path.is_empty() {
                    println!("{indent}{}", node.triple);
                } else {
                    let spec: Vec<String> = node.path.iter().map(|p| p.to_string()).collect();
                    println!("{indent}{}  via {}", node.triple, spec.join(","));
                }
            });
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&tree).expect("tree serialization");
                fs::write(&path, format!("{text}\n"))
                    .with_context(|| format!("writing {}", path.display()))?;
                println!("wrote {}", path.display());
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn atf_cmd(cmd: AtfCmd) -> Result<ExitCode> {
    match cmd {
        AtfCmd::Mutate { input, vertex, out } => {
            let t = read_triangle(&input)?;
            let m = mutate(&t, one_based_vertex(vertex)?)?;
            println!("mutated at vertex {vertex}: weights {}", weights_line(&m.triangle));
            println!(
                "cut direction {}, fresh vertex at position {}",
                m.cut_direction,
                m.new_vertex_index + 1
            );
            write_or_print(
                out.as_deref(),
                &format!("{}\n", m.triangle.to_json_string()),
                "triangle JSON",
            )?;
            Ok(ExitCode::SUCCESS)
        }
        AtfCmd::Path { path, out } => {
            let steps = parse_path(&path).map_err(|e| anyhow::anyhow!(e))?;
            let t = mutate_path(&root_triangle(), &steps)?;
            println!("path {path}: weights {}", weights_line(&t));
            write_or_print(out.as_deref(), &format!("{}\n", t.to_json_string()), "triangle JSON")?;
            Ok(ExitCode::SUCCESS)
        }
        AtfCmd::Weights { input } => {
            let t = read_triangle(&input)?;
            println!("{}", weights_line(&t));
            Ok(ExitCode::SUCCESS)
        }
        AtfCmd::Dual { input } => {
            let t = read_triangle(&input)?;
            for normal in dual_triangle(&t) {
                println!("{normal}");
            }
            Ok(ExitCode::SUCCESS)
        }
        AtfCmd::Invariants { input } => {
            let t = read_triangle(&input)?;
            let report = invariant_report(&t);
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serialization")
            );
            let ok = report.all_hold();
            println!("all identities hold: {ok}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        AtfCmd::Equiv { a, b } => {
            let ta = read_triangle(&a)?;
            let tb = read_triangle(&b)?;
            match gl2z_equivalent(&ta, &tb) {
                Some(map) => {
                    println!("equivalent via {}", map.matrix());
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("not equivalent");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        AtfCmd::Verify { depth, pairs, seed } => {
            let report = run_verify(depth, pairs, seed);
            println!("{report}");
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        AtfCmd::Render { input, out, cut } => {
            let t = read_triangle(&input)?;
            let cut0 = cut.map(one_based_vertex).transpose()?;
            let svg = render_svg(&t, cut0)?;
            fs::write(&out, &svg).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn lag_cmd(cmd: LagCmd) -> Result<ExitCode> {
    match cmd {
        LagCmd::Check {
            family,
            samples,
            fd_step,
            n,
            k,
            a,
        } => {
            let params = LagParams {
                samples,
                h: fd_step,
                n,
                k,
                a,
            };
            let report = check_family(family, &params)?;
            println!("{report}");
            Ok(if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        LagCmd::Moment { family, out, a } => {
            let params = LagParams { a, ..LagParams::default() };
            let Some(surf) = torus_surface(family, &params)? else {
                bail!("family {family} has no moment CSV; use chekanov, clifford or ta-gamma");
            };
            let csv = moment_csv(&surf, 64);
            let rows = csv.lines().count() - 1;
            fs::write(&out, &csv).with_context(|| format!("writing {}", out.display()))?;
            println!("wrote {} ({rows} rows)", out.display());
            Ok(ExitCode::SUCCESS)
        }
        LagCmd::DoublePoints {
            family,
            k,
            resolution,
            n,
        } => {
            if family.is_torus() {
                bail!("family {family} has no self-intersection scan; use whitney, nemirovski or e-n");
            }
            let params = LagParams { k, n, ..LagParams::default() };
            let points = sphere_scan(family, &params, resolution)?;
            println!(
                "{} double point{} at resolution {resolution}",
                points.len(),
                if points.len() == 1 { "" } else { "s" }
            );
            for (idx, dp) in points.iter().enumerate() {
                let fmt_vec = |v: &[f64]| {
                    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
                    format!("[{}]", parts.join(", "))
                };
                println!(
                    "  #{idx}: p = {}, q = {}, |f(p)-f(q)| = {:.3e}, |f(p)| = {:.3e}",
                    fmt_vec(&dp.p),
                    fmt_vec(&dp.q),
                    dp.image_gap,
                    dp.image_norm
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}
