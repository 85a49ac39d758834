//! Command-line front end: exact spectra, classification reports, family
//! constructors, cospectrality verdicts, and the exhaustive verifier.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 verification failure.

use std::fs;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use spectral_class::classifier::{classify, ClassificationReport};
use spectral_class::cospectral::{cospectral_mates, is_ds, DsReason};
use spectral_class::families::{catalog_instances, FamilyId, FamilyInstance};
use spectral_class::graph::Graph;
use spectral_class::harness::{
    enumerate_h_members, enumerate_nonisomorphic, ingest_graph6, verify_classification,
    verify_ingested, VerificationSummary, VerifyConfig,
};
use spectral_class::linalg::{char_poly, spectrum_shape, IntMatrix};
use spectral_class::numeric::graph_spectrum;

#[derive(Parser)]
#[command(
    name = "spectral-class",
    about = "Catalog, classifier and verifier for graphs with at most two adjacency eigenvalues different from -2 and 0",
    version
)]
struct Cli {
    #[command(flatten)]
    format: FormatFlags,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FormatFlags {
    /// Emit JSON (one object per result)
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text (default)
    #[arg(long, global = true)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Exact characteristic polynomial, spectrum shape, numeric eigenvalues
    Spectrum {
        /// graph6 record, or @path to a file of records
        graph6: String,
    },
    /// Full classification report for a graph
    Classify {
        /// graph6 record, or @path to a file of records
        graph6: String,
        /// Also scan for the thirteen forbidden induced subgraphs
        #[arg(long)]
        scan_forbidden: bool,
    },
    /// Catalog family constructors and listings
    Family {
        #[command(subcommand)]
        cmd: FamilyCmd,
    },
    /// Cospectral mates and the determined-by-spectrum verdict
    Cospectral {
        /// graph6 record, or @path to a file of records
        graph6: String,
    },
    /// Exhaustively verify the classification up to a given order
    Verify {
        #[arg(long)]
        max_n: usize,
        /// Verify graphs from a graph6 file instead of the built-in
        /// enumeration (the file must be complete per order)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Allow the long-running built-in n=8 sweep
        #[arg(long)]
        long: bool,
    },
    /// Stream one graph6 line per isomorphism class
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Only classes with at most two eigenvalues outside {-2, 0}
        #[arg(long)]
        in_h_only: bool,
        /// Allow the long-running n=8 sweep
        #[arg(long)]
        long: bool,
    },
}

#[derive(Subcommand)]
enum FamilyCmd {
    /// Construct an instance: `family make G6 3`, `family make CP 4`
    Make { id: String, params: Vec<u32> },
    /// All catalog instances with exactly n vertices
    List {
        #[arg(long)]
        n: usize,
    },
}

fn main() -> ExitCode {
    // behave like a standard unix filter when the read end of a pipe closes
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            _ => {
                eprint!("{e}");
                return ExitCode::from(1);
            }
        },
    };
    let json = cli.format.json;
    match run(cli.command, json) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command, json: bool) -> Result<u8, String> {
    match command {
        Command::Spectrum { graph6 } => {
            for g in load_graphs(&graph6)? {
                cmd_spectrum(&g, json)?;
            }
            Ok(0)
        }
        Command::Classify {
            graph6,
            scan_forbidden,
        } => {
            for g in load_graphs(&graph6)? {
                cmd_classify(&g, scan_forbidden, json)?;
            }
            Ok(0)
        }
        Command::Family { cmd } => match cmd {
            FamilyCmd::Make { id, params } => cmd_family_make(&id, &params, json),
            FamilyCmd::List { n } => cmd_family_list(n, json),
        },
        Command::Cospectral { graph6 } => {
            for g in load_graphs(&graph6)? {
                cmd_cospectral(&g, json)?;
            }
            Ok(0)
        }
        Command::Verify { max_n, input, long } => cmd_verify(max_n, input, long, json),
        Command::Enumerate { n, in_h_only, long } => cmd_enumerate(n, in_h_only, long, json),
    }
}

/// A graph6 argument is either a literal record or `@path` naming a file of
/// newline-separated records; every record in the file is processed.
fn load_graphs(arg: &str) -> Result<Vec<Graph>, String> {
    if let Some(path) = arg.strip_prefix('@') {
        let file = fs::File::open(path).map_err(|e| format!("{path}: {e}"))?;
        ingest_graph6(BufReader::new(file))
            .map(|r| r.map(|(_, g)| g).map_err(|e| format!("{path}: {e}")))
            .collect()
    } else {
        Ok(vec![Graph::from_graph6(arg).map_err(|e| e.to_string())?])
    }
}

fn threads_from_env() -> usize {
    std::env::var("SPECTRAL_CLASS_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(0)
}

/// Formats with 12 significant digits.
fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (11 - magnitude).max(0) as usize;
    let s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn eigenvalue_list(g: &Graph) -> Result<Vec<f64>, String> {
    Ok(graph_spectrum(g)
        .map_err(|e| e.to_string())?
        .values()
        .to_vec())
}

fn cmd_spectrum(g: &Graph, json: bool) -> Result<(), String> {
    let p = char_poly(&IntMatrix::adjacency(g));
    let shape = spectrum_shape(&p);
    let eigen = eigenvalue_list(g)?;
    if json {
        println!(
            "{}",
            json!({
                "graph6": g.to_graph6(),
                "n": g.n(),
                "edges": g.edge_count(),
                "char_poly": p,
                "shape": shape,
                "eigenvalues": eigen,
            })
        );
    } else {
        println!("graph: {}", g.to_graph6());
        println!("n: {}  edges: {}", g.n(), g.edge_count());
        println!("char_poly: {p}");
        println!("shape: {shape}");
        let formatted: Vec<String> = eigen.iter().map(|&x| format!("{x:.12}")).collect();
        println!("eigenvalues: {}", formatted.join(", "));
    }
    Ok(())
}

fn render_report_text(r: &ClassificationReport) {
    println!("graph: {}", r.graph6);
    println!("n: {}", r.n);
    println!("in_h: {}", r.in_h);
    println!("residual_degree: {}", r.residual_degree);
    println!("isolated_count: {}", r.isolated_count);
    println!("in_h_prime: {}", r.in_h_prime);
    println!("connected: {}", r.connected);
    println!("n_pos: {}", r.n_pos);
    if let Some(alpha) = r.alpha {
        let witness = r
            .alpha_witness
            .as_ref()
            .map(|w| format!("{w:?}"))
            .unwrap_or_default();
        println!("alpha: {alpha}  witness: {witness}");
    }
    if let Some(matches) = &r.family_matches {
        let names: Vec<String> = matches.iter().map(|f| f.to_string()).collect();
        println!("family_matches: [{}]", names.join(", "));
    }
    if let Some(hits) = &r.forbidden_hits {
        if hits.is_empty() {
            println!("forbidden_hits: none");
        } else {
            for h in hits {
                println!("forbidden_hit: ({}) at {:?}", h.pattern, h.vertices);
            }
        }
    }
    println!("shape: {}", r.shape);
}

fn cmd_classify(g: &Graph, scan: bool, json: bool) -> Result<(), String> {
    let report = classify(g, scan);
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).map_err(|e| e.to_string())?
        );
    } else {
        render_report_text(&report);
        println!();
    }
    Ok(())
}

fn make_instance(id: &str, params: &[u32]) -> Result<FamilyInstance, String> {
    let id: FamilyId = id.parse().map_err(|e| format!("{e}"))?;
    FamilyInstance::new(id, params).map_err(|e| format!("{e}"))
}

fn cmd_family_make(id: &str, params: &[u32], json: bool) -> Result<u8, String> {
    let inst = make_instance(id, params)?;
    let g = inst.construct();
    let sym = inst.symbolic_spectrum();
    let numeric: Vec<String> = sym.extra_values_f64().iter().map(|&x| sig12(x)).collect();
    if json {
        println!(
            "{}",
            json!({
                "family": inst,
                "graph6": g.to_graph6(),
                "n": g.n(),
                "edges": g.edge_count(),
                "spectrum": sym,
                "spectrum_display": sym.to_string(),
                "exceptional_values": sym.extra_values_f64(),
            })
        );
    } else {
        println!("family: {inst}");
        println!("graph6: {}", g.to_graph6());
        println!("n: {}  edges: {}", g.n(), g.edge_count());
        println!("spectrum: {sym}");
        println!("exceptional values: {}", numeric.join(", "));
    }
    Ok(0)
}

fn cmd_family_list(n: usize, json: bool) -> Result<u8, String> {
    let instances = catalog_instances(n);
    if json {
        let rows: Vec<_> = instances
            .iter()
            .map(|inst| {
                json!({
                    "family": inst,
                    "graph6": inst.construct().to_graph6(),
                    "spectrum_display": inst.symbolic_spectrum().to_string(),
                })
            })
            .collect();
        println!("{}", json!(rows));
    } else {
        for inst in &instances {
            println!(
                "{}\t{}\t{}",
                inst,
                inst.construct().to_graph6(),
                inst.symbolic_spectrum()
            );
        }
    }
    Ok(0)
}

fn cmd_cospectral(g: &Graph, json: bool) -> Result<(), String> {
    let verdict = is_ds(g).map_err(|e| e.to_string())?;
    let mates = cospectral_mates(g).map_err(|e| e.to_string())?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&verdict).map_err(|e| e.to_string())?
        );
    } else {
        println!("graph: {}", g.to_graph6());
        if mates.is_empty() {
            println!("cospectral mates: none");
        } else {
            println!("cospectral mates ({}):", mates.len());
            for m in &mates {
                println!("  {}  {}", m.description(), m.graph6);
            }
        }
        let reason = match verdict.reason {
            DsReason::UniqueInClass => "unique-in-class",
            DsReason::BipartiteDivisor => "bipartite-divisor",
            DsReason::Theorem6Class => "theorem6-class",
        };
        println!("determined_by_spectrum: {} ({reason})", verdict.is_ds);
        println!();
    }
    Ok(())
}

fn render_summary_text(s: &VerificationSummary) {
    println!("n\tscanned\tin_h\tin_h'\tmatch_failures\tmissing\tcospectral_pairs");
    for r in &s.rows {
        println!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.n,
            r.scanned,
            r.in_h,
            r.in_h_prime,
            r.family_match_failures,
            r.missing_instances,
            r.cospectral_pairs
        );
    }
    println!("total failures: {}", s.total_failures);
}

fn cmd_verify(max_n: usize, input: Option<PathBuf>, long: bool, json: bool) -> Result<u8, String> {
    let summary = match input {
        Some(path) => {
            let file = fs::File::open(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let graphs: Vec<Graph> = ingest_graph6(BufReader::new(file))
                .map(|r| {
                    r.map(|(_, g)| g)
                        .map_err(|e| format!("{}: {e}", path.display()))
                })
                .collect::<Result<_, _>>()?;
            verify_ingested(&graphs, max_n).map_err(|e| e.to_string())?
        }
        None => {
            if max_n >= 8 && !long {
                return Err(
                    "the built-in n=8 sweep walks 2^28 labeled graphs; pass --long to run it"
                        .to_string(),
                );
            }
            verify_classification(&VerifyConfig {
                max_n,
                threads: threads_from_env(),
            })
            .map_err(|e| e.to_string())?
        }
    };
    if json {
        println!(
            "{}",
            serde_json::to_string(&summary).map_err(|e| e.to_string())?
        );
    } else {
        render_summary_text(&summary);
    }
    Ok(if summary.total_failures > 0 { 2 } else { 0 })
}

fn cmd_enumerate(n: usize, in_h_only: bool, long: bool, json: bool) -> Result<u8, String> {
    if n >= 8 && !long {
        return Err("enumerating n=8 walks 2^28 labeled graphs; pass --long to run it".to_string());
    }
    let graphs = if in_h_only {
        enumerate_h_members(n, threads_from_env())
    } else {
        enumerate_nonisomorphic(n, threads_from_env())
    }
    .map_err(|e| e.to_string())?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    for g in graphs {
        if json {
            writeln!(out, "{}", json!({ "graph6": g.to_graph6() })).map_err(|e| e.to_string())?;
        } else {
            writeln!(out, "{}", g.to_graph6()).map_err(|e| e.to_string())?;
        }
    }
    Ok(0)
}
