use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use wdr_core::classify::{corpus_verify, search_all_digraphs, search_circulants};
use wdr_core::report::{render_analysis, render_classification, render_corpus, to_json};
use wdr_core::{analyze, catalog, enumerate_circulants, parse_input, Digraph, Error, Format};

const EXIT_IO: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_COUNTEREXAMPLE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "wdr",
    about = "Analyze digraphs by their two-way distance schemes"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = OutputFormat::Text, global = true)]
    format: OutputFormat,
    /// Accept undirected inputs.
    #[arg(long, global = true)]
    allow_undirected: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one digraph: an edge-list file, `-` for stdin, or a `cay:` spec.
    Analyze { input: String },
    /// Analyze the nine diameter-2 catalog digraphs.
    Catalog,
    #[command(subcommand)]
    Search(Search),
    #[command(subcommand)]
    Verify(Verify),
}

#[derive(Subcommand)]
enum Search {
    /// Circulants over Z_n for n in [min, max].
    Circulants {
        #[arg(long)]
        min: usize,
        #[arg(long)]
        max: usize,
        #[arg(long)]
        diameter: Option<u32>,
    },
    /// Every simple digraph with at most `max` vertices.
    All {
        #[arg(long)]
        max: usize,
        #[arg(long)]
        diameter: Option<u32>,
        /// Run the full analysis on every candidate.
        #[arg(long)]
        no_prune: bool,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Run the structural checks over a set of digraphs.
    Corpus {
        inputs: Vec<String>,
        /// Include the catalog digraphs.
        #[arg(long)]
        catalog: bool,
        /// Include every non-undirected circulant of order 3..=N.
        #[arg(long)]
        circulants_max: Option<usize>,
    },
}

fn read_input(arg: &str, allow_undirected: bool) -> Result<Digraph, (u8, String)> {
    let text = if arg.starts_with("cay:") {
        arg.to_string()
    } else if arg == "-" {
        std::io::read_to_string(std::io::stdin()).map_err(|e| (EXIT_IO, format!("stdin: {e}")))?
    } else {
        std::fs::read_to_string(PathBuf::from(arg)).map_err(|e| (EXIT_IO, format!("{arg}: {e}")))?
    };
    parse_input(&text, allow_undirected).map_err(|e| (EXIT_PARSE, format!("{arg}: {e}")))
}

fn precondition(e: Error) -> (u8, String) {
    (EXIT_PRECONDITION, e.to_string())
}

fn run(cli: Cli) -> Result<bool, (u8, String)> {
    let format = match cli.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let start = Instant::now();
    let ok = match cli.command {
        Command::Analyze { input } => {
            let d = read_input(&input, cli.allow_undirected)?;
            let r = analyze(&d).map_err(precondition)?;
            print!("{}", render_analysis(&r, format));
            r.failures().is_empty()
        }
        Command::Catalog => {
            let mut ok = true;
            let mut reports = Vec::new();
            for e in catalog() {
                let r = analyze(&e.digraph()).map_err(precondition)?;
                ok &= r.failures().is_empty() && r.hypotheses_hold() && r.diameter == 2;
                reports.push((e.label, e.spec.to_string(), r));
            }
            match format {
                Format::Json => {
                    let doc: Vec<_> = reports
                        .iter()
                        .map(|(l, s, r)| serde_json::json!({ "label": l, "spec": s, "report": r }))
                        .collect();
                    print!("{}", to_json(&doc));
                }
                Format::Text => {
                    for (l, s, r) in &reports {
                        println!("({l}) {s}");
                        for line in render_analysis(r, Format::Text).lines() {
                            println!("  {line}");
                        }
                    }
                }
            }
            ok
        }
        Command::Search(Search::Circulants { min, max, diameter }) => {
            let r = search_circulants(min, max, diameter).map_err(precondition)?;
            print!("{}", render_classification(&r, format));
            r.survivors.iter().all(|s| s.report.failures().is_empty())
        }
        Command::Search(Search::All {
            max,
            diameter,
            no_prune,
        }) => {
            let r = search_all_digraphs(max, diameter, !no_prune).map_err(precondition)?;
            print!("{}", render_classification(&r, format));
            r.survivors.iter().all(|s| s.report.failures().is_empty())
        }
        Command::Verify(Verify::Corpus {
            inputs,
            catalog: with_catalog,
            circulants_max,
        }) => {
            let mut members = Vec::new();
            for arg in &inputs {
                members.push((arg.clone(), read_input(arg, cli.allow_undirected)?));
            }
            if with_catalog {
                members.extend(
                    catalog()
                        .into_iter()
                        .map(|e| (e.spec.to_string(), e.digraph())),
                );
            }
            if let Some(n) = circulants_max {
                let specs = enumerate_circulants(3, n, true).map_err(precondition)?;
                members.extend(specs.map(|s| (s.to_string(), s.digraph())));
            }
            let v = corpus_verify(members);
            print!("{}", render_corpus(&v, format));
            v.passed()
        }
    };
    eprintln!(
        "elapsed: {:.3}s workers: {}",
        start.elapsed().as_secs_f64(),
        rayon::current_num_threads()
    );
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("WDR_WORKERS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("worker pool: {e}");
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_COUNTEREXAMPLE),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
