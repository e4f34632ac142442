use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use fillscope_core::io::{self, Document, RunReport};
use fillscope_core::{
    barycentric_subdivide, build_cover, chain_profile, dehn_function, fill_volume,
    homology_summary, presentation_complex, quasi_equivalent_fit, to_chain_complex, ChainComplex,
    Error, FillBudget, FillLimits, FillStatus, ProfileTable, SimplicialComplex,
};

const EXIT_OTHER: u8 = 1;
const EXIT_PARSE: u8 = 3;
const EXIT_INVARIANT: u8 = 4;
const EXIT_PARTIAL: u8 = 5;

/// Exact chain filling volumes, isoperimetric profiles, covers and Dehn functions.
///
/// FILE arguments are paths or built-in names (see `fillscope example --list`).
#[derive(Debug, Parser)]
#[command(name = "fillscope", version)]
struct Cli {
    /// Also write a JSON run report here.
    #[arg(long, global = true)]
    report: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate a complex or report its homology.
    #[command(subcommand)]
    Complex(ComplexCmd),
    /// Chain filling volume of a (q-1)-chain by q-chains.
    Fill {
        file: String,
        #[arg(long = "dim")]
        q: usize,
        /// `cell=coef;...`, or `d:cell=coef;...` for the boundary of a q-chain.
        #[arg(long, allow_hyphen_values = true)]
        chain: String,
        /// Branch-and-bound node budget.
        #[arg(long, default_value_t = FillBudget::default().max_nodes)]
        budget: usize,
    },
    /// Chain profiles and presentation Dehn functions, as CSV.
    #[command(subcommand)]
    Profile(ProfileCmd),
    /// Finite covers from edge permutations.
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Barycentric subdivision of a simplicial complex.
    Subdivide { file: String },
    /// Quasi-equivalence fits between sampled profiles.
    #[command(subcommand)]
    Fit(FitCmd),
    /// Print a built-in example.
    Example {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ComplexCmd {
    Check { file: String },
    Homology { file: String },
}

#[derive(Debug, Subcommand)]
enum ProfileCmd {
    Chain {
        file: String,
        #[arg(long = "dim")]
        q: usize,
        #[arg(long)]
        nmax: usize,
        #[arg(long, default_value_t = FillBudget::default().max_nodes)]
        budget: usize,
    },
    Dehn {
        file: String,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(Debug, Args)]
struct LimitArgs {
    /// Longest intermediate word.
    #[arg(long, default_value_t = FillLimits::default().max_word_len)]
    maxlen: usize,
    /// Most relator applications searched.
    #[arg(long, default_value_t = FillLimits::default().max_cost)]
    maxcost: usize,
    /// Most distinct words visited per search.
    #[arg(long, default_value_t = FillLimits::default().max_states)]
    maxstates: usize,
}

#[derive(Debug, Subcommand)]
enum CoverCmd {
    Build {
        file: String,
        #[arg(long)]
        assignment: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
enum FitCmd {
    Qequiv {
        csv1: PathBuf,
        csv2: PathBuf,
        #[arg(long, default_value = "A=1..8;B=1..8;C=0..8;D=0..8")]
        grid: String,
    },
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<bool, Failure>;

fn read_path(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

/// Reads a path, falling back to a built-in name.
fn load(file: &str) -> Result<(Document, String), Failure> {
    let path = Path::new(file);
    let text = if path.exists() {
        read_path(path)?
    } else {
        io::builtin_text(file)
            .map_err(|_| Failure::Io(format!("{file}: no such file or built-in example")))?
    };
    Ok((io::parse_document(&text)?, text))
}

fn as_chain_complex(doc: Document) -> ChainComplex {
    match doc {
        Document::Complex(cc) => cc,
        Document::Simplicial(sc) => to_chain_complex(&sc),
        Document::Presentation(p) => presentation_complex(&p),
    }
}

fn as_simplicial(doc: Document, file: &str) -> Result<SimplicialComplex, Failure> {
    match doc {
        Document::Simplicial(sc) => Ok(sc),
        _ => Err(Failure::Io(format!(
            "{file}: expected a simplicial complex"
        ))),
    }
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

fn finish_profile(table: &ProfileTable, report: &mut RunReport) -> bool {
    print!("{}", io::emit_profile_csv(table));
    let (payload, caveats) = io::profile_payload(table);
    for c in &caveats {
        eprintln!("caveat: {c}");
    }
    report.result = payload;
    report.caveats = caveats;
    table.all_exact()
}

fn run(cli: &Cli, report: &mut RunReport) -> Outcome {
    match &cli.command {
        Command::Complex(ComplexCmd::Check { file }) => {
            let (doc, text) = load(file)?;
            *report = RunReport::new("complex check", &[text.as_bytes()]);
            let cc = as_chain_complex(doc);
            println!(
                "ok: cells per dimension {:?}, euler characteristic {}",
                cc.cell_counts(),
                cc.euler_characteristic()
            );
            report.result = serde_json::json!({
                "cells": cc.cell_counts(),
                "euler_characteristic": cc.euler_characteristic(),
            });
        }
        Command::Complex(ComplexCmd::Homology { file }) => {
            let (doc, text) = load(file)?;
            *report = RunReport::new("complex homology", &[text.as_bytes()]);
            let cc = as_chain_complex(doc);
            let mut rows = Vec::new();
            for d in 0..=cc.top_dim() {
                let h = homology_summary(&cc, d)?;
                let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
                println!("H{d}: rank {}, torsion [{}]", h.betti, torsion.join(", "));
                rows.push(serde_json::json!({ "dim": d, "rank": h.betti, "torsion": torsion }));
            }
            report.result = serde_json::Value::Array(rows);
        }
        Command::Fill {
            file,
            q,
            chain,
            budget,
        } => {
            let (doc, text) = load(file)?;
            *report = RunReport::new("fill", &[text.as_bytes(), chain.as_bytes()]);
            let cc = as_chain_complex(doc);
            let c = io::parse_chain_spec(chain)?.resolve(&cc, *q)?;
            let budget = FillBudget { max_nodes: *budget };
            report
                .budgets
                .insert("max_nodes".into(), budget.max_nodes.to_string());
            let t = Instant::now();
            let r = fill_volume(&cc, *q, &c, budget)?;
            report.timings_ms.insert("fill".into(), ms(t));
            let (payload, caveats) = io::fill_payload(&c, &r);
            report.result = payload;
            report.caveats = caveats;
            print!("{}", io::emit_report(report));
            return Ok(!matches!(r.status, FillStatus::LowerBound(_)));
        }
        Command::Profile(ProfileCmd::Chain {
            file,
            q,
            nmax,
            budget,
        }) => {
            let (doc, text) = load(file)?;
            *report = RunReport::new("profile chain", &[text.as_bytes()]);
            let cc = as_chain_complex(doc);
            let t = Instant::now();
            let mut table = chain_profile(&cc, *q, *nmax, FillBudget { max_nodes: *budget })?;
            report.timings_ms.insert("profile".into(), ms(t));
            table.meta.source = file.clone();
            report.budgets.extend(table.meta.budgets.iter().cloned());
            return Ok(finish_profile(&table, report));
        }
        Command::Profile(ProfileCmd::Dehn { file, nmax, limits }) => {
            let (doc, text) = load(file)?;
            *report = RunReport::new("profile dehn", &[text.as_bytes()]);
            let Document::Presentation(p) = doc else {
                return Err(Failure::Io(format!("{file}: expected a presentation")));
            };
            let limits = FillLimits {
                max_word_len: limits.maxlen,
                max_cost: limits.maxcost,
                max_states: limits.maxstates,
            };
            let t = Instant::now();
            let mut table = dehn_function(&p, *nmax, limits)?;
            report.timings_ms.insert("profile".into(), ms(t));
            table.meta.source = file.clone();
            report.budgets.extend(table.meta.budgets.iter().cloned());
            let exact = finish_profile(&table, report);
            report.caveats.push(format!(
                "word searches never pass through words longer than {}; values are exact relative to that cap",
                limits.max_word_len
            ));
            return Ok(exact);
        }
        Command::Cover(CoverCmd::Build { file, assignment }) => {
            let (doc, text) = load(file)?;
            let sc = as_simplicial(doc, file)?;
            let atext = read_path(assignment)?;
            *report = RunReport::new("cover build", &[text.as_bytes(), atext.as_bytes()]);
            let pa = io::parse_assignment(&atext, &sc)?;
            let cover = build_cover(&sc, &pa)?;
            let counts = cover.complex.counts();
            let chi = cover.complex.euler_characteristic();
            eprintln!(
                "{}-sheeted cover: cells per dimension {counts:?}, euler characteristic {chi}, {} component(s)",
                cover.fiber_size,
                cover.complex.component_count()
            );
            print!("{}", io::emit_simplicial(&cover.complex));
            report.result = serde_json::json!({
                "sheets": cover.fiber_size,
                "cells": counts,
                "euler_characteristic": chi,
                "base_euler_characteristic": sc.euler_characteristic(),
                "components": cover.complex.component_count(),
                "transitive_monodromy": pa.is_transitive(&sc).unwrap_or(false),
            });
        }
        Command::Subdivide { file } => {
            let (doc, text) = load(file)?;
            *report = RunReport::new("subdivide", &[text.as_bytes()]);
            let sd = barycentric_subdivide(&as_simplicial(doc, file)?);
            print!("{}", io::emit_simplicial(&sd));
            report.result = serde_json::json!({ "cells": sd.counts() });
        }
        Command::Fit(FitCmd::Qequiv { csv1, csv2, grid }) => {
            let (t1, t2) = (read_path(csv1)?, read_path(csv2)?);
            *report = RunReport::new(
                "fit qequiv",
                &[t1.as_bytes(), t2.as_bytes(), grid.as_bytes()],
            );
            let f = io::parse_profile_csv(&t1)?;
            let g = io::parse_profile_csv(&t2)?;
            let grid = io::parse_grid_spec(grid)?;
            let t = Instant::now();
            let fit = quasi_equivalent_fit(&f, &g, &grid)?;
            report.timings_ms.insert("fit".into(), ms(t));
            let (payload, caveats) = io::witness_payload(fit.as_ref(), &grid);
            report.result = payload;
            report.caveats = caveats;
            print!("{}", io::emit_report(report));
        }
        Command::Example { name, list } => {
            if *list {
                for n in io::builtin_names() {
                    println!("{n}");
                }
            } else if let Some(name) = name {
                print!("{}", io::builtin_text(name)?);
            }
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("FILLSCOPE_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // fails only if a pool already exists
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    let mut report = RunReport::new("", &[]);
    let code = match run(&cli, &mut report) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_PARTIAL),
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_OTHER);
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(match e {
                Error::Parse { .. } => EXIT_PARSE,
                e if e.is_invariant_violation() => EXIT_INVARIANT,
                _ => EXIT_OTHER,
            });
        }
    };
    if let Some(path) = &cli.report {
        if let Err(e) = std::fs::write(path, io::emit_report(&report)) {
            eprintln!("error: {}: {e}", path.display());
            return ExitCode::from(EXIT_OTHER);
        }
    }
    code
}
