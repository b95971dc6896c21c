use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use pfvs_core::embed::{parse_pdg, serialize_pdg, PlanarDigraph};
use pfvs_core::instances::{
    brute_force_packing, brute_force_tau, generate, write_corpus, CorpusEntry, Family,
    GeneratorSpec,
};
use pfvs_core::machinery::max_dicycle_packing;
use pfvs_core::pipeline::{proof_records, solve_record, sweep_cell};
use pfvs_core::report::{render_table, OracleRecord, Record, Status};
use pfvs_core::solvers::{min_feedback_vertex_set, SolverLimits};

#[derive(Parser, Debug)]
#[command(
    name = "pfvs",
    version,
    about = "Feedback sets and dicycle packings on embedded planar digraphs"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Largest vertex count handed to the exact solvers.
    #[arg(long, global = true, default_value_t = 30, value_parser = clap::value_parser!(u64).range(1..))]
    guard_n: u64,
    /// Branch-and-bound node limit.
    #[arg(long, global = true, default_value_t = 200_000, value_parser = clap::value_parser!(u64).range(1..))]
    guard_nodes: u64,
    /// Limit on enumerated dicycles.
    #[arg(long, global = true, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    guard_cycles: u64,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the report (or, for `gen`, the corpus directory) here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print per-instance progress on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Table,
    Records,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve τ, ν, |A|, τ* and check every bound.
    Solve { paths: Vec<PathBuf> },
    /// Trace the region argument on each instance.
    VerifyProof { paths: Vec<PathBuf> },
    /// Generate and solve a grid of (family, n, g) cells.
    Sweep(SweepArgs),
    /// Generate instances as .pdg text or a corpus directory.
    Gen(GenArgs),
    /// Compare the exact solvers with brute force.
    Oracle { paths: Vec<PathBuf> },
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Comma-separated families.
    #[arg(long, default_value = "stacked-cycles", value_delimiter = ',')]
    families: Vec<Family>,
    /// Vertex counts: `a..b` (inclusive), `a`, or a comma list.
    #[arg(long, default_value = "6..20")]
    n: String,
    /// Digirth targets, same syntax as `--n`.
    #[arg(long, default_value = "4..7")]
    g: String,
    /// Instances per cell.
    #[arg(long, default_value_t = 2)]
    seeds: u64,
}

#[derive(Args, Debug)]
struct GenArgs {
    #[arg(long)]
    family: Family,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    g: usize,
    #[arg(long, default_value_t = 1)]
    count: u64,
}

impl RunConfig {
    fn limits(&self) -> SolverLimits {
        SolverLimits {
            max_n: self.guard_n as usize,
            node_guard: self.guard_nodes,
            cycle_guard: self.guard_cycles as usize,
        }
    }
}

fn parse_range(s: &str) -> Result<Vec<usize>> {
    let s = s.trim();
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a
            .trim()
            .parse()
            .with_context(|| format!("bad range `{s}`"))?;
        let b: usize = b
            .trim()
            .parse()
            .with_context(|| format!("bad range `{s}`"))?;
        return Ok((a..=b).collect());
    }
    s.split(',')
        .filter(|x| !x.trim().is_empty())
        .map(|x| x.trim().parse().with_context(|| format!("bad value `{x}`")))
        .collect()
}

/// Files given directly, plus the `.pdg` files of any directory, sorted.
fn expand(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            let mut inner: Vec<PathBuf> = fs::read_dir(p)
                .with_context(|| format!("reading {}", p.display()))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|x| x.extension().is_some_and(|e| e == "pdg"))
                .collect();
            inner.sort();
            out.extend(inner);
        } else {
            out.push(p.clone());
        }
    }
    if out.is_empty() {
        bail!("no input files");
    }
    Ok(out)
}

fn instance_id(p: &Path) -> String {
    p.file_stem().map_or_else(
        || p.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

/// Parsed inputs plus a count of the ones that failed; their diagnostics are
/// already printed.
struct Loaded {
    graphs: Vec<(String, PlanarDigraph)>,
    failed: usize,
}

fn load(paths: &[PathBuf]) -> Result<Loaded> {
    let mut graphs = Vec::new();
    let mut failed = 0;
    for p in expand(paths)? {
        let parsed = fs::read_to_string(&p)
            .map_err(anyhow::Error::from)
            .and_then(|t| parse_pdg(&t).map_err(anyhow::Error::from));
        match parsed {
            Ok(g) => graphs.push((instance_id(&p), g)),
            Err(e) => {
                eprintln!("error: {}: {e}", p.display());
                failed += 1;
            }
        }
    }
    Ok(Loaded { graphs, failed })
}

fn emit(config: &RunConfig, records: &[Record]) -> Result<()> {
    let text = match config.format {
        Format::Table => render_table(records),
        Format::Records => records.iter().map(|r| r.to_line() + "\n").collect(),
    };
    match &config.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(stdout.flush()?)
        }
    }
}

/// 1 if any check failed, else 2 if any input could not be processed.
fn exit_code(records: &[Record], input_errors: usize) -> ExitCode {
    for r in records {
        if let Record::Solve(s) = r {
            if s.gw_candidate {
                eprintln!(
                    "GW candidate: {} tau={} tau*={}",
                    s.id,
                    s.tau.unwrap_or_default(),
                    s.tau_star.as_ref().map_or("-".into(), |x| x.to_string())
                );
            }
        }
    }
    let failed: Vec<&Record> = records
        .iter()
        .filter(|r| r.status() == Status::Ok && !r.passes())
        .collect();
    for r in &failed {
        eprintln!("FAILED: {}", r.to_line());
    }
    let errors = input_errors
        + records
            .iter()
            .filter(|r| r.status() == Status::Error)
            .count();
    if !failed.is_empty() {
        ExitCode::from(1)
    } else if errors > 0 {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn progress(config: &RunConfig, id: &str) {
    if config.verbose > 0 {
        eprintln!("{id}");
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = cli.config;
    let limits = config.limits();
    match cli.command {
        Command::Solve { paths } => {
            let loaded = load(&paths)?;
            let records: Vec<Record> = loaded
                .graphs
                .par_iter()
                .map(|(id, g)| {
                    progress(&config, id);
                    Record::Solve(solve_record(id, g, limits))
                })
                .collect();
            for r in &records {
                if let Record::Solve(s) = r {
                    if s.status != Status::Ok {
                        eprintln!(
                            "{}: {}: {}",
                            s.status,
                            s.id,
                            s.message.clone().unwrap_or_default()
                        );
                    }
                }
            }
            emit(&config, &records)?;
            Ok(exit_code(&records, loaded.failed))
        }
        Command::VerifyProof { paths } => {
            let loaded = load(&paths)?;
            let records: Vec<Record> = loaded
                .graphs
                .par_iter()
                .map(|(id, g)| {
                    progress(&config, id);
                    proof_records(id, g, limits)
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect();
            for r in &records {
                if let Record::Proof(p) = r {
                    if p.status != Status::Ok {
                        eprintln!(
                            "{}: {}: {}",
                            p.status,
                            p.id,
                            p.message.clone().unwrap_or_default()
                        );
                    }
                }
            }
            emit(&config, &records)?;
            Ok(exit_code(&records, loaded.failed))
        }
        Command::Sweep(args) => {
            let ns = parse_range(&args.n)?;
            let gs = parse_range(&args.g)?;
            let mut cells = Vec::new();
            for &family in &args.families {
                for &g in &gs {
                    for &n in &ns {
                        cells.push((family, n, g));
                    }
                }
            }
            let records: Vec<Record> = cells
                .par_iter()
                .map(|&(family, n, g)| {
                    progress(&config, &format!("{family} n={n} g={g}"));
                    let seeds: Vec<u64> = (0..args.seeds)
                        .map(|s| {
                            config
                                .seed
                                .wrapping_mul(1_000_003)
                                .wrapping_add((g * 10_000 + n * 100) as u64 + s)
                        })
                        .collect();
                    Record::Sweep(sweep_cell(family, n, g, &seeds, limits).0)
                })
                .collect();
            emit(&config, &records)?;
            Ok(exit_code(&records, 0))
        }
        Command::Gen(args) => {
            let mut entries = Vec::new();
            for s in 0..args.count {
                let spec = GeneratorSpec {
                    family: args.family,
                    n_target: args.n,
                    g_target: args.g,
                    seed: config.seed.wrapping_add(s),
                };
                let g = generate(&spec).with_context(|| format!("generating {spec:?}"))?;
                let id = format!(
                    "{}-n{}-g{}-s{}",
                    spec.family, spec.n_target, spec.g_target, spec.seed
                );
                entries.push((id, spec, g));
            }
            match &config.out {
                Some(dir) => {
                    let corpus: Vec<CorpusEntry> = entries
                        .into_par_iter()
                        .map(|(id, spec, g)| CorpusEntry::from_graph(id, spec, &g))
                        .collect();
                    write_corpus(dir, &corpus)?;
                    eprintln!("wrote {} instances to {}", corpus.len(), dir.display());
                }
                None => {
                    let mut stdout = std::io::stdout().lock();
                    for (id, _, g) in entries {
                        writeln!(stdout, "# {id}")?;
                        stdout.write_all(serialize_pdg(&g).as_bytes())?;
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle { paths } => {
            let loaded = load(&paths)?;
            let records: Vec<Record> = loaded
                .graphs
                .par_iter()
                .map(|(id, g)| {
                    progress(&config, id);
                    let tau_oracle = brute_force_tau(g).ok();
                    let nu_oracle = brute_force_packing(g).ok();
                    let tau_solver = min_feedback_vertex_set(g, limits).ok().map(|r| r.size);
                    let nu_solver = max_dicycle_packing(g, limits.packing())
                        .ok()
                        .map(|c| c.len());
                    let same = |a: Option<usize>, b: Option<usize>| match (a, b) {
                        (Some(x), Some(y)) => x == y,
                        _ => true,
                    };
                    Record::Oracle(OracleRecord {
                        id: id.clone(),
                        n: g.n(),
                        agree: same(tau_oracle, tau_solver) && same(nu_oracle, nu_solver),
                        tau_oracle,
                        tau_solver,
                        nu_oracle,
                        nu_solver,
                    })
                })
                .collect();
            emit(&config, &records)?;
            Ok(exit_code(&records, loaded.failed))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
