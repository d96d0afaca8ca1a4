//! `fo2` command-line front end.
//!
//! Exit status: 0 for success and true verdicts, 1 for false verdicts,
//! failed properties, `UNSAT` and `RESOURCE_EXCEEDED`, 2 for usage and
//! input errors.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};

use fo2_core::compressor::{compress, size_table, verify_properties, CompressionConfig, Mode};
use fo2_core::formula::{parse_formula_file, to_scott_normal_form, write_formula_file, Vocabulary};
use fo2_core::satengine::{
    decide_sat, random_structure, random_tournament, size_bound, snf_of_structure, Outcome,
    SearchLimits, DEFAULT_CEILING,
};
use fo2_core::tournament::{from_structure, to_structure, ColoredTournament, DirectionRule};
use fo2_core::typespace::{check_snf, evaluate, expand_model, Assignment, Structure};

pub const CEILING_ENV: &str = "FO2_RESOURCE_CEILING";

#[derive(Debug, Parser)]
#[command(name = "fo2", version, about = "Small models for two-variable logic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the Scott normal form of a formula file.
    Normalize {
        #[arg(short = 'f', long = "file")]
        file: PathBuf,
    },
    /// Evaluate a sentence on a structure.
    Check {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        formula: PathBuf,
    },
    /// Compress a structure or a colored tournament.
    Compress {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "tight")]
        mode: Mode,
        /// Seed for the randomized choices; deterministic when absent.
        #[arg(long)]
        seed: Option<u64>,
        /// Also write the compressed graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Check properties (a)-(e) of a compressed graph against the original.
    Verify {
        #[arg(long)]
        before: PathBuf,
        #[arg(long)]
        after: PathBuf,
        #[arg(long, default_value = "tight")]
        mode: Mode,
    },
    /// Decide satisfiability by bounded model search.
    Sat {
        #[arg(long)]
        formula: PathBuf,
        /// Largest domain size to try.
        #[arg(long)]
        cap: Option<usize>,
        /// Write the model found here.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Search nodes allowed per domain size.
        #[arg(long)]
        ceiling: Option<u64>,
    },
    /// Generate a random colored tournament.
    GenGraph {
        #[arg(long)]
        colors: u64,
        #[arg(long)]
        edgecolors: u64,
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random structure, optionally with a sentence it satisfies.
    GenStructure {
        #[arg(long, value_delimiter = ',')]
        unary: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        binary: Vec<String>,
        #[arg(long)]
        size: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long = "formula-out")]
        formula_out: Option<PathBuf>,
    },
    /// Print the model-size bound for n unary and m binary predicates.
    Bound {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value = "paper")]
        mode: Mode,
    },
}

/// Whether a command's answer was positive.
enum Status {
    Yes,
    No,
}

/// Runs one command; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(Status::Yes) => 0,
        Ok(Status::No) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn read_formula(path: &Path) -> Result<(Vocabulary, fo2_core::Formula)> {
    parse_formula_file(&read(path)?).with_context(|| format!("in {}", path.display()))
}

fn read_structure(path: &Path) -> Result<Structure> {
    read(path)?
        .parse::<Structure>()
        .with_context(|| format!("in {}", path.display()))
}

/// Input that is either a colored tournament or a structure, told apart by
/// the first non-blank line (`colors K` starts a tournament).
enum Input {
    Graph(ColoredTournament),
    Structure(Structure),
}

fn read_input(path: &Path) -> Result<Input> {
    let text = read(path)?;
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.split_whitespace().next() == Some("colors") {
        let g = text
            .parse::<ColoredTournament>()
            .with_context(|| format!("in {}", path.display()))?;
        Ok(Input::Graph(g))
    } else {
        let s = text
            .parse::<Structure>()
            .with_context(|| format!("in {}", path.display()))?;
        Ok(Input::Structure(s))
    }
}

fn read_graph(path: &Path) -> Result<ColoredTournament> {
    let g = match read_input(path)? {
        Input::Graph(g) => g,
        Input::Structure(s) => from_structure(&s, DirectionRule::default())?,
    };
    g.validate()
        .with_context(|| format!("{} is not a valid tournament", path.display()))?;
    Ok(g)
}

fn ceiling(flag: Option<u64>) -> Result<u64> {
    if let Some(c) = flag {
        return Ok(c);
    }
    match std::env::var(CEILING_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{CEILING_ENV} must be a non-negative integer, got `{v}`")),
        Err(_) => Ok(DEFAULT_CEILING),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<Status> {
    match command {
        Command::Normalize { file } => {
            let (vocab, phi) = read_formula(&file)?;
            let snf = to_scott_normal_form(&phi, &vocab)?;
            out.write_all(write_formula_file(&snf.vocabulary, &snf.to_sentence()).as_bytes())?;
            Ok(Status::Yes)
        }
        Command::Check { model, formula } => {
            let s = read_structure(&model)?;
            let (vocab, phi) = read_formula(&formula)?;
            if s.vocabulary() != &vocab {
                bail!(
                    "model vocabulary ({}) differs from formula vocabulary ({})",
                    s.vocabulary(),
                    vocab
                );
            }
            let verdict = evaluate(&phi, &s, Assignment::empty())?;
            writeln!(out, "verdict {}", if verdict { "TRUE" } else { "FALSE" })?;
            if s.size() == 0 {
                writeln!(out, "certificate empty-domain")?;
            } else {
                let snf = to_scott_normal_form(&phi, &vocab)?;
                let outcome = check_snf(&expand_model(&s, &snf)?, &snf)?;
                if outcome.holds() != verdict {
                    bail!("normal-form check disagrees with direct evaluation");
                }
                writeln!(out, "certificate {outcome}")?;
            }
            Ok(if verdict { Status::Yes } else { Status::No })
        }
        Command::Compress {
            model,
            out: target,
            mode,
            seed,
            dot,
        } => {
            let input = read_input(&model)?;
            let g = match &input {
                Input::Graph(g) => g.clone(),
                Input::Structure(s) => from_structure(s, DirectionRule::default())?,
            };
            let cfg = CompressionConfig { mode, seed };
            let h = compress(&g, cfg)?;
            let text = match &input {
                Input::Graph(_) => h.to_string(),
                Input::Structure(s) => to_structure(&h, s.vocabulary())?.to_string(),
            };
            write(&target, &text)?;
            if let Some(path) = dot {
                write(&path, &h.to_dot())?;
            }
            writeln!(out, "mode {mode}")?;
            writeln!(
                out,
                "vertices before={} after={}",
                g.vertex_count(),
                h.vertex_count()
            )?;
            for row in size_table(&g, &h) {
                writeln!(
                    out,
                    "size color={} before={} after={}",
                    row.color, row.before, row.after
                )?;
            }
            Ok(Status::Yes)
        }
        Command::Verify {
            before,
            after,
            mode,
        } => {
            let g = read_graph(&before)?;
            let h = read_graph(&after)?;
            let report = verify_properties(&g, &h, mode)?;
            write!(out, "{report}")?;
            Ok(if report.all_pass() {
                Status::Yes
            } else {
                Status::No
            })
        }
        Command::Sat {
            formula,
            cap,
            witness,
            ceiling: flag,
        } => {
            let (vocab, phi) = read_formula(&formula)?;
            let limits = SearchLimits {
                ceiling: ceiling(flag)?,
            };
            let decision = decide_sat(&phi, &vocab, cap, limits)?;
            write!(out, "{decision}")?;
            match &decision.outcome {
                Outcome::Sat { witness: model, .. } => {
                    if let Some(path) = witness {
                        write(&path, &model.to_string())?;
                    }
                    Ok(Status::Yes)
                }
                Outcome::Unsat | Outcome::ResourceExceeded => Ok(Status::No),
            }
        }
        Command::GenGraph {
            colors,
            edgecolors,
            sizes,
            seed,
            out: target,
        } => {
            let g = random_tournament(colors, edgecolors, &sizes, seed)?;
            emit(out, target.as_deref(), &g.to_string())?;
            Ok(Status::Yes)
        }
        Command::GenStructure {
            unary,
            binary,
            size,
            seed,
            out: target,
            formula_out,
        } => {
            let vocab = Vocabulary::new(unary, binary)?;
            let s = random_structure(&vocab, size, seed);
            if let Some(path) = formula_out {
                let snf = snf_of_structure(&s)?;
                write(&path, &write_formula_file(&vocab, &snf.to_sentence()))?;
            }
            emit(out, target.as_deref(), &s.to_string())?;
            Ok(Status::Yes)
        }
        Command::Bound { n, m, mode } => {
            write!(out, "{}", size_bound(n, m, mode)?)?;
            Ok(Status::Yes)
        }
    }
}

fn emit(out: &mut dyn Write, target: Option<&Path>, text: &str) -> Result<()> {
    match target {
        Some(path) => write(path, text),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}
