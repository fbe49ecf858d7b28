//! The `resetlab` command line: generate automata from the built-in series,
//! analyse user-supplied automata, and run the replication suite.
//!
//! Exit codes: 0 on success, 1 when a checked claim or queried property
//! fails, 2 on usage or input errors.

pub mod document;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use resetlab::extension::{extension_profile, image_extension_bound, is_irreducibly_synchronizing};
use resetlab::replication::{run_suite, SuiteConfig};
use resetlab::reset::{default_layer_limit, inverse_layers, reset_length_with_limit};
use resetlab::{
    reachable_images, shortest_avoiding_word, shortest_extending_word, shortest_reset_word,
    Family, FamilySpec, StateSet,
};
use serde_json::json;

pub use document::{Automaton, DfaDocument};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: io::Error },
    #[error(transparent)]
    Analysis(#[from] resetlab::Error),
    #[error("output failed: {0}")]
    Output(#[from] io::Error),
}

#[derive(Debug, Parser)]
#[command(name = "resetlab", version, about = "Synchronizing automata: extremal series and exact analyses")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

/// An automaton file (JSON or text, `-` for stdin) or a built-in series
/// member written `family:param`, e.g. `a-odd:5`.
#[derive(Debug, clap::Args)]
struct Input {
    input: String,
    /// Print machine-readable JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a member of a built-in series.
    Gen {
        /// a-odd, a-even, conservative, b-series (b), m-series (m), m-prime, cerny.
        #[arg(long)]
        family: String,
        /// `m` for the a-odd, a-even, conservative and b-series families,
        /// the number of states otherwise.
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Reset length by both methods, reset word, strong connectivity and
    /// irreducibility.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Iteration limit for the inverse layers.
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Shortest word whose preimage of the given subset is larger.
    Extend {
        #[command(flatten)]
        input: Input,
        /// Comma-separated 1-based states, e.g. 6,7,8,9.
        #[arg(long)]
        set: String,
    },
    /// Longest shortest-extending word over all non-empty proper subsets.
    Profile {
        #[command(flatten)]
        input: Input,
    },
    /// Shortest word whose image of all states misses the given state.
    Avoid {
        #[command(flatten)]
        input: Input,
        /// 1-based state.
        #[arg(long)]
        state: usize,
    },
    /// All images of the full state set.
    Images {
        #[command(flatten)]
        input: Input,
    },
    /// Worst shortest image-extension over all reachable images.
    Conjecture {
        #[command(flatten)]
        input: Input,
    },
    /// The inverse-BFS layer families.
    Layers {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        limit: Option<usize>,
        /// Print every layer, not only the summary.
        #[arg(long)]
        trace: bool,
    },
    /// Check every numeric claim about the built-in series.
    VerifyPaper {
        /// Largest `m` for the two-cycle series (at most 8).
        #[arg(long, default_value_t = 8)]
        max_m: usize,
        /// Largest `n` for the ternary series (at most 12).
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Also write the full report to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

/// Runs the command line with process stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(args, &mut io::stdout().lock(), &mut io::stderr().lock())
}

pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn parse_family(text: &str, size: usize) -> Result<Automaton, CliError> {
    let family: Family = text.parse()?;
    let dfa = FamilySpec::new(family, size)?.build()?;
    Ok(Automaton::with_default_names(dfa))
}

fn load(input: &str) -> Result<Automaton, CliError> {
    if input == "-" {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text).map_err(|source| CliError::Read {
            path: "stdin".into(),
            source,
        })?;
        return Automaton::parse(&text);
    }
    if let Some((family, size)) = input.split_once(':') {
        if family.parse::<Family>().is_ok() {
            let size = size
                .parse()
                .map_err(|_| CliError::Input(format!("bad family parameter '{size}'")))?;
            return parse_family(family, size);
        }
    }
    let text = fs::read_to_string(input).map_err(|source| CliError::Read {
        path: input.into(),
        source,
    })?;
    Automaton::parse(&text)
}

/// Comma-separated 1-based states.
fn parse_set(text: &str, n: usize) -> Result<StateSet, CliError> {
    let mut set = StateSet::EMPTY;
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let q: usize = tok
            .parse()
            .map_err(|_| CliError::Input(format!("bad state '{tok}' in --set")))?;
        if q == 0 || q > n {
            return Err(CliError::Input(format!("state {q} is outside 1..={n}")));
        }
        set.insert(q - 1);
    }
    Ok(set)
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<(), CliError> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("values serialize"))?;
    Ok(())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Gen {
            family,
            size,
            format,
            output,
        } => {
            let automaton = parse_family(&family, size)?;
            let text = match format {
                Format::Json => automaton.to_json() + "\n",
                Format::Text => automaton.to_text(),
                Format::Dot => automaton.to_dot(),
            };
            match output {
                Some(path) => fs::write(&path, text).map_err(|source| CliError::Write {
                    path: path.display().to_string(),
                    source,
                })?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(0)
        }
        Command::Analyze { input, limit } => analyze(&input, limit, out),
        Command::Extend { input, set } => {
            let a = load(&input.input)?;
            let set = parse_set(&set, a.dfa.n())?;
            let word = shortest_extending_word(&a.dfa, set)?;
            if input.json {
                emit_json(out, &json!({
                    "set": set,
                    "length": word.as_ref().map(|w| w.len()),
                    "word": word.as_ref().map(|w| a.render(w)),
                    "preimage": word.as_ref().map(|w| a.dfa.preimage_word(set, w)),
                }))?;
            } else if let Some(w) = &word {
                writeln!(out, "set:      {set}")?;
                writeln!(out, "length:   {}", w.len())?;
                writeln!(out, "word:     {}", a.render(w))?;
                writeln!(out, "preimage: {}", a.dfa.preimage_word(set, w))?;
            } else {
                writeln!(out, "{set} has no extending word")?;
            }
            Ok(if word.is_some() { 0 } else { 1 })
        }
        Command::Profile { input } => {
            let a = load(&input.input)?;
            let report = extension_profile(&a.dfa)?;
            if input.json {
                emit_json(out, &json!({
                    "max_length": report.max_length,
                    "witness_set": report.witness_set,
                    "witness_word": a.render(&report.witness_word),
                    "per_cardinality_max": report.per_cardinality_max,
                }))?;
            } else {
                writeln!(out, "max length:  {}", report.max_length)?;
                writeln!(out, "witness set: {}", report.witness_set)?;
                writeln!(out, "witness:     {}", a.render(&report.witness_word))?;
                for (c, m) in report.per_cardinality_max.iter().enumerate() {
                    writeln!(out, "  |S| = {:<3} max {m}", c + 1)?;
                }
            }
            Ok(0)
        }
        Command::Avoid { input, state } => {
            let a = load(&input.input)?;
            if state == 0 || state > a.dfa.n() {
                return Err(CliError::Input(format!("state {state} is outside 1..={}", a.dfa.n())));
            }
            let word = shortest_avoiding_word(&a.dfa, state - 1)?;
            if input.json {
                emit_json(out, &json!({
                    "state": state,
                    "length": word.as_ref().map(|w| w.len()),
                    "word": word.as_ref().map(|w| a.render(w)),
                }))?;
            } else if let Some(w) = &word {
                writeln!(out, "length: {}", w.len())?;
                writeln!(out, "word:   {}", a.render(w))?;
                writeln!(out, "image:  {}", a.dfa.image(a.dfa.full_set(), w))?;
            } else {
                writeln!(out, "every image contains q{state}")?;
            }
            Ok(if word.is_some() { 0 } else { 1 })
        }
        Command::Images { input } => {
            let a = load(&input.input)?;
            let mut images = reachable_images(&a.dfa);
            images.sort_by_key(|s| (std::cmp::Reverse(s.len()), *s));
            if input.json {
                emit_json(out, &json!({ "count": images.len(), "images": images }))?;
            } else {
                writeln!(out, "{} reachable images", images.len())?;
                for s in images {
                    writeln!(out, "  {s}")?;
                }
            }
            Ok(0)
        }
        Command::Conjecture { input } => {
            let a = load(&input.input)?;
            let r = image_extension_bound(&a.dfa)?;
            if input.json {
                let mut value = serde_json::to_value(&r).expect("reports serialize");
                value["worst_word"] = json!(a.render(&r.worst_word));
                value["constant_witness"] = json!(r.constant_witness.to_string());
                emit_json(out, &value)?;
            } else {
                writeln!(out, "reachable images:  {}", r.reachable_image_count)?;
                writeln!(out, "worst set:         {}", r.worst_s)?;
                writeln!(out, "worst length:      {}", r.worst_length)?;
                writeln!(out, "length / n:        {}", r.constant_witness)?;
                writeln!(out, "word:              {}", a.render(&r.worst_word))?;
                writeln!(out, "preimage:          {}", r.worst_preimage)?;
                writeln!(out, "larger image:      {}", r.worst_target)?;
                writeln!(out, "preimage is image: {}", r.worst_preimage_is_image)?;
            }
            Ok(0)
        }
        Command::Layers { input, limit, trace } => {
            let a = load(&input.input)?;
            let limit = limit.unwrap_or_else(|| default_layer_limit(a.dfa.n()));
            let t = inverse_layers(&a.dfa, limit);
            if input.json {
                emit_json(out, &serde_json::to_value(&t).expect("traces serialize"))?;
            } else {
                if trace {
                    for (i, layer) in t.layers.iter().enumerate() {
                        let sets: Vec<String> = layer.iter().map(ToString::to_string).collect();
                        writeln!(out, "L_{i}: {}", sets.join(" "))?;
                    }
                }
                match t.found_at {
                    Some(i) => writeln!(out, "full set first appears in L_{i}")?,
                    None if t.truncated => writeln!(out, "full set not reached within {limit} layers")?,
                    None => writeln!(out, "layers die out: not synchronizing")?,
                }
            }
            Ok(0)
        }
        Command::VerifyPaper { max_m, max_n, json } => {
            let results = run_suite(SuiteConfig { max_m, max_n });
            for r in &results {
                writeln!(out, "{r}")?;
            }
            let failed: Vec<_> = results.iter().filter(|r| !r.is_ok()).collect();
            writeln!(out, "{} claims, {} failed", results.len(), failed.len())?;
            for r in &failed {
                writeln!(
                    out,
                    "FAILED {} param={}: expected {}, computed {}",
                    r.claim_id, r.parameter, r.expected, r.computed
                )?;
            }
            if let Some(path) = json {
                let text = serde_json::to_string_pretty(&results).expect("results serialize");
                fs::write(&path, text + "\n").map_err(|source| CliError::Write {
                    path: path.display().to_string(),
                    source,
                })?;
            }
            Ok(if failed.is_empty() { 0 } else { 1 })
        }
    }
}

fn analyze(input: &Input, limit: Option<usize>, out: &mut dyn Write) -> Result<i32, CliError> {
    let a = load(&input.input)?;
    let dfa = &a.dfa;
    let limit = limit.unwrap_or_else(|| default_layer_limit(dfa.n()));
    let synchronizing = dfa.is_synchronizing();
    let length = reset_length_with_limit(dfa, limit)?;
    let word = shortest_reset_word(dfa);
    let irreducible = if synchronizing {
        Some(is_irreducibly_synchronizing(dfa)?)
    } else {
        None
    };
    let connected = dfa.is_strongly_connected();
    if input.json {
        emit_json(out, &json!({
            "n": dfa.n(),
            "k": dfa.k(),
            "synchronizing": synchronizing,
            "strongly_connected": connected,
            "reset_length": length,
            "reset_word": word.as_ref().map(|w| a.render(w)),
            "irreducibly_synchronizing": irreducible,
        }))?;
    } else {
        writeln!(out, "states:              {}", dfa.n())?;
        writeln!(out, "letters:             {}", a.alphabet.iter().collect::<String>())?;
        writeln!(out, "synchronizing:       {synchronizing}")?;
        writeln!(out, "strongly connected:  {connected}")?;
        if let (Some(len), Some(w)) = (length, &word) {
            writeln!(out, "reset length:        {len}")?;
            writeln!(out, "reset word:          {}", a.render(w))?;
        }
        if let Some(irr) = irreducible {
            writeln!(out, "irreducible:         {irr}")?;
        }
    }
    Ok(0)
}
