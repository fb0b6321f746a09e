//! The `twocnf` command line.
//!
//! Exit codes: 0 success or SAT, 20 UNSAT, 64 usage, 65 malformed input,
//! 66 unreadable input file, 70 cap exceeded or internal failure, 74 write
//! failure.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use twocnf_core::enumerate::DEFAULT_EDGE_CAP;
use twocnf_core::fixtures::{fixture, fixture_names};
use twocnf_core::formula::Var;
use twocnf_core::graph::SimpleGraph;
use twocnf_core::minors::{find_topological_minor, MinorError, PatternId, DEFAULT_HOST_CAP};
use twocnf_core::sat::{solve, SolveResult};
use twocnf_core::simplify::to_simple;

use crate::dimacs::{emit_dimacs, parse_dimacs};
use crate::dot::to_dot;
use crate::edgelist::{emit_edge_list, parse_edge_list};
use crate::parallel::census_parallel;
use crate::report::{analyze, census_text, embedding_lines, witness_dimacs, CensusJson, MinorJson, Subject, FORMAT_VERSION};

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNSAT: i32 = 20;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

#[derive(Parser, Debug)]
#[command(name = "twocnf", version, about = "Simplify and solve 2-CNF formulas and decide which graphs carry an unsatisfiable one")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simplify a DIMACS formula and print the trace and result.
    Reduce {
        /// DIMACS file; `-` or absent reads stdin.
        input: Option<PathBuf>,
    },
    /// Decide a DIMACS formula.
    Solve { input: Option<PathBuf> },
    /// Decide whether a graph (or a formula's simplified graph) supports an
    /// unsatisfiable formula.
    Analyze {
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        fixture: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Auto)]
        format: Format,
        /// Print an unsatisfiable witness in DIMACS.
        #[arg(long)]
        witness: bool,
        /// Write the witness to this file instead of stdout.
        #[arg(long)]
        witness_out: Option<PathBuf>,
        /// Write the graph as DOT, with the embedding highlighted.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Count satisfiable and unsatisfiable polarity assignments of a graph.
    Census {
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        fixture: Option<String>,
        #[arg(long, default_value_t = DEFAULT_EDGE_CAP)]
        cap: usize,
        #[arg(long)]
        threads: Option<usize>,
        /// One-line JSON record.
        #[arg(long)]
        json: bool,
    },
    /// Search a graph for a subdivision of VConfig, PConfig, K4 or K113.
    Minor {
        #[arg(value_parser = parse_pattern)]
        pattern: PatternId,
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        fixture: Option<String>,
        #[arg(long, default_value_t = DEFAULT_HOST_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print a named graph as an edge list.
    Fixture {
        #[arg(required_unless_present = "list")]
        name: Option<String>,
        /// List the known names.
        #[arg(long)]
        list: bool,
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Auto,
    Dimacs,
    Edges,
}

fn parse_pattern(s: &str) -> Result<PatternId, String> {
    s.parse().map_err(|e: twocnf_core::minors::UnknownPattern| e.to_string())
}

struct Failure {
    code: i32,
    message: String,
}

fn fail(code: i32, message: impl std::fmt::Display) -> Failure {
    Failure { code, message: message.to_string() }
}

type Outcome = Result<i32, Failure>;

/// Runs the command line on `args` (program name first).
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let mut out = String::new();
    let result = dispatch(cli.command, stdin, &mut out);
    if stdout.write_all(out.as_bytes()).and_then(|_| stdout.flush()).is_err() {
        return EXIT_IO;
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(stderr, "twocnf: {}", f.message);
            f.code
        }
    }
}

fn read_input(path: Option<&Path>, stdin: &mut dyn Read) -> Result<String, Failure> {
    let bytes = match path {
        None => read_all(stdin)?,
        Some(p) if p == Path::new("-") => read_all(stdin)?,
        Some(p) => std::fs::read(p).map_err(|e| fail(EXIT_NO_INPUT, format!("{}: {e}", p.display())))?,
    };
    String::from_utf8(bytes).map_err(|_| fail(EXIT_DATA, "input is not valid UTF-8"))
}

fn read_all(stdin: &mut dyn Read) -> Result<Vec<u8>, Failure> {
    let mut buf = Vec::new();
    stdin.read_to_end(&mut buf).map_err(|e| fail(EXIT_NO_INPUT, format!("stdin: {e}")))?;
    Ok(buf)
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| fail(EXIT_IO, format!("{}: {e}", path.display())))
}

fn load_graph(input: Option<&Path>, name: Option<&str>, stdin: &mut dyn Read) -> Result<SimpleGraph, Failure> {
    match name {
        Some(name) => fixture(name).map_err(|e| fail(EXIT_USAGE, e)),
        None => parse_edge_list(&read_input(input, stdin)?).map_err(|e| fail(EXIT_DATA, e)),
    }
}

/// The first line that is neither blank nor a comment starts with `p`.
fn looks_like_dimacs(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('c'))
        .is_some_and(|l| l.starts_with('p'))
}

fn dispatch(command: Command, stdin: &mut dyn Read, out: &mut String) -> Outcome {
    match command {
        Command::Reduce { input } => {
            let d = parse_dimacs(&read_input(input.as_deref(), stdin)?).map_err(|e| fail(EXIT_DATA, e))?;
            let outcome = to_simple(&d.cnf);
            let verdict = match outcome.result {
                twocnf_core::simplify::SimplifyResult::Unsatisfiable => "UNSAT",
                twocnf_core::simplify::SimplifyResult::TriviallyTrue => "TRIVIALLY-TRUE",
                twocnf_core::simplify::SimplifyResult::Simple(_) => "SIMPLE",
            };
            let mut comments = vec![format!("outcome: {verdict}")];
            comments.extend(outcome.trace.iter().map(|s| format!("step: {s}")));
            out.push_str(&emit_dimacs(&outcome.simplified(), d.num_vars, &comments));
            Ok(EXIT_OK)
        }
        Command::Solve { input } => {
            let d = parse_dimacs(&read_input(input.as_deref(), stdin)?).map_err(|e| fail(EXIT_DATA, e))?;
            match solve(&d.cnf) {
                SolveResult::Satisfiable(m) => {
                    out.push_str("SAT\nv");
                    let n = d.num_vars.max(d.cnf.max_var().map_or(0, |v| v.index()));
                    for i in 1..=n {
                        let value = m.get(Var::new(i).expect("nonzero")).unwrap_or(false);
                        out.push_str(&format!(" {}", if value { i as i64 } else { -(i as i64) }));
                    }
                    out.push_str(" 0\n");
                    Ok(EXIT_OK)
                }
                SolveResult::Unsatisfiable(conflict) => {
                    out.push_str("UNSAT\n");
                    if let Some(v) = conflict {
                        out.push_str(&format!("c conflict variable {}\n", v.index()));
                    }
                    Ok(EXIT_UNSAT)
                }
            }
        }
        Command::Analyze { input, fixture: name, format, witness, witness_out, dot, json } => {
            let subject = match name {
                Some(name) => Subject::Graph(fixture(&name).map_err(|e| fail(EXIT_USAGE, e))?),
                None => {
                    let text = read_input(input.as_deref(), stdin)?;
                    let dimacs = match format {
                        Format::Auto => looks_like_dimacs(&text),
                        Format::Dimacs => true,
                        Format::Edges => false,
                    };
                    if dimacs {
                        let d = parse_dimacs(&text).map_err(|e| fail(EXIT_DATA, e))?;
                        Subject::Formula { num_vars: d.num_vars, cnf: d.cnf }
                    } else {
                        Subject::Graph(parse_edge_list(&text).map_err(|e| fail(EXIT_DATA, e))?)
                    }
                }
            };
            let want_witness = witness || witness_out.is_some();
            let mut a = analyze(&subject, want_witness).map_err(|e| fail(EXIT_SOFTWARE, e))?;
            if let Some(path) = &dot {
                let g = a.graph.clone().unwrap_or_default();
                let emb = match &a.verdict {
                    Some(twocnf_core::minors::Verdict::InU { embedding, .. }) => Some(embedding),
                    _ => None,
                };
                write_file(path, &to_dot(&g, emb))?;
            }
            let witness_path = match (&witness_out, &a.witness, &a.graph) {
                (Some(path), Some(w), Some(g)) => {
                    write_file(path, &witness_dimacs(w, g))?;
                    Some(path.display().to_string())
                }
                _ => None,
            };
            if json {
                let report = a.to_json(witness_path, witness && witness_out.is_none());
                out.push_str(&serde_json::to_string_pretty(&report).expect("serializable"));
                out.push('\n');
            } else {
                if witness_out.is_some() || !witness {
                    a.witness = None;
                }
                out.push_str(&a.to_text());
                if witness && a.witness.is_none() && witness_out.is_none() {
                    out.push_str("c no witness: the graph supports no unsatisfiable formula\n");
                }
            }
            Ok(EXIT_OK)
        }
        Command::Census { input, fixture: name, cap, threads, json } => {
            let g = load_graph(input.as_deref(), name.as_deref(), stdin)?;
            if threads == Some(0) {
                return Err(fail(EXIT_USAGE, "--threads must be positive"));
            }
            let report = census_parallel(&g, cap, threads).map_err(|e| fail(EXIT_SOFTWARE, e))?;
            if json {
                out.push_str(&serde_json::to_string(&CensusJson::from(&report)).expect("serializable"));
                out.push('\n');
            } else {
                out.push_str(&census_text(&report));
            }
            Ok(EXIT_OK)
        }
        Command::Minor { pattern, input, fixture: name, cap, json } => {
            let g = load_graph(input.as_deref(), name.as_deref(), stdin)?;
            let found = find_topological_minor(&g, pattern, cap).map_err(|e: MinorError| fail(EXIT_SOFTWARE, e))?;
            if json {
                let record = MinorJson {
                    format_version: FORMAT_VERSION,
                    pattern: pattern.name(),
                    found: found.is_some(),
                    embedding: found.as_ref().map(Into::into),
                };
                out.push_str(&serde_json::to_string_pretty(&record).expect("serializable"));
                out.push('\n');
            } else {
                match &found {
                    Some(e) => {
                        out.push_str("found\n");
                        for l in embedding_lines(pattern, e) {
                            out.push_str(&l);
                            out.push('\n');
                        }
                    }
                    None => out.push_str(&format!("no subdivision of {pattern}\n")),
                }
            }
            Ok(EXIT_OK)
        }
        Command::Fixture { name, list, dot } => {
            if list {
                for n in fixture_names() {
                    out.push_str(&n);
                    out.push('\n');
                }
                return Ok(EXIT_OK);
            }
            let name = name.expect("clap requires a name without --list");
            let g = fixture(&name).map_err(|e| fail(EXIT_USAGE, e))?;
            if dot {
                out.push_str(&to_dot(&g, None));
            } else {
                out.push_str(&format!("# {name}\n"));
                out.push_str(&emit_edge_list(&g));
            }
            Ok(EXIT_OK)
        }
    }
}
