use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

use rexcalc::parse::{parse_element, path_tokens, ParseError};
use rexcalc::{report, resolve_budget, suites};
use rexcalc_core::braidmor::BraidEngine;
use rexcalc_core::fpc::{apply_rex_path, PathMorphisms};
use rexcalc_core::rexgraph::{ConflatedGraph, RexGraph};
use rexcalc_core::symgroup::{move_between, Word};

/// Reduced-expression graphs and braid-move path morphisms.
#[derive(Parser)]
#[command(name = "rexcalc", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the expanded or conflated graph of an element.
    Graph {
        word: String,
        #[arg(long, conflicts_with = "conflated")]
        expanded: bool,
        #[arg(long)]
        conflated: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Number of strands; defaults to one more than the largest letter.
        #[arg(long)]
        rank: Option<u8>,
    },
    /// Push an element along a path, or print the path morphism.
    Eval {
        /// Word of the starting Bott-Samelson bimodule.
        word: String,
        /// Words, or conflated vertices (`s`, `t`, `c` or member words),
        /// separated by commas, spaces or `->`.
        #[arg(long, default_value = "")]
        path: String,
        /// Tensor slots `p0|p1|…|pk`; `1` is the all-ones tensor.
        #[arg(long, default_value = "1")]
        element: String,
        /// Read the path in the conflated graph.
        #[arg(long)]
        conflated: bool,
        /// Print the matrix of the path morphism instead.
        #[arg(long)]
        matrix: bool,
        #[arg(long)]
        rank: Option<u8>,
    },
    /// Run a verification suite; exit 1 if a verdict is not the expected one.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        rank: Option<u8>,
        #[arg(long)]
        max_len: Option<usize>,
        /// Search state budget (overrides REXCALC_BUDGET).
        #[arg(long)]
        budget: Option<usize>,
        /// Element for `fpc`, or for the manual mode of `family`.
        #[arg(long)]
        element: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    FpcS4,
    Zam,
    Lemmas,
    Family,
    Refined,
    Counterexample,
    Fpc,
}

enum Failure {
    Usage(String),
    Budget(String),
}

impl From<rexcalc_core::Error> for Failure {
    fn from(e: rexcalc_core::Error) -> Self {
        match e {
            rexcalc_core::Error::BudgetExceeded(_) => Failure::Budget(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Core(c) => c.into(),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn parse_word(s: &str) -> Result<Word, Failure> {
    s.parse().map_err(|_| Failure::Usage(format!("`{s}` is not a word of simple reflections")))
}

fn rank_of(w: &Word, rank: Option<u8>) -> u8 {
    rank.unwrap_or_else(|| w.min_rank())
}

// A closed pipe (`rexcalc ... | head`) is not an error worth reporting.
fn emit(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn print_json(v: &Value) {
    emit(&(serde_json::to_string_pretty(v).expect("json values serialize") + "\n"));
}

fn graph(word: &str, conflated: bool, format: Format, rank: Option<u8>) -> Result<bool, Failure> {
    let w = parse_word(word)?;
    let rank = rank_of(&w, rank);
    let rex = RexGraph::of_word(&w, rank)?;
    match (conflated, format) {
        (false, Format::Dot) => emit(&rex.to_dot()),
        (false, Format::Json) => print_json(&report::rex_graph_json(&rex)),
        (false, Format::Text) => emit(&report::rex_graph_text(&rex)),
        (true, f) => {
            let g = ConflatedGraph::new(rex);
            match f {
                Format::Dot => emit(&g.to_dot()),
                Format::Json => print_json(&report::conflated_graph_json(&g)),
                Format::Text => emit(&report::conflated_graph_text(&g)),
            }
        }
    }
    Ok(true)
}

fn is_expanded_path(tokens: &[String]) -> Option<Vec<Word>> {
    let words: Vec<Word> = tokens.iter().map(|t| t.parse().ok()).collect::<Option<_>>()?;
    words.windows(2).all(|p| move_between(&p[0], &p[1]).is_some()).then_some(words)
}

fn eval(
    word: &str,
    path: &str,
    element: &str,
    conflated: bool,
    matrix: bool,
    rank: Option<u8>,
) -> Result<bool, Failure> {
    let w = parse_word(word)?;
    let rank = rank_of(&w, rank);
    RexGraph::of_word(&w, rank)?;
    let tokens = path_tokens(path);
    let expanded = if conflated { None } else { is_expanded_path(&tokens) };
    if let Some(mut words) = expanded {
        if words.is_empty() {
            words.push(w.clone());
        }
        if words[0] != w {
            return Err(Failure::Usage(format!("path starts at {}, not at {w}", words[0])));
        }
        let engine = BraidEngine::new(rank)?;
        if matrix {
            print_json(&report::matrix_json(&engine.path_morphism(&words)?));
        } else {
            let e = parse_element(element, &w, rank)?;
            print_json(&report::element_json(&apply_rex_path(&engine, &words, &e)?));
        }
        return Ok(true);
    }
    let pm = PathMorphisms::of_word(&w, rank)?;
    let refs: Vec<&str> = tokens.iter().map(String::as_str).collect();
    let path = pm.resolve_path(&refs)?;
    if pm.graph().cloud_of_word(&w) != path.first().copied() {
        return Err(Failure::Usage(format!("{w} is not in the cloud of the first path vertex")));
    }
    if matrix {
        print_json(&report::matrix_json(&pm.path_matrix(&path)?));
    } else {
        let e = parse_element(element, &w, rank)?;
        print_json(&report::element_json(&pm.apply_path(&path, &e)?));
    }
    Ok(true)
}

fn verify(
    suite: Suite,
    rank: Option<u8>,
    max_len: Option<usize>,
    budget: Option<usize>,
    element: Option<String>,
    format: Format,
) -> Result<bool, Failure> {
    let budget = resolve_budget(budget).map_err(Failure::Usage)?;
    let out = match suite {
        Suite::FpcS4 => suites::fpc_s4(max_len, budget)?,
        Suite::Zam => {
            let r = rank.unwrap_or(4);
            if !(3..=4).contains(&r) {
                return Err(Failure::Usage("zam runs for rank 3 or 4".to_string()));
            }
            suites::zam(r)?
        }
        Suite::Lemmas => suites::lemmas(budget)?,
        Suite::Family => match element {
            Some(e) => {
                let w = parse_word(&e)?;
                suites::fpc(&w, rank_of(&w, rank), max_len, budget)?
            }
            None => {
                let ranks = match rank {
                    Some(r) if (4..=6).contains(&r) => vec![r],
                    Some(_) => return Err(Failure::Usage("family runs for rank 4, 5 or 6".to_string())),
                    None => vec![4, 5],
                };
                suites::family(&ranks)?
            }
        },
        Suite::Refined => {
            let r = rank.unwrap_or(4);
            if !(3..=4).contains(&r) {
                return Err(Failure::Usage("refined runs for rank 3 or 4".to_string()));
            }
            suites::refined(r, max_len.unwrap_or(10), budget)?
        }
        Suite::Counterexample => suites::counterexample()?,
        Suite::Fpc => {
            let e = element.ok_or_else(|| Failure::Usage("fpc needs --element".to_string()))?;
            let w = parse_word(&e)?;
            suites::fpc(&w, rank_of(&w, rank), max_len, budget)?
        }
    };
    match format {
        Format::Json => print_json(&out.json),
        _ => emit(&out.text),
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Graph { word, expanded: _, conflated, format, rank } => graph(&word, conflated, format, rank),
        Command::Eval { word, path, element, conflated, matrix, rank } => {
            eval(&word, &path, &element, conflated, matrix, rank)
        }
        Command::Verify { suite, rank, max_len, budget, element, format } => {
            verify(suite, rank, max_len, budget, element, format)
        }
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
