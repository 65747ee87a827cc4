//! Command implementations for the `shuffle-groups` binary.
//!
//! Every command writes to a caller-supplied sink and returns an exit status,
//! so the integration tests drive them without spawning processes.

use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use shuffle_groups::cayley::{self, DEFAULT_VERTEX_CAP};
use shuffle_groups::group::{bfs_enumerate, schreier_sims, Generator, DEFAULT_BFS_CAP};
use shuffle_groups::shuffles::{in_shuffle, out_shuffle, power_shuffle};
use shuffle_groups::structure::{self, decimal, ActionKind, StructurePrediction, SCHEMA_VERSION};
use shuffle_groups::{DeckParams, Error, Perm, PowerDeckParams, ShuffleKind};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "shuffle-groups",
    version,
    about = "Groups generated by perfect in and out m-shuffles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Order of <I_m, O_m> on a deck of N cards.
    Order(OrderArgs),
    /// Orders of <I_m, O_m> for every deck size up to a maximum.
    Table(TableArgs),
    /// Predicted structure of the m^y-shuffle group on m^k cards.
    Predict(PowerArgs),
    /// Predict, then check the prediction against the actual permutations.
    Verify(PowerArgs),
    /// Export the Cayley graph of <I_{m^y}, O_{m^y}> on m^k cards as DOT.
    Cayley(CayleyArgs),
    /// Follow one card through a sequence of shuffles.
    Trace(TraceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Bfs,
    Chain,
}

#[derive(Debug, Args)]
pub struct OrderArgs {
    #[arg(long)]
    pub deck: usize,
    #[arg(long)]
    pub m: usize,
    #[arg(long, value_enum, default_value = "chain")]
    pub engine: Engine,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long)]
    pub max_deck: usize,
    #[arg(long, conflicts_with = "json")]
    pub csv: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub y: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct CayleyArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub y: usize,
    /// Output file; the graph goes to standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct TraceArgs {
    #[arg(long)]
    pub deck: usize,
    #[arg(long)]
    pub m: usize,
    /// Shuffles to apply, left to right, e.g. `OOIO`.
    #[arg(long)]
    pub seq: String,
    #[arg(long)]
    pub card: usize,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Resource(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Resource(_) | CliError::Io(_) => EXIT_RESOURCE,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Resource(msg) => write!(f, "resource limit: {msg}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        if e.is_resource() {
            CliError::Resource(e.to_string())
        } else {
            CliError::Usage(e.to_string())
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.into())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderReport {
    pub schema_version: u32,
    pub deck: usize,
    pub m: usize,
    pub engine: Engine,
    #[serde(with = "decimal")]
    pub order: BigUint,
    #[serde(with = "decimal")]
    pub in_shuffle_order: BigUint,
    #[serde(with = "decimal")]
    pub out_shuffle_order: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub deck_size: usize,
    pub m: usize,
    #[serde(with = "decimal")]
    pub order: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDocument {
    pub schema_version: u32,
    pub max_deck: usize,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictionDocument {
    pub schema_version: u32,
    pub prediction: StructurePrediction,
}

fn shuffle_pair(deck: usize, m: usize) -> CliResult<(Perm, Perm)> {
    if m < 2 {
        return Err(CliError::Usage(format!("--m must be at least 2, got {m}")));
    }
    if deck == 0 || !deck.is_multiple_of(m) {
        return Err(CliError::Usage(format!(
            "--m {m} does not divide --deck {deck}"
        )));
    }
    let p = DeckParams::for_deck(deck, m)?;
    Ok((in_shuffle(&p), out_shuffle(&p)))
}

pub fn group_order(deck: usize, m: usize, engine: Engine) -> CliResult<OrderReport> {
    let (inn, out) = shuffle_pair(deck, m)?;
    let order = match engine {
        Engine::Chain => schreier_sims(&[inn.clone(), out.clone()])?.order(),
        Engine::Bfs => {
            let gens = [
                Generator::new("I", inn.clone()),
                Generator::new("O", out.clone()),
            ];
            let e = bfs_enumerate(deck, &gens, DEFAULT_BFS_CAP)?;
            if !e.complete {
                return Err(Error::CapExceeded {
                    cap: DEFAULT_BFS_CAP,
                }
                .into());
            }
            BigUint::from(e.len())
        }
    };
    Ok(OrderReport {
        schema_version: SCHEMA_VERSION,
        deck,
        m,
        engine,
        order,
        in_shuffle_order: inn.order(),
        out_shuffle_order: out.order(),
    })
}

/// Every `(N, m)` with `4 <= N <= max_deck`, `m | N` and `2 <= m <= N/2`,
/// ordered by `(N, m)`.
pub fn table_params(max_deck: usize) -> Vec<(usize, usize)> {
    (4..=max_deck)
        .flat_map(|n| (2..=n / 2).filter(move |m| n % m == 0).map(move |m| (n, m)))
        .collect()
}

pub fn table_rows(max_deck: usize) -> CliResult<Vec<TableRow>> {
    if max_deck < 4 {
        return Err(CliError::Usage(format!(
            "--max-deck must be at least 4, got {max_deck}"
        )));
    }
    table_params(max_deck)
        .into_par_iter()
        .map(|(deck, m)| {
            let report = group_order(deck, m, Engine::Chain)?;
            Ok(TableRow {
                deck_size: deck,
                m,
                order: report.order,
            })
        })
        .collect()
}

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut out = String::from("deck,m,order\n");
    for r in rows {
        out.push_str(&format!("{},{},{}\n", r.deck_size, r.m, r.order));
    }
    out
}

fn table_text(rows: &[TableRow]) -> String {
    let width = rows
        .iter()
        .map(|r| r.order.to_string().len())
        .max()
        .unwrap_or(0)
        .max(5);
    let mut out = format!("{:>4}  {:>3}  {:>width$}\n", "deck", "m", "order");
    for r in rows {
        out.push_str(&format!(
            "{:>4}  {:>3}  {:>width$}\n",
            r.deck_size, r.m, r.order
        ));
    }
    out
}

/// Position of `card` after each prefix of `seq`, starting with its initial position.
pub fn trace_positions(deck: usize, m: usize, seq: &str, card: usize) -> CliResult<Vec<usize>> {
    let (inn, out) = shuffle_pair(deck, m)?;
    if card >= deck {
        return Err(CliError::Usage(format!(
            "--card {card} is not below --deck {deck}"
        )));
    }
    let mut positions = vec![card];
    let mut at = card;
    for ch in seq.chars() {
        let step = match ch {
            'O' => &out,
            'I' => &inn,
            other => {
                return Err(CliError::Usage(format!(
                    "shuffle sequences use only 'O' and 'I', found {other:?}"
                )))
            }
        };
        at = step.image(at);
        positions.push(at);
    }
    Ok(positions)
}

fn power_params(args: &PowerArgs) -> CliResult<PowerDeckParams> {
    Ok(PowerDeckParams::new(args.m, args.k, args.y)?)
}

fn describe(p: &StructurePrediction) -> String {
    let action = match p.action {
        ActionKind::CyclicShift => "cyclic-shift",
        ActionKind::Twisted => "twisted",
    };
    let r = &p.reduced;
    format!(
        "deck: {}^{} = {} cards, {}^{}-shuffles\n\
         c = gcd(y, k): {}\n\
         reduced: m={} k={} y={}\n\
         structure: (Z_2)^{} semidirect Z_{}\n\
         abelian rank: {}\n\
         action: {}\n\
         order: {}\n",
        p.params.m,
        p.params.k,
        p.params.deck_size(),
        p.params.m,
        p.params.y,
        p.params.c,
        r.m,
        r.k,
        r.y,
        p.abelian_rank,
        p.t,
        p.abelian_rank,
        action,
        p.predicted_order
    )
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// Runs one command and returns the process exit status.
pub fn run(cli: Cli, out: &mut dyn Write) -> CliResult<i32> {
    match cli.command {
        Command::Order(args) => {
            let report = group_order(args.deck, args.m, args.engine)?;
            if args.json {
                write_json(out, &report)?;
            } else {
                writeln!(out, "order: {}", report.order)?;
                writeln!(out, "order of I: {}", report.in_shuffle_order)?;
                writeln!(out, "order of O: {}", report.out_shuffle_order)?;
            }
        }
        Command::Table(args) => {
            let rows = table_rows(args.max_deck)?;
            if args.json {
                let doc = TableDocument {
                    schema_version: SCHEMA_VERSION,
                    max_deck: args.max_deck,
                    rows,
                };
                write_json(out, &doc)?;
            } else if args.csv {
                out.write_all(table_csv(&rows).as_bytes())?;
            } else {
                out.write_all(table_text(&rows).as_bytes())?;
            }
        }
        Command::Predict(args) => {
            let prediction = structure::predict(&power_params(&args)?);
            if args.json {
                let doc = PredictionDocument {
                    schema_version: SCHEMA_VERSION,
                    prediction,
                };
                write_json(out, &doc)?;
            } else {
                out.write_all(describe(&prediction).as_bytes())?;
            }
        }
        Command::Verify(args) => {
            let report = structure::verify(&power_params(&args)?)?;
            if args.json {
                write_json(out, &report)?;
            } else {
                out.write_all(describe(&report.prediction).as_bytes())?;
                writeln!(out, "computed order: {}", report.computed_order)?;
                writeln!(out, "order matches: {}", report.order_matches)?;
                for g in &report.generator_checks {
                    writeln!(
                        out,
                        "{}: involution={} digit_action={} member={}",
                        g.label, g.involution, g.digit_action_matches, g.member
                    )?;
                }
                writeln!(out, "commutation: {}", report.commutation_ok)?;
                writeln!(out, "conjugation: {}", report.conjugation_ok)?;
                writeln!(out, "product relation: {}", report.product_relation_ok)?;
                writeln!(out, "complement: {}", report.complement_ok)?;
                writeln!(out, "verdict: {}", report.verdict)?;
            }
            if !report.verdict {
                return Ok(EXIT_VERDICT_FALSE);
            }
        }
        Command::Cayley(args) => {
            let p = PowerDeckParams::new(args.m, args.k, args.y)?;
            let gens = [
                Generator::new("O", power_shuffle(&p, ShuffleKind::Out)),
                Generator::new("I", power_shuffle(&p, ShuffleKind::In)),
            ];
            let graph = cayley::build(p.deck_size(), &gens, DEFAULT_VERTEX_CAP)?;
            let dot = cayley::to_dot(&graph);
            let summary = format!(
                "vertices: {}\nedges: {}\n",
                graph.vertices.len(),
                graph.edges.len()
            );
            match &args.out {
                Some(path) => {
                    std::fs::write(path, dot)?;
                    out.write_all(summary.as_bytes())?;
                }
                None => {
                    out.write_all(dot.as_bytes())?;
                    eprint!("{summary}");
                }
            }
        }
        Command::Trace(args) => {
            let positions = trace_positions(args.deck, args.m, &args.seq, args.card)?;
            writeln!(out, "start: {}", positions[0])?;
            for (i, (ch, pos)) in args.seq.chars().zip(&positions[1..]).enumerate() {
                writeln!(out, "{} {}: {}", i + 1, ch, pos)?;
            }
            writeln!(out, "final: {}", positions[positions.len() - 1])?;
        }
    }
    Ok(EXIT_OK)
}
