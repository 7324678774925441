//! Command-line front end. Every subcommand is a thin wrapper over the
//! library; [`run`] returns the text the binary prints.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::code_core::{assign_canonical, expected_length, kraft_sum, LengthSet, LengthVector};
use crate::codec::{tradeoff_table, Container};
use crate::distributions::{benford_pmf, byte_histogram, pmf_from_file, zipf_pmf, Pmf, PmfFormat};
use crate::error::{Error, Result};
use crate::few_lengths::solve_g_lengths;
use crate::oracle::huffman;
use crate::reserved_dp::{
    dp_grids, make_cost_function, solve_reserved, CostFunction, CostGrid, Solution,
};

#[derive(Debug, Parser)]
#[command(
    name = "rlpc",
    version,
    about = "Optimal prefix codes with restricted codeword lengths"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct Source {
    /// Named distribution: `benford` or `zipf:N`.
    #[arg(long, conflicts_with = "pmf")]
    pub dist: Option<String>,
    /// Pmf file (`.csv` with `label,weight` lines or `.json`).
    #[arg(long)]
    pub pmf: Option<PathBuf>,
}

#[derive(Debug, Args, Clone)]
pub struct Output {
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub json: bool,
    /// Significant digits for printed reals.
    #[arg(long, default_value_t = 6)]
    pub digits: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Unrestricted Huffman code.
    Huffman {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        output: Output,
    },
    /// Optimal code with lengths drawn from --lambda.
    Reserved {
        #[command(flatten)]
        source: Source,
        /// Allowed lengths, comma separated.
        #[arg(long)]
        lambda: String,
        #[arg(long, default_value = "identity")]
        phi: String,
        /// Also write the cost grids as CSV.
        #[arg(long)]
        dump_grid: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Best codes with at most 1..=g distinct lengths.
    Glengths {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        g: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Reserved-length code under a quasiarithmetic cost.
    Quasi {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        lambda: String,
        /// `identity`, `exp:<t>` or `table:<path>`.
        #[arg(long)]
        phi: String,
        #[command(flatten)]
        output: Output,
    },
    /// Compress a file into an RLPC container (labels go to <out>.csv).
    Encode {
        input: PathBuf,
        /// Allowed lengths; Huffman lengths when omitted.
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Restore a file from an RLPC container and its label sidecar.
    Decode {
        input: PathBuf,
        /// Label sidecar; defaults to <input>.csv.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decode-speed versus compression table: Huffman and each --lambda.
    Bench {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        lambda: Vec<String>,
        #[arg(long, default_value_t = 1_000_000)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        repeats: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        output: Output,
    },
    /// Cost grids for Benford's law with lengths {1,2,4,8}.
    Table1 {
        #[command(flatten)]
        output: Output,
    },
}

/// Exit status for a failed command: 2 for usage problems, 1 otherwise.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Usage(_) => 2,
        _ => 1,
    }
}

/// Formats `x` with `digits` significant digits.
pub fn format_real(x: f64, digits: usize) -> String {
    if x.is_infinite() {
        return "∞".into();
    }
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits.max(1) as i64 - 1 - magnitude).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn parse_lambda(text: &str) -> Result<LengthSet> {
    let lengths = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| Error::Usage(format!("bad length {t:?} in --lambda")))
        })
        .collect::<Result<Vec<_>>>()?;
    LengthSet::new(lengths).map_err(|e| Error::Usage(e.to_string()))
}

pub fn parse_dist(text: &str) -> Result<Pmf> {
    match text.split_once(':') {
        None if text == "benford" => Ok(benford_pmf()),
        Some(("zipf", n)) => {
            let n = n
                .parse()
                .map_err(|_| Error::Usage(format!("bad zipf size {n:?}")))?;
            zipf_pmf(n)
        }
        _ => Err(Error::Usage(format!(
            "unknown distribution {text:?} (expected benford or zipf:N)"
        ))),
    }
}

/// `identity`, `exp:<t>` or `table:<path>` (values separated by commas or
/// whitespace, one per length from 1).
pub fn parse_phi(text: &str) -> Result<CostFunction> {
    match text.split_once(':') {
        None if text == "identity" => make_cost_function("identity", &[]),
        Some(("exp", t)) => {
            let t: f64 = t
                .parse()
                .map_err(|_| Error::Usage(format!("bad rate {t:?}")))?;
            make_cost_function("exp", &[t])
        }
        Some(("table", path)) => {
            let text = fs::read_to_string(path)?;
            let values = text
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<f64>()
                        .map_err(|_| Error::Parse(format!("bad cost value {t:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            make_cost_function("table", &values)
        }
        _ => Err(Error::Usage(format!(
            "unknown cost function {text:?} (expected identity, exp:<t> or table:<path>)"
        ))),
    }
}

fn load_source(source: &Source) -> Result<Pmf> {
    match (&source.dist, &source.pmf) {
        (Some(d), None) => parse_dist(d),
        (None, Some(p)) => {
            let format = PmfFormat::from_path(p).map_err(|e| Error::Usage(e.to_string()))?;
            pmf_from_file(p, format)
        }
        _ => Err(Error::Usage("give exactly one of --dist or --pmf".into())),
    }
}

/// Pretty JSON with a trailing newline, as printed by every `--json` flag.
pub fn to_json(value: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

fn codebook_table(pmf: &Pmf, solution_lengths: &LengthVector, digits: usize) -> Result<String> {
    let cb = assign_canonical(solution_lengths)?;
    let mut out = String::from("symbol\tprob\tlength\tcodeword\n");
    for i in 0..pmf.len() {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}",
            pmf.label_of_sorted(i),
            format_real(pmf.probs()[i], digits),
            cb.lengths()[i],
            cb.bitstring(i)
        );
    }
    Ok(out)
}

/// Text form of a reserved-length solution.
pub fn render_solution(
    pmf: &Pmf,
    sol: &Solution,
    cost: &CostFunction,
    output: &Output,
) -> Result<String> {
    if output.json {
        return Ok(to_json(&sol.to_json_value()));
    }
    let d = output.digits;
    let mut out = String::new();
    let _ = writeln!(out, "allowed lengths: {}", sol.lambda_used);
    let _ = writeln!(out, "cost ({}): {}", cost.name(), format_real(sol.cost, d));
    let _ = writeln!(
        out,
        "kraft: {} = {}",
        sol.kraft,
        format_real(sol.kraft.to_f64(), d)
    );
    out.push_str(&codebook_table(pmf, &sol.lengths, d)?);
    Ok(out)
}

/// Finite cells of one level laid out as rows of `eta` and columns of
/// `upsilon`, each shown as `cost (pred_upsilon)`.
pub fn render_level(grid: &CostGrid, m: usize, digits: usize) -> String {
    let n = grid.n();
    let mut out = String::new();
    let _ = writeln!(out, "Level lambda_{m} = {} (m={m})", grid.lambdas()[m - 1]);
    let _ = write!(out, "eta\\upsilon");
    for up in 0..=n - 2 {
        let _ = write!(out, "\t{up}");
    }
    out.push('\n');
    for eta in 0..=(n / 2) as u64 {
        let _ = write!(out, "{eta}");
        for up in 0..=n - 2 {
            let c = grid.cost(m, up, eta);
            if c.is_finite() {
                let pred = grid
                    .predecessor(m, up, eta)
                    .expect("finite cells have predecessors");
                let _ = write!(out, "\t{} ({pred})", format_real(c, digits));
            } else {
                out.push_str("\t∞");
            }
        }
        out.push('\n');
    }
    out
}

pub fn table1_grid() -> CostGrid {
    let ls = LengthSet::new([1, 2, 4, 8]).expect("valid set");
    dp_grids(&benford_pmf(), &ls, &CostFunction::Identity).expect("Benford example is feasible")
}

pub fn render_table1(output: &Output) -> String {
    let grid = table1_grid();
    if output.json {
        let levels: Vec<_> = (1..grid.levels())
            .map(|m| {
                let cells: Vec<_> = grid
                    .finite_states(m)
                    .into_iter()
                    .map(|(up, eta, c, pred)| serde_json::json!({"upsilon": up, "eta": eta, "L": c, "pred_upsilon": pred}))
                    .collect();
                serde_json::json!({"m": m, "lambda": grid.lambdas()[m - 1], "cells": cells})
            })
            .collect();
        return to_json(&serde_json::Value::Array(levels));
    }
    let mut out = String::new();
    for m in 1..grid.levels() {
        out.push_str(&render_level(&grid, m, output.digits));
        out.push('\n');
    }
    if let Some(best) = grid.best() {
        let _ = writeln!(
            out,
            "best finished tree: cost {} at level {} from (upsilon, eta) = ({}, {})",
            format_real(best.cost, output.digits),
            best.level,
            best.pred_upsilon,
            best.pred_eta
        );
    }
    out
}

fn encode_file(input: &Path, lambda: Option<&str>, out: &Path) -> Result<String> {
    let data = fs::read(input)?;
    let pmf = byte_histogram(&data)?;
    let lengths = match lambda {
        Some(l) => solve_reserved(&pmf, &parse_lambda(l)?, &CostFunction::Identity)?.lengths,
        None => huffman(&pmf)?,
    };
    let labels = pmf.labels().expect("histogram pmfs carry labels");
    let mut sorted_index = HashMap::new();
    for (i, &user) in pmf.perm().iter().enumerate() {
        let byte: u8 = labels[user]
            .parse()
            .expect("histogram labels are byte values");
        sorted_index.insert(byte, i);
    }
    let symbols: Vec<usize> = data.iter().map(|b| sorted_index[b]).collect();
    let container = Container::encode(lengths, &symbols)?;
    container.write_file(out)?;

    let mut sidecar = String::new();
    for i in 0..pmf.len() {
        let _ = writeln!(sidecar, "{},{}", pmf.label_of_sorted(i), pmf.probs()[i]);
    }
    let sidecar_path = sidecar_for(out);
    fs::write(&sidecar_path, sidecar)?;
    Ok(format!(
        "{} bytes -> {} bytes ({} symbols, {} distinct lengths); labels in {}\n",
        data.len(),
        container.to_bytes().len(),
        pmf.len(),
        container.lengths.distinct(),
        sidecar_path.display()
    ))
}

pub fn sidecar_for(container: &Path) -> PathBuf {
    let mut name = container.as_os_str().to_owned();
    name.push(".csv");
    PathBuf::from(name)
}

fn decode_file(input: &Path, labels: Option<&Path>, out: &Path) -> Result<String> {
    let container = Container::read_file(input)?;
    let sidecar = labels
        .map(Path::to_path_buf)
        .unwrap_or_else(|| sidecar_for(input));
    let text = fs::read_to_string(&sidecar)?;
    let bytes: Vec<u8> = text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            let label = l.split(',').next().unwrap_or_default().trim();
            label
                .parse::<u8>()
                .map_err(|_| Error::Parse(format!("sidecar label {label:?} is not a byte value")))
        })
        .collect::<Result<_>>()?;
    if bytes.len() != container.lengths.len() {
        return Err(Error::SizeMismatch {
            expected: container.lengths.len(),
            actual: bytes.len(),
        });
    }
    let symbols = container.decode()?;
    let data: Vec<u8> = symbols.iter().map(|&s| bytes[s]).collect();
    fs::write(out, &data)?;
    Ok(format!("restored {} bytes\n", data.len()))
}

fn render_bench(
    source: &Source,
    lambdas: &[String],
    count: usize,
    repeats: usize,
    seed: u64,
    output: &Output,
) -> Result<String> {
    let pmf = load_source(source)?;
    let mut codes = vec![("huffman".to_string(), huffman(&pmf)?)];
    for l in lambdas {
        let ls = parse_lambda(l)?;
        let sol = solve_reserved(&pmf, &ls, &CostFunction::Identity)?;
        codes.push((format!("reserved {ls}"), sol.lengths));
    }
    let rows = tradeoff_table(&pmf, &codes, count, repeats, seed)?;
    if output.json {
        let v: Vec<_> = rows
            .iter()
            .map(|r| {
                serde_json::json!({
                    "code": r.name,
                    "distinct_lengths": r.distinct_lengths,
                    "expected_length": r.expected_length,
                    "symbols_per_sec": r.symbols_per_sec,
                    "round_trip_ok": r.round_trip_ok,
                })
            })
            .collect();
        return Ok(to_json(&serde_json::Value::Array(v)));
    }
    let d = output.digits;
    let mut out =
        String::from("code\tdistinct lengths\texpected length\tsymbols/s (median)\tround trip\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            r.name,
            r.distinct_lengths,
            format_real(r.expected_length, d),
            format_real(r.symbols_per_sec, d),
            if r.round_trip_ok { "ok" } else { "FAILED" }
        );
    }
    Ok(out)
}

/// Executes one command and returns its output text. Commands whose main
/// product is a file (`encode`, `decode`) return a one-line summary.
pub fn run(cli: &Cli) -> Result<String> {
    match &cli.command {
        Command::Huffman { source, output } => {
            let pmf = load_source(source)?;
            let lengths = huffman(&pmf)?;
            let cost = expected_length(&pmf, &lengths)?;
            let kraft = kraft_sum(&lengths);
            if output.json {
                let cb = assign_canonical(&lengths)?;
                return Ok(to_json(&serde_json::json!({
                    "lengths": lengths.lengths(),
                    "cost": cost,
                    "distinct_lengths": lengths.distinct(),
                    "kraft": kraft.to_string(),
                    "codebook": cb.to_json_value(),
                })));
            }
            let mut out = String::new();
            let _ = writeln!(out, "expected length: {}", format_real(cost, output.digits));
            let _ = writeln!(out, "distinct lengths: {}", lengths.distinct());
            let _ = writeln!(out, "kraft: {kraft}");
            out.push_str(&codebook_table(&pmf, &lengths, output.digits)?);
            Ok(out)
        }
        Command::Reserved {
            source,
            lambda,
            phi,
            dump_grid,
            output,
        } => {
            let pmf = load_source(source)?;
            let ls = parse_lambda(lambda)?;
            let cost = parse_phi(phi)?;
            if let Some(path) = dump_grid {
                let grid = dp_grids(&pmf, &ls, &cost)?;
                grid.write_csv(fs::File::create(path)?)?;
            }
            let sol = solve_reserved(&pmf, &ls, &cost)?;
            render_solution(&pmf, &sol, &cost, output)
        }
        Command::Quasi {
            source,
            lambda,
            phi,
            output,
        } => {
            let pmf = load_source(source)?;
            let cost = parse_phi(phi)?;
            let sol = solve_reserved(&pmf, &parse_lambda(lambda)?, &cost)?;
            render_solution(&pmf, &sol, &cost, output)
        }
        Command::Glengths { source, g, output } => {
            let pmf = load_source(source)?;
            let report = solve_g_lengths(&pmf, *g)?;
            if output.json {
                return Ok(to_json(&report.to_json_value()));
            }
            let d = output.digits;
            let mut out = String::from("g'\tlengths set\texpected length\tkraft sum\n");
            for c in &report.best_per_g {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}",
                    c.g,
                    c.set,
                    format_real(c.solution.cost, d),
                    c.solution.kraft
                );
            }
            let _ = writeln!(out, "candidate sets tried: {}", report.candidates_tried);
            Ok(out)
        }
        Command::Encode { input, lambda, out } => encode_file(input, lambda.as_deref(), out),
        Command::Decode { input, labels, out } => decode_file(input, labels.as_deref(), out),
        Command::Bench {
            source,
            lambda,
            count,
            repeats,
            seed,
            output,
        } => render_bench(source, lambda, *count, *repeats, *seed, output),
        Command::Table1 { output } => Ok(render_table1(output)),
    }
}

/// Writes `text` to `--out` when the command has one, else returns it for
/// printing.
pub fn output_path(cli: &Cli) -> Option<&Path> {
    match &cli.command {
        Command::Huffman { output, .. }
        | Command::Reserved { output, .. }
        | Command::Glengths { output, .. }
        | Command::Quasi { output, .. }
        | Command::Bench { output, .. }
        | Command::Table1 { output } => output.out.as_deref(),
        Command::Encode { .. } | Command::Decode { .. } => None,
    }
}
