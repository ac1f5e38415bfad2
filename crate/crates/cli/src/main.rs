//! `edge-betti`: Betti numbers of normal edge rings from the command line.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use edge_betti_core::oracle::{Region, DEFAULT_CAP, DEFAULT_PRIME};

use crate::commands::{parse_input, Options};

#[derive(Parser)]
#[command(name = "edge-betti", version, about = "Multi-graded Betti numbers of normal edge rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Recognize the family of a graph.
    Classify(Common),
    /// Facet inequalities of the edge cone.
    Cone(Common),
    /// Minimal generators of the canonical module.
    Canonical(Common),
    /// Multi-graded Betti table from the closed formulas.
    Betti(Common),
    /// Check the formulas against the brute-force oracle.
    Verify(Common),
    /// Regular quotients of the two-ear initial ideal.
    Quotients(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Graph, e.g. "A 1,1", "B s=2 1:1", "C 1:1:1,1", "MP 2,3", "TE 3", "OE 2",
    /// "K2D 4" or "EDGES a-b,b-c,c-a".
    spec: String,
    /// Cross-check against the brute-force oracle.
    #[arg(long)]
    oracle: bool,
    /// Oracle scan region: "divisors" (of D_G) or "box:K".
    #[arg(long, default_value = "divisors", value_parser = parse_region)]
    region: Region,
    /// Add the standard-graded table.
    #[arg(long)]
    graded: bool,
    /// Shorthand for --format json.
    #[arg(long, conflicts_with_all = ["csv", "format"])]
    json: bool,
    /// Shorthand for --format csv (graded table only).
    #[arg(long, conflicts_with = "format")]
    csv: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Include the non-acyclic Γ-complexes in the JSON result.
    #[arg(long)]
    emit_complexes: bool,
    /// Worker threads for oracle scans; results do not depend on it.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Largest oracle region, in lattice points.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    /// Prime for the modular homology check.
    #[arg(long, default_value_t = DEFAULT_PRIME)]
    prime: u32,
    /// Report wall-clock time (makes output vary between runs).
    #[arg(long)]
    timing: bool,
}

fn parse_region(s: &str) -> Result<Region, String> {
    if s == "divisors" {
        return Ok(Region::Divisors);
    }
    s.strip_prefix("box:")
        .and_then(|k| k.parse().ok())
        .map(Region::Box)
        .ok_or_else(|| format!("expected \"divisors\" or \"box:K\", got {s:?}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, c) = match &cli.command {
        Command::Classify(c) => ("classify", c),
        Command::Cone(c) => ("cone", c),
        Command::Canonical(c) => ("canonical", c),
        Command::Betti(c) => ("betti", c),
        Command::Verify(c) => ("verify", c),
        Command::Quotients(c) => ("quotients", c),
    };
    let format = if c.json {
        Format::Json
    } else if c.csv {
        Format::Csv
    } else {
        c.format
    };
    let opts = Options {
        oracle: c.oracle || name == "verify",
        region: c.region,
        graded: c.graded || format == Format::Csv,
        emit_complexes: c.emit_complexes,
        threads: c.threads.max(1),
        cap: c.cap,
        prime: c.prime,
    };
    let start = Instant::now();
    let outcome = parse_input(&c.spec).and_then(|input| match &cli.command {
        Command::Classify(_) => commands::cmd_classify(&input),
        Command::Cone(_) => commands::cmd_cone(&input),
        Command::Canonical(_) => commands::cmd_canonical(&input, &opts),
        Command::Betti(_) => commands::cmd_betti(&input, &opts),
        Command::Verify(_) => commands::cmd_verify(&input, &opts),
        Command::Quotients(_) => commands::cmd_quotients(&input, &opts),
    });
    let mut report = match outcome {
        Ok(r) => r,
        Err(e) => {
            eprintln!("edge-betti {name}: {e}");
            return ExitCode::from(2);
        }
    };
    if c.timing {
        report.timing = Some(start.elapsed());
    }
    let out = match format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    print!("{out}");
    if report.failed() {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}
