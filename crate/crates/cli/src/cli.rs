//! Command line surface: `solve`, `table`, `verify`, `export` and `serve`.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use snort_core::report::{render_table, solve_report, table};
use snort_core::solver::{MoveOrder, SolverConfig, DEFAULT_NODE_CAP};
use snort_core::strategy::verify_copycat;
use snort_core::{Error, Family};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFY_FAILED: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "snort", version, about = "Solve and study Snort positions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Outcome class and winning first moves of one family member.
    Solve(SolveArgs),
    /// Outcome table over a range of families and sizes.
    Table(TableArgs),
    /// Check the mirror strategy of a family member against every reply.
    Verify(VerifyArgs),
    /// Dump a family member as DOT or JSON.
    Export(ExportArgs),
    /// Run the HTTP game and analysis service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Args)]
pub struct Board {
    #[arg(long, value_parser = parse_family)]
    pub family: Family,
    #[arg(long, value_parser = parse_size)]
    pub n: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    /// Plain recursion without the transposition table.
    #[arg(long)]
    pub no_memo: bool,
    #[arg(long, default_value = "index", value_parser = parse_order)]
    pub order: MoveOrder,
    /// Abort after expanding this many nodes.
    #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
    pub node_cap: u64,
}

impl SearchArgs {
    pub fn config(&self) -> SolverConfig {
        SolverConfig {
            memo: !self.no_memo,
            order: self.order,
            node_cap: self.node_cap,
            ..SolverConfig::default()
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub board: Board,
    #[command(flatten)]
    pub search: SearchArgs,
    /// JSON report (the default).
    #[arg(long, conflicts_with = "table")]
    pub json: bool,
    /// One human-readable table row instead of JSON.
    #[arg(long)]
    pub table: bool,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    /// Comma separated family names, or `all`.
    #[arg(long, default_value = "all")]
    pub families: String,
    #[arg(long, default_value_t = 1, value_parser = parse_size)]
    pub n_min: usize,
    #[arg(long, default_value_t = 6, value_parser = parse_size)]
    pub n_max: usize,
    #[command(flatten)]
    pub search: SearchArgs,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub board: Board,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Dot,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub board: Board,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: ExportFormat,
}

#[derive(Debug, Clone, Args)]
pub struct ServeArgs {
    #[arg(long, env = "SNORT_PORT", default_value_t = 8080)]
    pub port: u16,
    /// Listen on all interfaces instead of loopback only.
    #[arg(long)]
    pub open: bool,
    /// Append every session event to this JSON-lines file.
    #[arg(long)]
    pub journal: Option<PathBuf>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

fn parse_order(s: &str) -> Result<MoveOrder, String> {
    s.parse()
}

fn parse_size(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("size must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

pub fn parse_families(s: &str) -> Result<Vec<Family>, Error> {
    if s.trim().eq_ignore_ascii_case("all") {
        return Ok(Family::ALL.to_vec());
    }
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// Exit status for an engine error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::TooManyVertices { .. }
        | Error::InvalidSize(_)
        | Error::NotAVariant { .. }
        | Error::UnknownFamily(_)
        | Error::UnknownLabel(_) => EXIT_USAGE,
        Error::ResourceBudget { .. } => EXIT_BUDGET,
        Error::SplitTranscription(_) | Error::Precondition(_) | Error::StrategyBreach { .. } => {
            EXIT_VERIFY_FAILED
        }
        _ => EXIT_ERROR,
    }
}

/// Runs every subcommand except `serve`. Results go to `out`, diagnostics to
/// `err`; the return value is the process exit status.
pub fn run(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match command {
        Command::Solve(a) => solve(a, out),
        Command::Table(a) => run_table(a, out),
        Command::Verify(a) => verify(a, out),
        Command::Export(a) => export(a, out),
        Command::Serve(_) => {
            let _ = writeln!(err, "serve needs the async runtime; use the snort binary");
            return EXIT_USAGE;
        }
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.downcast_ref::<Error>().map_or(EXIT_ERROR, exit_code)
        }
    }
}

fn solve(a: &SolveArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let report = solve_report(a.board.family, a.board.n, a.search.config())?;
    if a.table {
        let row = snort_core::report::TableRow {
            family: report.family,
            n: report.n,
            theorem_covered: snort_core::report::theorem_covered(report.family, report.n),
            flagged: false,
            error: None,
            report: Some(report),
        };
        write!(out, "{}", render_table(&[row]))?;
    } else {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    }
    Ok(EXIT_OK)
}

fn run_table(a: &TableArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    if a.n_min > a.n_max {
        return Err(Error::InvalidSize(format!("n-min {} exceeds n-max {}", a.n_min, a.n_max)).into());
    }
    let families = parse_families(&a.families)?;
    let rows = table(&families, a.n_min, a.n_max, a.search.config());
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&rows)?)?;
    } else {
        write!(out, "{}", render_table(&rows))?;
    }
    Ok(if rows.iter().any(|r| r.flagged) { EXIT_VERIFY_FAILED } else { EXIT_OK })
}

fn verify(a: &VerifyArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let (family, n) = (a.board.family, a.board.n);
    // size errors take precedence over a missing strategy
    family.graph(n)?;
    let report = match verify_copycat(family, n) {
        Ok(r) => r,
        Err(e @ Error::NoStrategy { .. }) => {
            writeln!(out, "{e}")?;
            return Ok(EXIT_OK);
        }
        Err(e) => return Err(e.into()),
    };
    if a.json {
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    } else {
        writeln!(out, "{} n={}: {}", family, n, report.verdict)?;
        writeln!(out, "  first move      {}", report.prescribed_move)?;
        writeln!(out, "  method          {:?}", report.method)?;
        writeln!(out, "  lines explored  {}", report.lines_explored)?;
        writeln!(out, "  max depth       {}", report.max_depth)?;
        if let Some(reason) = &report.failure_reason {
            writeln!(out, "  reason          {reason}")?;
        }
        if let Some(trace) = &report.failure_trace {
            let moves: Vec<String> =
                trace.iter().map(|s| format!("{}:{}", s.player, s.vertex)).collect();
            writeln!(out, "  trace           {}", moves.join(" "))?;
        }
    }
    Ok(if report.is_win() { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn export(a: &ExportArgs, out: &mut dyn Write) -> anyhow::Result<i32> {
    let graph = a.board.family.graph(a.board.n)?;
    match a.format {
        ExportFormat::Dot => write!(out, "{}", graph.export_dot(None))?,
        ExportFormat::Json => writeln!(out, "{}", serde_json::to_string_pretty(&graph.to_json())?)?,
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn families_list() {
        assert_eq!(parse_families("all").unwrap().len(), Family::ALL.len());
        assert_eq!(parse_families("t2, T3").unwrap(), vec![Family::T2, Family::T3]);
        assert!(parse_families("").unwrap().is_empty());
        assert!(parse_families("t9").is_err());
    }

    #[test]
    fn zero_size_is_rejected_by_the_parser() {
        let e = Cli::try_parse_from(["snort", "solve", "--family", "t2", "--n", "0"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }
}
