//! Serializable solve results and the family sweep table.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{Family, VertexLabel};
use crate::position::Outcome;
use crate::solver::{analyse_graph, SolveStats, SolverConfig};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BestFirstMoves {
    #[serde(rename = "Left")]
    pub left: Vec<VertexLabel>,
    #[serde(rename = "Right")]
    pub right: Vec<VertexLabel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsJson {
    pub nodes_expanded: u64,
    pub memo_hits: u64,
    pub elapsed_ms: f64,
}

impl From<SolveStats> for StatsJson {
    fn from(s: SolveStats) -> Self {
        StatsJson {
            nodes_expanded: s.nodes_expanded,
            memo_hits: s.memo_hits,
            elapsed_ms: s.elapsed.as_secs_f64() * 1e3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub family: Family,
    pub n: usize,
    pub outcome: Outcome,
    pub best_first_moves: BestFirstMoves,
    pub stats: StatsJson,
}

pub fn solve_report(family: Family, n: usize, config: SolverConfig) -> Result<SolveReport> {
    let graph = family.graph(n)?;
    let sol = analyse_graph(&graph, config)?;
    let labels = |vs: &[usize]| vs.iter().map(|&v| graph.label(v)).collect();
    Ok(SolveReport {
        family,
        n,
        outcome: sol.outcome,
        best_first_moves: BestFirstMoves {
            left: labels(&sol.best_left),
            right: labels(&sol.best_right),
        },
        stats: sol.stats.into(),
    })
}

/// Whether a first player win at this size is a proven claim: every member
/// of the two- and three-row families, except odd `RightMinusOnly3`.
pub fn theorem_covered(family: Family, n: usize) -> bool {
    match family {
        Family::Path => false,
        Family::RightMinusOnly3 => n.is_multiple_of(2),
        _ => true,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub family: Family,
    pub n: usize,
    pub theorem_covered: bool,
    /// `None` when the cell could not be solved; see `error`.
    pub report: Option<SolveReport>,
    pub error: Option<String>,
    /// A theorem-covered cell that did not come out as `N`.
    pub flagged: bool,
}

pub fn table(families: &[Family], n_min: usize, n_max: usize, config: SolverConfig) -> Vec<TableRow> {
    let mut rows = Vec::new();
    for &family in families {
        for n in n_min..=n_max {
            let covered = theorem_covered(family, n);
            let row = match solve_report(family, n, config) {
                Ok(r) => TableRow {
                    family,
                    n,
                    theorem_covered: covered,
                    flagged: covered && r.outcome != Outcome::N,
                    report: Some(r),
                    error: None,
                },
                Err(e) => TableRow {
                    family,
                    n,
                    theorem_covered: covered,
                    report: None,
                    error: Some(e.to_string()),
                    flagged: false,
                },
            };
            rows.push(row);
        }
    }
    rows
}

pub fn render_table(rows: &[TableRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<16} {:>3}  {:<7}  {:>10}  {:<24}  right wins with",
        "family", "n", "outcome", "nodes", "left wins with"
    );
    for row in rows {
        let line = match &row.report {
            Some(r) => {
                let join = |vs: &[VertexLabel]| {
                    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                };
                format!(
                    "{:<16} {:>3}  {:<7}  {:>10}  {:<24}  {}",
                    row.family.name(),
                    row.n,
                    r.outcome.to_string(),
                    r.stats.nodes_expanded,
                    join(&r.best_first_moves.left),
                    join(&r.best_first_moves.right)
                )
            }
            None => format!(
                "{:<16} {:>3}  unsupported: {}",
                row.family.name(),
                row.n,
                row.error.as_deref().unwrap_or("")
            ),
        };
        out.push_str(&line);
        if row.flagged {
            out.push_str("  <-- NOT A FIRST PLAYER WIN");
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_six_report() {
        let r = solve_report(Family::Path, 6, SolverConfig::default()).unwrap();
        assert_eq!(r.outcome, Outcome::N);
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["outcome"], "N");
        assert_eq!(json["family"], "path");
        assert!(json["best_first_moves"]["Left"].as_array().unwrap().contains(&"g3_1".into()));
    }

    #[test]
    fn table_shapes() {
        assert!(table(&[], 1, 4, SolverConfig::default()).is_empty());
        let rows = table(&[Family::T2], 3, 10, SolverConfig::default());
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|r| r.report.as_ref().unwrap().outcome == Outcome::N));
        assert!(rows.iter().all(|r| !r.flagged));
        let text = render_table(&rows);
        assert_eq!(text.lines().count(), 9);
    }

    #[test]
    fn oversized_cells_are_reported_not_fatal() {
        let rows = table(&[Family::T3], 21, 22, SolverConfig { node_cap: 1_000, ..Default::default() });
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r.error.is_some()));
    }
}
