//! Exact win/loss search for Snort under normal play.
//!
//! The search is a plain negamax over "does the player to move win", with a
//! transposition table keyed on mover-relative tint sets. Internally a node
//! is stored as two words: the vertices the mover may claim and the vertices
//! the opponent may claim. Their intersection is the untinted live set, so
//! the pair determines the position exactly.

use std::time::{Duration, Instant};

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Family, Graph};
use crate::position::{initial_position, Outcome, Player, Position};
use crate::vertex_set::VertexSet;

pub const DEFAULT_NODE_CAP: u64 = 500_000_000;
pub const DEFAULT_MEMO_CAPACITY: usize = 200_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveOrder {
    /// Ascending vertex index.
    #[default]
    Index,
    /// Moves that tint the most fresh vertices first, ties by index.
    Greedy,
}

impl std::str::FromStr for MoveOrder {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "index" => Ok(MoveOrder::Index),
            "greedy" => Ok(MoveOrder::Greedy),
            _ => Err(format!("unknown move order `{s}` (expected index|greedy)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolverConfig {
    /// Disable to get a memo-free recursion (oracle mode).
    pub memo: bool,
    pub order: MoveOrder,
    pub node_cap: u64,
    pub memo_capacity: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            memo: true,
            order: MoveOrder::Index,
            node_cap: DEFAULT_NODE_CAP,
            memo_capacity: DEFAULT_MEMO_CAPACITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveStats {
    pub nodes_expanded: u64,
    pub memo_hits: u64,
    pub elapsed: Duration,
}

impl SolveStats {
    fn absorb(&mut self, other: SolveStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.memo_hits += other.memo_hits;
        self.elapsed += other.elapsed;
    }
}

/// Packed mover-relative node: (claimable by mover, claimable by opponent).
type Node = (u64, u64);

pub struct Solver<'g> {
    graph: &'g Graph,
    neighbours: Vec<u64>,
    config: SolverConfig,
    memo: FxHashMap<Node, bool>,
    stats: SolveStats,
}

impl<'g> Solver<'g> {
    pub fn new(graph: &'g Graph) -> Solver<'g> {
        Solver::with_config(graph, SolverConfig::default())
    }

    pub fn with_config(graph: &'g Graph, config: SolverConfig) -> Solver<'g> {
        Solver {
            graph,
            neighbours: (0..graph.len()).map(|v| graph.neighbor_mask(v).0).collect(),
            config,
            memo: FxHashMap::default(),
            stats: SolveStats::default(),
        }
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn config(&self) -> SolverConfig {
        self.config
    }

    /// Counters accumulated over every query made through this solver.
    pub fn stats(&self) -> SolveStats {
        self.stats
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// Does `mover`, moving next, win with perfect play?
    pub fn wins_moving(&mut self, position: &Position<'_>, mover: Player) -> Result<bool> {
        debug_assert!(std::ptr::eq(position.graph(), self.graph));
        let start = Instant::now();
        let res = self.search(node_of(position, mover));
        self.stats.elapsed += start.elapsed();
        res
    }

    pub fn outcome(&mut self, position: &Position<'_>) -> Result<Outcome> {
        let left = self.wins_moving(position, Player::Left)?;
        let right = self.wins_moving(position, Player::Right)?;
        Ok(Outcome::from_wins(left, right))
    }

    /// Legal moves after which the opponent, moving next, loses. Ascending.
    pub fn best_moves(&mut self, position: &Position<'_>, mover: Player) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for v in position.legal_set(mover) {
            let child = position.play(mover, v);
            if !self.wins_moving(&child, mover.opponent())? {
                out.push(v);
            }
        }
        Ok(out)
    }

    fn search(&mut self, (mine, theirs): Node) -> Result<bool> {
        if mine == 0 {
            return Ok(false);
        }
        // The opponent's options only shrink, so any move wins.
        if theirs == 0 {
            return Ok(true);
        }
        if self.config.memo {
            if let Some(&won) = self.memo.get(&(mine, theirs)) {
                self.stats.memo_hits += 1;
                return Ok(won);
            }
        }
        self.stats.nodes_expanded += 1;
        if self.stats.nodes_expanded > self.config.node_cap {
            return Err(self.budget_error());
        }

        let mut won = false;
        match self.config.order {
            MoveOrder::Index => {
                for v in VertexSet(mine) {
                    if !self.search(self.child((mine, theirs), v))? {
                        won = true;
                        break;
                    }
                }
            }
            MoveOrder::Greedy => {
                for v in self.greedy_order((mine, theirs)) {
                    if !self.search(self.child((mine, theirs), v))? {
                        won = true;
                        break;
                    }
                }
            }
        }

        if self.config.memo {
            if self.memo.len() >= self.config.memo_capacity {
                return Err(self.budget_error());
            }
            self.memo.insert((mine, theirs), won);
        }
        Ok(won)
    }

    /// Mover claims `v`; returns the node from the opponent's point of view.
    #[inline]
    fn child(&self, (mine, theirs): Node, v: usize) -> Node {
        let bit = 1u64 << v;
        let alive = (mine | theirs) & !bit;
        // Neighbours become unavailable to the opponent; those that were
        // already off-limits to the mover are double tinted and vanish.
        let touched = self.neighbours[v] & alive;
        let mine = mine & !bit;
        let theirs = theirs & !bit & !touched;
        (theirs, mine)
    }

    fn greedy_order(&self, (mine, theirs): Node) -> Vec<usize> {
        let alive = mine | theirs;
        let mut moves: Vec<(u32, usize)> = VertexSet(mine)
            .iter()
            .map(|v| {
                // fresh = live neighbours the opponent could still claim
                let fresh = self.neighbours[v] & alive & theirs & !(1u64 << v);
                (fresh.count_ones(), v)
            })
            .collect();
        moves.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        moves.into_iter().map(|(_, v)| v).collect()
    }

    fn budget_error(&self) -> Error {
        Error::ResourceBudget {
            nodes: self.stats.nodes_expanded,
            memo_entries: self.memo.len(),
        }
    }
}

fn node_of(position: &Position<'_>, mover: Player) -> Node {
    (
        position.legal_set(mover).0,
        position.legal_set(mover.opponent()).0,
    )
}

/// Outcome class of the empty board of a family member.
pub fn solve_family(family: Family, n: usize) -> Result<(Outcome, SolveStats)> {
    solve_family_with(family, n, SolverConfig::default())
}

pub fn solve_family_with(
    family: Family,
    n: usize,
    config: SolverConfig,
) -> Result<(Outcome, SolveStats)> {
    let graph = family.graph(n)?;
    let mut solver = Solver::with_config(&graph, config);
    let outcome = solver.outcome(&initial_position(&graph))?;
    Ok((outcome, solver.stats()))
}

/// Full analysis of an empty board: outcome plus every winning first move.
#[derive(Debug, Clone)]
pub struct FamilySolution {
    pub outcome: Outcome,
    pub best_left: Vec<usize>,
    pub best_right: Vec<usize>,
    pub stats: SolveStats,
}

pub fn analyse_graph(graph: &Graph, config: SolverConfig) -> Result<FamilySolution> {
    let mut solver = Solver::with_config(graph, config);
    let start = initial_position(graph);
    let outcome = solver.outcome(&start)?;
    let best_left = solver.best_moves(&start, Player::Left)?;
    let best_right = solver.best_moves(&start, Player::Right)?;
    let mut stats = SolveStats::default();
    stats.absorb(solver.stats());
    Ok(FamilySolution {
        outcome,
        best_left,
        best_right,
        stats,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_grid, build_path};

    #[test]
    fn trivial_positions() {
        let g = build_path(1).unwrap();
        let mut s = Solver::new(&g);
        let p = initial_position(&g);
        assert!(s.wins_moving(&p, Player::Left).unwrap());
        assert!(s.wins_moving(&p, Player::Right).unwrap());
        assert_eq!(s.best_moves(&p, Player::Left).unwrap(), vec![0]);

        let empty = p.play(Player::Left, 0);
        assert!(!s.wins_moving(&empty, Player::Left).unwrap());
        assert!(!s.wins_moving(&empty, Player::Right).unwrap());
        assert_eq!(s.outcome(&empty).unwrap(), Outcome::P);
        assert!(s.best_moves(&empty, Player::Left).unwrap().is_empty());

        let blue = p.apply_tint(Player::Left, VertexSet::singleton(0)).unwrap();
        assert_eq!(s.outcome(&blue).unwrap(), Outcome::L);
    }

    #[test]
    fn path_six_is_first_player_win() {
        let g = build_path(6).unwrap();
        let mut s = Solver::new(&g);
        let p = initial_position(&g);
        assert!(s.wins_moving(&p, Player::Left).unwrap());
        assert_eq!(s.outcome(&p).unwrap(), Outcome::N);
    }

    #[test]
    fn child_matches_position_play() {
        let g = build_grid(3, 3).unwrap();
        let s = Solver::new(&g);
        let p = initial_position(&g)
            .play(Player::Left, 4)
            .play(Player::Right, 0);
        for mover in Player::BOTH {
            for v in p.legal_set(mover) {
                let want = node_of(&p.play(mover, v), mover.opponent());
                assert_eq!(s.child(node_of(&p, mover), v), want);
            }
        }
    }

    #[test]
    fn node_cap_is_an_error() {
        let g = build_grid(4, 3).unwrap();
        let config = SolverConfig { node_cap: 10, ..SolverConfig::default() };
        let mut s = Solver::with_config(&g, config);
        let err = s.outcome(&initial_position(&g)).unwrap_err();
        assert!(matches!(err, Error::ResourceBudget { .. }));
    }

    #[test]
    fn memo_capacity_is_an_error() {
        let g = build_grid(4, 3).unwrap();
        let config = SolverConfig { memo_capacity: 5, ..SolverConfig::default() };
        let mut s = Solver::with_config(&g, config);
        assert!(matches!(
            s.outcome(&initial_position(&g)),
            Err(Error::ResourceBudget { .. })
        ));
    }

    #[test]
    fn greedy_and_index_agree() {
        for (n, m) in [(3, 2), (4, 2), (3, 3), (4, 3)] {
            let g = build_grid(n, m).unwrap();
            let p = initial_position(&g);
            let mut a = Solver::new(&g);
            let mut b = Solver::with_config(
                &g,
                SolverConfig { order: MoveOrder::Greedy, ..SolverConfig::default() },
            );
            assert_eq!(a.outcome(&p).unwrap(), b.outcome(&p).unwrap());
            assert_eq!(
                a.best_moves(&p, Player::Left).unwrap(),
                b.best_moves(&p, Player::Left).unwrap()
            );
        }
    }
}
