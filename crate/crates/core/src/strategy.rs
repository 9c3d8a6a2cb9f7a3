//! First-move strategies for the triangular grid families.
//!
//! For every family and parity of `n` the first player (taken to be Left;
//! Right's strategy is the colour swap) claims one prescribed vertex and then
//! pretends that some of her tinted vertices and edges are gone. What
//! remains falls apart into two isomorphic components, and she answers
//! every move of her opponent with its image in the other component. The
//! tables below list the move and the ignored items; [`verify_copycat`]
//! plays the resulting strategy on the real graph against every possible
//! sequence of replies.

use std::fmt;

use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Family, Graph, VertexLabel};
use crate::isomorphism::{find_isomorphism, Restricted};
use crate::position::{initial_position, Player, Position};
use crate::solver::{Solver, DEFAULT_NODE_CAP};
use crate::vertex_set::VertexSet;

/// The strategist. Right-first play is the colour swap of everything here.
pub const STRATEGIST: Player = Player::Left;
const ADVERSARY: Player = Player::Right;

/// Largest graph accepted by [`check_symmetric_union`].
pub const SYMMETRIC_UNION_MAX: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Parity {
        if n.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// One-hand-tied split for a concrete `(family, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub family: Family,
    pub n: usize,
    pub parity: Parity,
    pub prescribed_move: VertexLabel,
    pub ignored_vertices: Vec<VertexLabel>,
    pub ignored_edges: Vec<(VertexLabel, VertexLabel)>,
    /// Sizes below the split threshold and the move played there instead.
    pub small_n_overrides: Vec<(usize, VertexLabel)>,
}

/// Label of column `i`, row `j` in a family member of width `n`; columns
/// `0`, `n + 1` and `n + 2` name the corner vertices.
fn at(n: usize, i: usize, j: usize) -> VertexLabel {
    match i {
        0 => VertexLabel::L(j),
        i if i == n + 1 => VertexLabel::R(j),
        i if i == n + 2 => VertexLabel::Rp(j),
        i => VertexLabel::grid(i, j),
    }
}

/// Smallest `n` handled by the generic split.
pub fn split_threshold(family: Family) -> Option<usize> {
    match family {
        Family::Path => None,
        Family::T2 | Family::OneSlant2 => Some(3),
        Family::T3 | Family::BothAddOne3 | Family::BothMinusOne3 | Family::OneSlant3 => Some(2),
        Family::LeftAddOneBoth3 | Family::RightAddOnly3 => Some(3),
        Family::RightMinusOnly3 => Some(2),
    }
}

/// Moves played below the split threshold.
pub fn small_n_overrides(family: Family) -> Vec<(usize, VertexLabel)> {
    let g = VertexLabel::grid;
    match family {
        Family::Path | Family::RightMinusOnly3 => vec![],
        Family::T2 => vec![(1, g(1, 1)), (2, g(1, 1))],
        Family::OneSlant2 => vec![(1, g(1, 1)), (2, g(2, 1))],
        Family::T3 | Family::OneSlant3 | Family::BothAddOne3 | Family::BothMinusOne3 => {
            vec![(1, g(1, 2))]
        }
        Family::LeftAddOneBoth3 => vec![(1, g(1, 2)), (2, g(2, 2))],
        Family::RightAddOnly3 => vec![(1, g(1, 2)), (2, g(2, 2))],
    }
}

pub fn small_n_override(family: Family, n: usize) -> Option<VertexLabel> {
    small_n_overrides(family)
        .into_iter()
        .find(|&(k, _)| k == n)
        .map(|(_, v)| v)
}

/// Families with a proven strategy at this size.
pub fn is_supported(family: Family, n: usize) -> bool {
    prescribed_move(family, n).is_ok()
}

fn unsupported(family: Family, n: usize) -> Option<Error> {
    let fits = n >= 1 && n <= family.max_n();
    match family {
        _ if !fits => Some(Error::InvalidSize(format!("{family} with n = {n}"))),
        Family::Path => Some(Error::NoStrategy { family, n }),
        Family::RightMinusOnly3 if n % 2 == 1 => Some(Error::NoStrategy { family, n }),
        _ => None,
    }
}

/// The first move Left plays on the empty board.
pub fn prescribed_move(family: Family, n: usize) -> Result<VertexLabel> {
    if let Some(e) = unsupported(family, n) {
        return Err(e);
    }
    if let Some(v) = small_n_override(family, n) {
        return Ok(v);
    }
    Ok(split_spec(family, n)?.prescribed_move)
}

/// Every first move named for this case; the first entry is
/// [`prescribed_move`]. Only odd `T2` offers a second choice.
pub fn prescribed_alternatives(family: Family, n: usize) -> Result<Vec<VertexLabel>> {
    let first = prescribed_move(family, n)?;
    let mut out = vec![first];
    if family == Family::T2 && n >= 3 && n % 2 == 1 {
        out.push(VertexLabel::grid(n.div_ceil(2), 2));
    }
    Ok(out)
}

pub fn split_spec(family: Family, n: usize) -> Result<SplitSpec> {
    if let Some(e) = unsupported(family, n) {
        return Err(e);
    }
    let threshold = split_threshold(family).ok_or(Error::NoStrategy { family, n })?;
    if n < threshold {
        return Err(Error::BelowThreshold { family, n });
    }
    let parity = Parity::of(n);
    let c = n.div_ceil(2);
    let h = n / 2;
    let p = |i: usize, j: usize| at(n, i, j);

    type Split = (VertexLabel, Vec<VertexLabel>, Vec<(VertexLabel, VertexLabel)>);
    let (mv, vertices, edges): Split = match (family, parity) {
        (Family::T2, Parity::Odd) => (p(c, 1), vec![p(c, 1), p(c, 2)], vec![]),
        (Family::T2, Parity::Even) => (
            p(h + 1, 2),
            vec![p(h, 1), p(h, 2), p(h + 1, 1), p(h + 1, 2)],
            vec![],
        ),
        (Family::OneSlant2, Parity::Odd) => (p(c, 1), vec![p(c, 1)], vec![(p(c, 2), p(c + 1, 2))]),
        (Family::OneSlant2, Parity::Even) => (
            p(h + 1, 2),
            vec![p(h + 1, 2)],
            vec![(p(h, 1), p(h + 1, 1))],
        ),
        (Family::T3, Parity::Odd) => (p(c, 2), vec![p(c, 1), p(c, 2), p(c, 3)], vec![]),
        (Family::T3, Parity::Even)
        | (Family::BothAddOne3, Parity::Even)
        | (Family::BothMinusOne3, Parity::Even) => (
            p(h + 1, 2),
            vec![p(h, 1), p(h, 2), p(h + 1, 2), p(h + 1, 3)],
            vec![],
        ),
        (Family::LeftAddOneBoth3, Parity::Even) => (
            p(h + 1, 2),
            vec![p(h, 1), p(h + 1, 2), p(h + 1, 3)],
            vec![],
        ),
        (Family::LeftAddOneBoth3, Parity::Odd) => (
            p(c, 2),
            vec![
                p(c - 1, 1),
                p(c, 1),
                p(c, 2),
                p(c + 1, 2),
                p(c, 3),
                p(c + 1, 3),
            ],
            vec![],
        ),
        (Family::BothAddOne3, Parity::Odd) | (Family::BothMinusOne3, Parity::Odd) => (
            p(c, 2),
            vec![p(c, 2)],
            vec![(p(c - 1, 1), p(c, 1)), (p(c, 3), p(c + 1, 3))],
        ),
        (Family::OneSlant3, Parity::Odd) => (
            p(c, 2),
            vec![p(c, 1), p(c, 2), p(c + 1, 2), p(c + 1, 3)],
            vec![],
        ),
        (Family::OneSlant3, Parity::Even) => (
            p(h + 1, 2),
            vec![p(h + 1, 2)],
            vec![(p(h, 1), p(h + 1, 1)), (p(h + 1, 3), p(h + 2, 3))],
        ),
        (Family::RightAddOnly3, Parity::Odd) => (
            p(c, 2),
            vec![p(c, 2), p(c, 1)],
            vec![(p(c, 3), p(c + 1, 3))],
        ),
        (Family::RightAddOnly3, Parity::Even) => (
            p(h + 1, 2),
            vec![p(h, 1), p(h, 2), p(h + 1, 1), p(h + 1, 2), p(h + 1, 3)],
            vec![],
        ),
        (Family::RightMinusOnly3, Parity::Even) => (
            p(h + 1, 2),
            vec![p(h, 1), p(h + 1, 1), p(h + 1, 2), p(h + 1, 3)],
            vec![],
        ),
        (Family::RightMinusOnly3, Parity::Odd) | (Family::Path, _) => {
            return Err(Error::NoStrategy { family, n })
        }
    };
    Ok(SplitSpec {
        family,
        n,
        parity,
        prescribed_move: mv,
        ignored_vertices: vertices,
        ignored_edges: edges,
        small_n_overrides: small_n_overrides(family),
    })
}

/// All transcriptions of the split worth checking, the adopted one first.
///
/// For odd `OneSlant3` the written deletion list uses `n/2` and `n/2 + 1`
/// on odd `n`. Reading those as the columns either side of the centre gives
/// two candidates: the adopted `(c,1),(c,2),(c+1,2),(c+1,3)` and the floor
/// reading `(c-1,1),(c-1,2),(c,2),(c,3)`, with `c = ceil(n/2)`.
pub fn split_spec_candidates(family: Family, n: usize) -> Result<Vec<SplitSpec>> {
    let adopted = split_spec(family, n)?;
    let mut out = vec![adopted.clone()];
    if family == Family::OneSlant3 && adopted.parity == Parity::Odd {
        let c = n.div_ceil(2);
        let p = |i: usize, j: usize| at(n, i, j);
        out.push(SplitSpec {
            ignored_vertices: vec![p(c - 1, 1), p(c - 1, 2), p(c, 2), p(c, 3)],
            ..adopted
        });
    }
    Ok(out)
}

/// Pairing between the two components left after the split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorMap {
    pairs: Vec<(usize, usize)>,
    partner: Vec<Option<usize>>,
}

impl MirrorMap {
    pub fn from_pairs(size: usize, pairs: Vec<(usize, usize)>) -> MirrorMap {
        let mut partner = vec![None; size];
        for &(a, b) in &pairs {
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        MirrorMap { pairs, partner }
    }

    /// `(u, image)` pairs, `u` from the component with the smallest vertex.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Where the strategist answers a move at `v`.
    pub fn respond(&self, v: usize) -> Result<usize> {
        self.partner
            .get(v)
            .copied()
            .flatten()
            .ok_or(Error::StrategyBreach { vertex: v })
    }
}

/// Free-function form of [`MirrorMap::respond`].
pub fn copycat_response(mirror: &MirrorMap, opponent_move: usize) -> Result<usize> {
    mirror.respond(opponent_move)
}

fn resolve(graph: &Graph, label: VertexLabel) -> Result<usize> {
    graph
        .index_of(label)
        .ok_or_else(|| Error::SplitTranscription(format!("vertex {label} is not in the graph")))
}

/// Computes the copycat pairing for the position right after the
/// prescribed move.
pub fn derive_mirror(position: &Position<'_>, spec: &SplitSpec) -> Result<MirrorMap> {
    let graph = position.graph();
    let mv = resolve(graph, spec.prescribed_move)?;
    if position.alive().contains(mv) {
        return Err(Error::Precondition(format!(
            "prescribed move {} has not been played",
            spec.prescribed_move
        )));
    }
    if let Some(v) = position.tint(ADVERSARY).first() {
        return Err(Error::Precondition(format!(
            "vertex {} carries the adversary's tint",
            graph.label(v)
        )));
    }
    let held = |v: usize| !position.alive().contains(v) || position.tint(STRATEGIST).contains(v);

    let mut ignored = VertexSet::EMPTY;
    for &label in &spec.ignored_vertices {
        let v = resolve(graph, label)?;
        if !held(v) {
            return Err(Error::Precondition(format!(
                "ignored vertex {label} is neither claimed nor tinted by the strategist"
            )));
        }
        ignored.insert(v);
    }
    let mut dropped = Vec::with_capacity(spec.ignored_edges.len());
    for &(a, b) in &spec.ignored_edges {
        let (u, v) = (resolve(graph, a)?, resolve(graph, b)?);
        if !graph.has_edge(u, v) {
            return Err(Error::SplitTranscription(format!("{a}-{b} is not an edge")));
        }
        if !held(u) || !held(v) {
            return Err(Error::Precondition(format!(
                "ignored edge {a}-{b} has an endpoint not tinted by the strategist"
            )));
        }
        dropped.push((u, v));
    }

    let within = position.alive().difference(ignored);
    let adj = Restricted::new(graph, within, &dropped);
    let comps = adj.components(within);
    let pairs = pair_components(&adj, &comps).ok_or_else(|| {
        Error::SplitTranscription(format!(
            "split of {} n={} leaves {} components that do not pair up isomorphically",
            spec.family,
            spec.n,
            comps.len()
        ))
    })?;
    Ok(MirrorMap::from_pairs(graph.len(), pairs))
}

/// Matches every component with an isomorphic partner. Normally there are
/// exactly two; a split that leaves isolated vertices may produce more, and
/// the two halves are then unions of paired components.
fn pair_components(adj: &Restricted, comps: &[VertexSet]) -> Option<Vec<(usize, usize)>> {
    if comps.is_empty() || comps.len() % 2 == 1 {
        return None;
    }
    let mut used = vec![false; comps.len()];
    let mut pairs = Vec::new();
    for a in 0..comps.len() {
        if used[a] {
            continue;
        }
        used[a] = true;
        let (b, iso) = (a + 1..comps.len())
            .filter(|&b| !used[b])
            .find_map(|b| find_isomorphism(adj, comps[a], comps[b]).map(|iso| (b, iso)))?;
        used[b] = true;
        pairs.extend(iso);
    }
    pairs.sort_unstable();
    Some(pairs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Win,
    Fail,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Win => "win",
            Verdict::Fail => "fail",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerificationMethod {
    /// Copycat play explored against every adversary line.
    Copycat,
    /// Small board: the prescribed move is checked against the solver.
    SolverCheck,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub player: Player,
    pub vertex: VertexLabel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub family: Family,
    pub n: usize,
    pub method: VerificationMethod,
    pub prescribed_move: VertexLabel,
    pub lines_explored: u64,
    pub max_depth: usize,
    pub verdict: Verdict,
    pub failure_trace: Option<Vec<TraceStep>>,
    pub failure_reason: Option<String>,
}

impl VerificationReport {
    pub fn is_win(&self) -> bool {
        self.verdict == Verdict::Win
    }
}

/// Plays the strategy for `(family, n)` against every adversary line.
pub fn verify_copycat(family: Family, n: usize) -> Result<VerificationReport> {
    let mv = prescribed_move(family, n)?;
    let graph = family.graph(n)?;
    if small_n_override(family, n).is_some() {
        return verify_by_solver(&graph, family, n, mv);
    }
    verify_split(&graph, &split_spec(family, n)?)
}

fn verify_by_solver(
    graph: &Graph,
    family: Family,
    n: usize,
    mv: VertexLabel,
) -> Result<VerificationReport> {
    let v = resolve(graph, mv)?;
    let mut solver = Solver::new(graph);
    let best = solver.best_moves(&initial_position(graph), STRATEGIST)?;
    let ok = best.contains(&v);
    Ok(VerificationReport {
        family,
        n,
        method: VerificationMethod::SolverCheck,
        prescribed_move: mv,
        lines_explored: solver.stats().nodes_expanded,
        max_depth: 0,
        verdict: if ok { Verdict::Win } else { Verdict::Fail },
        failure_trace: None,
        failure_reason: (!ok).then(|| format!("{mv} is not a winning first move")),
    })
}

/// Copycat verification of an explicit split on `graph`.
pub fn verify_split(graph: &Graph, spec: &SplitSpec) -> Result<VerificationReport> {
    let mv = resolve(graph, spec.prescribed_move)?;
    let start = initial_position(graph).apply_move(STRATEGIST, mv)?;
    let mirror = derive_mirror(&start, spec)?;
    let mut walk = Walk {
        mirror: &mirror,
        visited: FxHashSet::default(),
        trace: vec![(STRATEGIST, mv)],
        lines: 0,
        max_depth: 0,
        cap: DEFAULT_NODE_CAP,
    };
    let failure = walk.explore(&start)?;
    let (failure_trace, failure_reason) = match failure {
        Some((trace, reason)) => (
            Some(
                trace
                    .into_iter()
                    .map(|(player, v)| TraceStep {
                        player,
                        vertex: graph.label(v),
                    })
                    .collect(),
            ),
            Some(reason),
        ),
        None => (None, None),
    };
    Ok(VerificationReport {
        family: spec.family,
        n: spec.n,
        method: VerificationMethod::Copycat,
        prescribed_move: spec.prescribed_move,
        lines_explored: walk.lines,
        max_depth: walk.max_depth,
        verdict: if failure_trace.is_some() {
            Verdict::Fail
        } else {
            Verdict::Win
        },
        failure_trace,
        failure_reason,
    })
}

type Failure = (Vec<(Player, usize)>, String);

struct Walk<'m> {
    mirror: &'m MirrorMap,
    visited: FxHashSet<(u64, u64, u64)>,
    trace: Vec<(Player, usize)>,
    lines: u64,
    max_depth: usize,
    cap: u64,
}

impl Walk<'_> {
    /// Adversary to move. Returns the first losing line found, if any.
    fn explore(&mut self, pos: &Position<'_>) -> Result<Option<Failure>> {
        let key = (pos.alive().0, pos.blue_tint().0, pos.red_tint().0);
        if !self.visited.insert(key) {
            return Ok(None);
        }
        let replies = pos.legal_set(ADVERSARY);
        if replies.is_empty() {
            self.max_depth = self.max_depth.max(self.trace.len());
            return Ok(None);
        }
        for r in replies {
            self.lines += 1;
            if self.lines > self.cap {
                return Err(Error::ResourceBudget {
                    nodes: self.lines,
                    memo_entries: self.visited.len(),
                });
            }
            self.trace.push((ADVERSARY, r));
            let after = pos.play(ADVERSARY, r);
            let answer = match self.mirror.respond(r) {
                Ok(a) => a,
                Err(e) => return Ok(Some((self.trace.clone(), e.to_string()))),
            };
            if let Err(e) = after.check_move(STRATEGIST, answer) {
                let mut trace = self.trace.clone();
                trace.push((STRATEGIST, answer));
                return Ok(Some((trace, format!("copycat reply refused: {e}"))));
            }
            self.trace.push((STRATEGIST, answer));
            if let Some(f) = self.explore(&after.play(STRATEGIST, answer))? {
                return Ok(Some(f));
            }
            self.trace.pop();
            self.trace.pop();
        }
        Ok(None)
    }
}

/// Copycat check on a disjoint union: `g` with `tint` in `tint_colour`
/// beside an untinted copy of `g`. Returns whether the player restricted by
/// the tint wins moving first; copycat play says it never does.
pub fn check_symmetric_union(g: &Graph, tint: VertexSet, tint_colour: Player) -> Result<bool> {
    if g.len() > SYMMETRIC_UNION_MAX {
        return Err(Error::TooManyVertices { vertices: g.len() });
    }
    let union = g.disjoint_union(g)?;
    let pos = initial_position(&union).apply_tint(tint_colour, tint)?;
    Solver::new(&union).wins_moving(&pos, tint_colour.opponent())
}
