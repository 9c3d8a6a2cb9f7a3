//! Triangulated grid graphs and the corner-extended variants played on in
//! the strategy tables.
//!
//! Grid vertices are labelled `(i, j)` with column `1 <= i <= n` and row
//! `1 <= j <= m`. Every unit square carries the diagonal `(i, j)-(i+1, j+1)`.
//! Extra corner vertices sit in column `0` (`L_j`), `n + 1` (`R_j`) or
//! `n + 2` (`R'_j`).

use std::collections::HashMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::position::Position;
use crate::vertex_set::VertexSet;

pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Grid { i: usize, j: usize },
    L(usize),
    R(usize),
    /// Second column to the right, `R'_j`.
    Rp(usize),
}

impl VertexLabel {
    pub fn grid(i: usize, j: usize) -> VertexLabel {
        VertexLabel::Grid { i, j }
    }

    fn sort_key(&self) -> (u8, usize, usize) {
        match *self {
            VertexLabel::Grid { i, j } => (0, j, i),
            VertexLabel::L(j) => (1, j, 0),
            VertexLabel::R(j) => (2, j, 0),
            VertexLabel::Rp(j) => (3, j, 0),
        }
    }
}

impl Ord for VertexLabel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for VertexLabel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::Grid { i, j } => write!(f, "g{i}_{j}"),
            VertexLabel::L(j) => write!(f, "L{j}"),
            VertexLabel::R(j) => write!(f, "R{j}"),
            VertexLabel::Rp(j) => write!(f, "R{j}p"),
        }
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if let Some(rest) = s.strip_prefix('g') {
            let (i, j) = rest.split_once('_').ok_or_else(bad)?;
            return Ok(VertexLabel::grid(num(i)?, num(j)?));
        }
        if let Some(rest) = s.strip_prefix('L') {
            return Ok(VertexLabel::L(num(rest)?));
        }
        if let Some(rest) = s.strip_prefix('R') {
            return match rest.strip_suffix('p') {
                Some(idx) => Ok(VertexLabel::Rp(num(idx)?)),
                None => Ok(VertexLabel::R(num(rest)?)),
            };
        }
        Err(bad())
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The graph families covered by the solver and the strategy tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    T2,
    OneSlant2,
    T3,
    OneSlant3,
    LeftAddOneBoth3,
    BothAddOne3,
    RightAddOnly3,
    RightMinusOnly3,
    BothMinusOne3,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Path,
        Family::T2,
        Family::OneSlant2,
        Family::T3,
        Family::OneSlant3,
        Family::LeftAddOneBoth3,
        Family::BothAddOne3,
        Family::RightAddOnly3,
        Family::RightMinusOnly3,
        Family::BothMinusOne3,
    ];

    /// The seven families built on three rows.
    pub const THREE_ROW: [Family; 7] = [
        Family::T3,
        Family::OneSlant3,
        Family::LeftAddOneBoth3,
        Family::BothAddOne3,
        Family::RightAddOnly3,
        Family::RightMinusOnly3,
        Family::BothMinusOne3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Path => "path",
            Family::T2 => "t2",
            Family::OneSlant2 => "oneslant2",
            Family::T3 => "t3",
            Family::OneSlant3 => "oneslant3",
            Family::LeftAddOneBoth3 => "leftaddoneboth3",
            Family::BothAddOne3 => "bothaddone3",
            Family::RightAddOnly3 => "rightaddonly3",
            Family::RightMinusOnly3 => "rightminusonly3",
            Family::BothMinusOne3 => "bothminusone3",
        }
    }

    /// Number of grid rows in the base rectangle.
    pub fn rows(self) -> usize {
        match self {
            Family::Path => 1,
            Family::T2 | Family::OneSlant2 => 2,
            _ => 3,
        }
    }

    /// Corner vertices added to the base rectangle.
    pub fn extra_vertices(self) -> &'static [VertexLabel] {
        use VertexLabel::*;
        match self {
            Family::Path | Family::T2 | Family::T3 => &[],
            Family::OneSlant2 => &[R(2)],
            Family::OneSlant3 => &[R(2), R(3), Rp(3)],
            Family::LeftAddOneBoth3 => &[L(1), R(2), R(3)],
            Family::BothAddOne3 => &[L(1), R(3)],
            Family::RightAddOnly3 => &[R(3)],
            Family::RightMinusOnly3 => &[R(2), R(3)],
            Family::BothMinusOne3 => &[L(1), L(2), R(2), R(3)],
        }
    }

    /// Edges added to the base rectangle, as listed in the family definitions.
    pub fn extra_edges(self, n: usize) -> Vec<(VertexLabel, VertexLabel)> {
        use VertexLabel::*;
        let g = VertexLabel::grid;
        let right_pair = [
            (g(n, 1), R(2)),
            (g(n, 2), R(2)),
            (g(n, 2), R(3)),
            (g(n, 3), R(3)),
            (R(2), R(3)),
        ];
        let left_one = [(L(1), g(1, 1)), (L(1), g(1, 2))];
        match self {
            Family::Path | Family::T2 | Family::T3 => vec![],
            Family::OneSlant2 => vec![(g(n, 1), R(2)), (g(n, 2), R(2))],
            Family::OneSlant3 => {
                let mut e = right_pair.to_vec();
                e.extend([(R(2), Rp(3)), (R(3), Rp(3))]);
                e
            }
            Family::LeftAddOneBoth3 => left_one.iter().chain(&right_pair).copied().collect(),
            Family::BothAddOne3 => {
                let mut e = left_one.to_vec();
                e.extend([(g(n, 2), R(3)), (g(n, 3), R(3))]);
                e
            }
            Family::RightAddOnly3 => vec![(g(n, 2), R(3)), (g(n, 3), R(3))],
            Family::RightMinusOnly3 => right_pair.to_vec(),
            Family::BothMinusOne3 => {
                let mut e = left_one.to_vec();
                e.extend([(L(2), g(1, 2)), (L(2), g(1, 3)), (L(1), L(2))]);
                e.extend(right_pair);
                e
            }
        }
    }

    pub fn vertex_count(self, n: usize) -> usize {
        n * self.rows() + self.extra_vertices().len()
    }

    /// Largest `n` whose graph fits the 64-vertex budget.
    pub fn max_n(self) -> usize {
        (MAX_VERTICES - self.extra_vertices().len()) / self.rows()
    }

    /// Builds the family member of size `n`.
    pub fn graph(self, n: usize) -> Result<Graph> {
        match self {
            Family::Path => build_path(n),
            _ => build_variant(self, n),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        Family::ALL
            .into_iter()
            .find(|f| f.name() == lower)
            .ok_or_else(|| Error::UnknownFamily(s.to_string()))
    }
}

/// An undirected simple graph on at most 64 vertices with a fixed vertex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: Vec<VertexLabel>,
    adjacency: Vec<VertexSet>,
    family: Option<Family>,
    n: usize,
}

impl Graph {
    /// Builds a graph from an explicit edge list; vertices are labelled
    /// `g1_1 .. g{count}_1`. Used for ad-hoc test graphs.
    pub fn from_edges(count: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        if count > MAX_VERTICES {
            return Err(Error::TooManyVertices { vertices: count });
        }
        let mut adjacency = vec![VertexSet::EMPTY; count];
        for &(u, v) in edges {
            if u >= count || v >= count {
                return Err(Error::VertexOutOfRange { vertex: u.max(v) });
            }
            if u == v {
                return Err(Error::InvalidSize(format!("self-loop at vertex {u}")));
            }
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph {
            vertices: (1..=count).map(|i| VertexLabel::grid(i, 1)).collect(),
            adjacency,
            family: None,
            n: count,
        })
    }

    /// Two side-by-side copies; the second copy's indices are shifted by `self.len()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let offset = self.len();
        let edges: Vec<_> = self
            .edges()
            .into_iter()
            .chain(other.edges().into_iter().map(|(u, v)| (u + offset, v + offset)))
            .collect();
        Graph::from_edges(offset + other.len(), &edges)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    pub fn all(&self) -> VertexSet {
        VertexSet::full(self.len())
    }

    pub fn label(&self, v: usize) -> VertexLabel {
        self.vertices[v]
    }

    pub fn index_of(&self, label: VertexLabel) -> Option<usize> {
        self.vertices.iter().position(|&l| l == label)
    }

    /// Resolves a column/row coordinate, mapping column `0` to `L_j`, `n + 1`
    /// to `R_j` and `n + 2` to `R'_j`. Returns `None` if that vertex is absent.
    pub fn at(&self, i: usize, j: usize) -> Option<usize> {
        let label = match i {
            0 => VertexLabel::L(j),
            i if i == self.n + 1 => VertexLabel::R(j),
            i if i == self.n + 2 => VertexLabel::Rp(j),
            i => VertexLabel::grid(i, j),
        };
        self.index_of(label)
    }

    pub fn neighbors(&self, v: usize) -> Result<VertexSet> {
        self.adjacency
            .get(v)
            .copied()
            .ok_or(Error::VertexOutOfRange { vertex: v })
    }

    /// Adjacency row without the range check.
    #[inline]
    pub fn neighbor_mask(&self, v: usize) -> VertexSet {
        self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency.get(u).is_some_and(|row| row.contains(v))
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (u, row) in self.adjacency.iter().enumerate() {
            out.extend(row.iter().filter(|&v| v > u).map(|v| (u, v)));
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        match self.all().first() {
            None => true,
            Some(start) => self.reach(start, self.all()) == self.all(),
        }
    }

    /// Vertices of `within` reachable from `start` through `within`.
    pub fn reach(&self, start: usize, within: VertexSet) -> VertexSet {
        let mut seen = VertexSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier {
                next = next.union(self.adjacency[v]);
            }
            frontier = next.intersection(within).difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            family: self.family.map(|f| f.name().to_string()),
            n: self.n,
            vertices: self.vertices.iter().map(|l| l.to_string()).collect(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    /// Graphviz rendering; with a position, dead vertices are greyed out and
    /// tinted vertices get a light fill.
    pub fn export_dot(&self, position: Option<&Position<'_>>) -> String {
        let name = match self.family {
            Some(f) => format!("{}_{}", f.name(), self.n),
            None => "G".to_string(),
        };
        let mut out = format!("graph {name} {{\n");
        for (v, label) in self.vertices.iter().enumerate() {
            let attrs = position.and_then(|p| {
                if !p.alive().contains(v) {
                    Some("style=dashed, color=gray")
                } else if p.blue_tint().contains(v) {
                    Some("style=filled, fillcolor=lightblue")
                } else if p.red_tint().contains(v) {
                    Some("style=filled, fillcolor=lightpink")
                } else {
                    None
                }
            });
            match attrs {
                Some(a) => writeln!(out, "  {label} [{a}];"),
                None => writeln!(out, "  {label};"),
            }
            .expect("writing to a String");
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {} -- {};", self.vertices[u], self.vertices[v])
                .expect("writing to a String");
        }
        out.push_str("}\n");
        out
    }
}

/// Wire form of a graph: labels in vertex order and index pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub family: Option<String>,
    pub n: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

struct Builder {
    labels: Vec<VertexLabel>,
    edges: Vec<(VertexLabel, VertexLabel)>,
}

impl Builder {
    fn grid(n: usize, m: usize) -> Builder {
        let g = VertexLabel::grid;
        let mut labels = Vec::with_capacity(n * m);
        let mut edges = Vec::new();
        for j in 1..=m {
            for i in 1..=n {
                labels.push(g(i, j));
                if i < n {
                    edges.push((g(i, j), g(i + 1, j)));
                }
                if j < m {
                    edges.push((g(i, j), g(i, j + 1)));
                }
                if i < n && j < m {
                    edges.push((g(i, j), g(i + 1, j + 1)));
                }
            }
        }
        Builder { labels, edges }
    }

    fn finish(mut self, family: Option<Family>, n: usize) -> Result<Graph> {
        self.labels.sort();
        let index: HashMap<VertexLabel, usize> = self
            .labels
            .iter()
            .enumerate()
            .map(|(k, &l)| (l, k))
            .collect();
        let mut adjacency = vec![VertexSet::EMPTY; self.labels.len()];
        for (a, b) in self.edges {
            let (u, v) = (index[&a], index[&b]);
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Ok(Graph {
            vertices: self.labels,
            adjacency,
            family,
            n,
        })
    }
}

fn check_budget(vertices: usize) -> Result<()> {
    if vertices > MAX_VERTICES {
        Err(Error::TooManyVertices { vertices })
    } else {
        Ok(())
    }
}

pub fn build_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSize("path length must be at least 1".into()));
    }
    check_budget(n)?;
    Builder::grid(n, 1).finish(Some(Family::Path), n)
}

/// The triangulated grid with `n` columns and `m` rows.
///
/// The resulting graph is tagged with the family whose base it is (`Path`,
/// `T2` or `T3`); other row counts are tagged `None`.
pub fn build_grid(n: usize, m: usize) -> Result<Graph> {
    if n == 0 || m == 0 {
        return Err(Error::InvalidSize(format!("grid {n}x{m} is empty")));
    }
    check_budget(n.saturating_mul(m))?;
    let family = match m {
        1 => Some(Family::Path),
        2 => Some(Family::T2),
        3 => Some(Family::T3),
        _ => None,
    };
    Builder::grid(n, m).finish(family, n)
}

pub fn build_variant(family: Family, n: usize) -> Result<Graph> {
    if family == Family::Path {
        return Err(Error::NotAVariant { family });
    }
    if n == 0 {
        return Err(Error::InvalidSize("n must be at least 1".into()));
    }
    check_budget(family.vertex_count(n))?;
    let mut b = Builder::grid(n, family.rows());
    b.labels.extend_from_slice(family.extra_vertices());
    b.edges.extend(family.extra_edges(n));
    b.finish(Some(family), n)
}

/// Free-function form of [`Graph::neighbors`].
pub fn neighbors(graph: &Graph, v: usize) -> Result<VertexSet> {
    graph.neighbors(v)
}
