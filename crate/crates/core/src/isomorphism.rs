//! Backtracking isomorphism search between two small vertex sets of one graph.

use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Adjacency of `graph` restricted to `within`, with some edges dropped.
#[derive(Debug, Clone)]
pub struct Restricted {
    rows: Vec<VertexSet>,
}

impl Restricted {
    pub fn new(graph: &Graph, within: VertexSet, dropped_edges: &[(usize, usize)]) -> Restricted {
        let mut rows: Vec<VertexSet> = (0..graph.len())
            .map(|v| {
                if within.contains(v) {
                    graph.neighbor_mask(v).intersection(within)
                } else {
                    VertexSet::EMPTY
                }
            })
            .collect();
        for &(u, v) in dropped_edges {
            rows[u].remove(v);
            rows[v].remove(u);
        }
        Restricted { rows }
    }

    #[inline]
    pub fn row(&self, v: usize) -> VertexSet {
        self.rows[v]
    }

    #[inline]
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    /// Components of `within` under the restricted adjacency, by smallest member.
    pub fn components(&self, within: VertexSet) -> Vec<VertexSet> {
        let mut rest = within;
        let mut out = Vec::new();
        while let Some(start) = rest.first() {
            let mut seen = VertexSet::singleton(start);
            let mut frontier = seen;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier {
                    next = next.union(self.rows[v]);
                }
                frontier = next.intersection(within).difference(seen);
                seen = seen.union(frontier);
            }
            rest = rest.difference(seen);
            out.push(seen);
        }
        out
    }
}

/// First isomorphism from `a` onto `b` in lexicographic order: members of
/// `a` are assigned in ascending order, each trying images of `b` in
/// ascending order. Returns `(u, image)` pairs sorted by `u`.
pub fn find_isomorphism(adj: &Restricted, a: VertexSet, b: VertexSet) -> Option<Vec<(usize, usize)>> {
    if a.len() != b.len() {
        return None;
    }
    let mut degrees_a: Vec<usize> = a.iter().map(|v| adj.row(v).len()).collect();
    let mut degrees_b: Vec<usize> = b.iter().map(|v| adj.row(v).len()).collect();
    degrees_a.sort_unstable();
    degrees_b.sort_unstable();
    if degrees_a != degrees_b {
        return None;
    }
    let order: Vec<usize> = a.to_vec();
    let mut image: Vec<usize> = Vec::with_capacity(order.len());
    if extend(adj, &order, b, &mut image) {
        Some(order.into_iter().zip(image).collect())
    } else {
        None
    }
}

fn extend(adj: &Restricted, order: &[usize], free: VertexSet, image: &mut Vec<usize>) -> bool {
    let k = image.len();
    if k == order.len() {
        return true;
    }
    let u = order[k];
    for cand in free {
        if adj.row(cand).len() != adj.row(u).len() {
            continue;
        }
        let consistent = order[..k]
            .iter()
            .zip(image.iter())
            .all(|(&x, &y)| adj.adjacent(u, x) == adj.adjacent(cand, y));
        if !consistent {
            continue;
        }
        image.push(cand);
        let mut rest = free;
        rest.remove(cand);
        if extend(adj, order, rest, image) {
            return true;
        }
        image.pop();
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_disjoint_paths() {
        // 0-1-2   3-4-5
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let adj = Restricted::new(&g, g.all(), &[]);
        let comps = adj.components(g.all());
        assert_eq!(comps.len(), 2);
        let iso = find_isomorphism(&adj, comps[0], comps[1]).unwrap();
        assert_eq!(iso, vec![(0, 3), (1, 4), (2, 5)]);
    }

    #[test]
    fn dropped_edge_splits() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let adj = Restricted::new(&g, g.all(), &[(1, 2)]);
        assert_eq!(adj.components(g.all()).len(), 2);
    }

    #[test]
    fn non_isomorphic() {
        // triangle vs path
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5)]).unwrap();
        let adj = Restricted::new(&g, g.all(), &[]);
        let comps = adj.components(g.all());
        assert!(find_isomorphism(&adj, comps[0], comps[1]).is_none());
    }
}
