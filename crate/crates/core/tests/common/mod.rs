//! Oracles and generators shared by the integration tests. Nothing here
//! calls the solver or the graph builders.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::rngs::StdRng;
use rand::Rng;
use snort_core::{Family, Graph, Player, Position, VertexSet};

/// Memo-free negamax over the public move API.
pub fn brute_wins(p: &Position<'_>, mover: Player) -> bool {
    p.legal_moves(mover)
        .into_iter()
        .any(|v| !brute_wins(&p.apply_move(mover, v).unwrap(), mover.opponent()))
}

pub type EdgeSet = BTreeSet<(String, String)>;

fn edge(a: String, b: String) -> (String, String) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Vertices and edges of a family member, enumerated straight from the
/// definitions of the grid and of each corner variant.
pub fn definition(family: Family, n: usize) -> (BTreeSet<String>, EdgeSet) {
    let m = match family {
        Family::Path => 1,
        Family::T2 | Family::OneSlant2 => 2,
        _ => 3,
    };
    let g = |i: usize, j: usize| format!("g{i}_{j}");
    let mut vs = BTreeSet::new();
    let mut es = EdgeSet::new();
    for i in 1..=n {
        for j in 1..=m {
            vs.insert(g(i, j));
        }
    }
    // horizontal, vertical, diagonal
    for i1 in 1..n {
        for j in 1..=m {
            es.insert(edge(g(i1, j), g(i1 + 1, j)));
        }
    }
    for i in 1..=n {
        for j1 in 1..m {
            es.insert(edge(g(i, j1), g(i, j1 + 1)));
        }
    }
    for i1 in 1..n {
        for j1 in 1..m {
            es.insert(edge(g(i1, j1), g(i1 + 1, j1 + 1)));
        }
    }
    let s = |x: &str| x.to_string();
    let (extra_v, extra_e): (Vec<&str>, Vec<(String, String)>) = match family {
        Family::Path | Family::T2 | Family::T3 => (vec![], vec![]),
        Family::OneSlant2 => (vec!["R2"], vec![(g(n, 1), s("R2")), (g(n, 2), s("R2"))]),
        Family::OneSlant3 => (
            vec!["R2", "R3", "R3p"],
            vec![
                (g(n, 1), s("R2")),
                (g(n, 2), s("R2")),
                (g(n, 2), s("R3")),
                (g(n, 3), s("R3")),
                (s("R2"), s("R3")),
                (s("R2"), s("R3p")),
                (s("R3"), s("R3p")),
            ],
        ),
        Family::LeftAddOneBoth3 => (
            vec!["L1", "R2", "R3"],
            vec![
                (s("L1"), g(1, 1)),
                (s("L1"), g(1, 2)),
                (g(n, 1), s("R2")),
                (g(n, 2), s("R2")),
                (g(n, 2), s("R3")),
                (g(n, 3), s("R3")),
                (s("R2"), s("R3")),
            ],
        ),
        Family::BothAddOne3 => (
            vec!["L1", "R3"],
            vec![
                (s("L1"), g(1, 1)),
                (s("L1"), g(1, 2)),
                (g(n, 2), s("R3")),
                (g(n, 3), s("R3")),
            ],
        ),
        Family::RightAddOnly3 => (vec!["R3"], vec![(g(n, 2), s("R3")), (g(n, 3), s("R3"))]),
        Family::RightMinusOnly3 => (
            vec!["R2", "R3"],
            vec![
                (g(n, 1), s("R2")),
                (g(n, 2), s("R2")),
                (g(n, 2), s("R3")),
                (g(n, 3), s("R3")),
                (s("R2"), s("R3")),
            ],
        ),
        Family::BothMinusOne3 => (
            vec!["L1", "L2", "R2", "R3"],
            vec![
                (s("L1"), g(1, 1)),
                (s("L1"), g(1, 2)),
                (s("L2"), g(1, 2)),
                (s("L2"), g(1, 3)),
                (s("L1"), s("L2")),
                (g(n, 1), s("R2")),
                (g(n, 2), s("R2")),
                (g(n, 2), s("R3")),
                (g(n, 3), s("R3")),
                (s("R2"), s("R3")),
            ],
        ),
    };
    vs.extend(extra_v.into_iter().map(String::from));
    es.extend(extra_e.into_iter().map(|(a, b)| edge(a, b)));
    (vs, es)
}

pub fn labelled_edges(g: &Graph) -> EdgeSet {
    g.edges()
        .into_iter()
        .map(|(u, v)| edge(g.label(u).to_string(), g.label(v).to_string()))
        .collect()
}

/// Random simple graph on `1..=max_vertices` vertices with a random density.
pub fn random_graph(rng: &mut StdRng, max_vertices: usize) -> Graph {
    let n = rng.gen_range(1..=max_vertices);
    let density: f64 = rng.gen_range(0.0..=1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

pub fn random_subset(rng: &mut StdRng, of: VertexSet) -> VertexSet {
    of.iter().filter(|_| rng.gen_bool(0.3)).collect()
}

/// A position reached by a few random legal moves, with an optional sprinkle
/// of extra tints.
pub fn random_position<'g>(rng: &mut StdRng, g: &'g Graph, max_moves: usize) -> Position<'g> {
    let mut p = Position::initial(g);
    let moves = rng.gen_range(0..=max_moves);
    for _ in 0..moves {
        let player = if rng.gen_bool(0.5) { Player::Left } else { Player::Right };
        let legal = p.legal_moves(player);
        if legal.is_empty() {
            break;
        }
        p = p.apply_move(player, legal[rng.gen_range(0..legal.len())]).unwrap();
    }
    if rng.gen_bool(0.5) {
        let player = if rng.gen_bool(0.5) { Player::Left } else { Player::Right };
        let tint = random_subset(rng, p.alive());
        p = p.apply_tint(player, tint).unwrap();
    }
    p
}
