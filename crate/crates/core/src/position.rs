//! Snort positions and the claim/tint/delete reduction.
//!
//! A move claims a vertex: the vertex leaves play and every live neighbour
//! gains the mover's tint. A vertex holding both tints can never be claimed
//! and is removed on the spot, so the two tint sets stay disjoint.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, IllegalMoveCause, Result};
use crate::graph::Graph;
use crate::vertex_set::VertexSet;

/// Left colours blue, Right colours red.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub const BOTH: [Player; 2] = [Player::Left, Player::Right];

    #[inline]
    pub fn opponent(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Left => "Left",
            Player::Right => "Right",
        })
    }
}

impl FromStr for Player {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "left" | "l" | "blue" => Ok(Player::Left),
            "right" | "r" | "red" => Ok(Player::Right),
            _ => Err(format!("unknown player `{s}`")),
        }
    }
}

/// Outcome class under normal play.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Outcome {
    /// The next player to move wins.
    N,
    /// The previous player wins.
    P,
    /// Left wins whoever starts.
    L,
    /// Right wins whoever starts.
    R,
}

impl Outcome {
    /// Combines "Left wins moving first" and "Right wins moving first".
    pub fn from_wins(left_wins_first: bool, right_wins_first: bool) -> Outcome {
        match (left_wins_first, right_wins_first) {
            (true, true) => Outcome::N,
            (false, false) => Outcome::P,
            (true, false) => Outcome::L,
            (false, true) => Outcome::R,
        }
    }

    /// Exchanges the roles of Left and Right.
    pub fn swap(self) -> Outcome {
        match self {
            Outcome::L => Outcome::R,
            Outcome::R => Outcome::L,
            o => o,
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Transposition-table key: the live set plus the tints of the player to
/// move and of the opponent. Colour-swapped positions with swapped movers
/// share a key.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PositionKey {
    pub alive: u64,
    pub friendly: u64,
    pub enemy: u64,
}

#[derive(Clone, Copy)]
pub struct Position<'g> {
    graph: &'g Graph,
    alive: VertexSet,
    blue: VertexSet,
    red: VertexSet,
}

impl PartialEq for Position<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.graph, other.graph)
            && self.alive == other.alive
            && self.blue == other.blue
            && self.red == other.red
    }
}

impl Eq for Position<'_> {}

impl fmt::Debug for Position<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Position")
            .field("alive", &self.alive)
            .field("blue", &self.blue)
            .field("red", &self.red)
            .finish()
    }
}

/// Fresh board: every vertex live, nothing tinted.
pub fn initial_position(graph: &Graph) -> Position<'_> {
    Position::initial(graph)
}

impl<'g> Position<'g> {
    pub fn initial(graph: &'g Graph) -> Position<'g> {
        Position {
            graph,
            alive: graph.all(),
            blue: VertexSet::EMPTY,
            red: VertexSet::EMPTY,
        }
    }

    /// Builds a position from raw sets. Tints must lie inside `alive`;
    /// vertices carrying both tints are deleted.
    pub fn from_sets(
        graph: &'g Graph,
        alive: VertexSet,
        blue: VertexSet,
        red: VertexSet,
    ) -> Result<Position<'g>> {
        let all = graph.all();
        for set in [alive, blue, red] {
            if let Some(v) = set.difference(all).first() {
                return Err(Error::VertexOutOfRange { vertex: v });
            }
        }
        if let Some(v) = blue.union(red).difference(alive).first() {
            return Err(Error::IllegalMove {
                vertex: v,
                cause: IllegalMoveCause::Dead,
            });
        }
        Ok(Position {
            graph,
            alive,
            blue,
            red,
        }
        .reduced())
    }

    pub fn graph(&self) -> &'g Graph {
        self.graph
    }

    pub fn alive(&self) -> VertexSet {
        self.alive
    }

    pub fn blue_tint(&self) -> VertexSet {
        self.blue
    }

    pub fn red_tint(&self) -> VertexSet {
        self.red
    }

    #[inline]
    pub fn tint(&self, player: Player) -> VertexSet {
        match player {
            Player::Left => self.blue,
            Player::Right => self.red,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.alive.is_empty()
    }

    /// Live vertices not tinted in the opponent's colour.
    #[inline]
    pub fn legal_set(&self, player: Player) -> VertexSet {
        self.alive.difference(self.tint(player.opponent()))
    }

    /// Legal moves in ascending index order.
    pub fn legal_moves(&self, player: Player) -> Vec<usize> {
        self.legal_set(player).to_vec()
    }

    pub fn check_move(&self, player: Player, v: usize) -> Result<()> {
        let cause = if v >= self.graph.len() {
            IllegalMoveCause::OutOfRange
        } else if !self.alive.contains(v) {
            IllegalMoveCause::Dead
        } else if self.tint(player.opponent()).contains(v) {
            IllegalMoveCause::OpponentTinted
        } else {
            return Ok(());
        };
        Err(Error::IllegalMove { vertex: v, cause })
    }

    pub fn apply_move(&self, player: Player, v: usize) -> Result<Position<'g>> {
        self.check_move(player, v)?;
        Ok(self.play(player, v))
    }

    /// [`Position::apply_move`] without the legality check.
    #[inline]
    pub fn play(&self, player: Player, v: usize) -> Position<'g> {
        let mut next = *self;
        next.alive.remove(v);
        next.blue.remove(v);
        next.red.remove(v);
        let touched = self.graph.neighbor_mask(v).intersection(next.alive);
        match player {
            Player::Left => next.blue = next.blue.union(touched),
            Player::Right => next.red = next.red.union(touched),
        }
        next.reduced()
    }

    /// Adds `player`'s tint to every vertex of `vs` (all must be live).
    pub fn apply_tint(&self, player: Player, vs: VertexSet) -> Result<Position<'g>> {
        if let Some(v) = vs.difference(self.graph.all()).first() {
            return Err(Error::VertexOutOfRange { vertex: v });
        }
        if let Some(v) = vs.difference(self.alive).first() {
            return Err(Error::IllegalMove {
                vertex: v,
                cause: IllegalMoveCause::Dead,
            });
        }
        let mut next = *self;
        match player {
            Player::Left => next.blue = next.blue.union(vs),
            Player::Right => next.red = next.red.union(vs),
        }
        Ok(next.reduced())
    }

    #[inline]
    fn reduced(mut self) -> Self {
        let both = self.blue.intersection(self.red);
        self.alive = self.alive.difference(both);
        self.blue = self.blue.difference(both);
        self.red = self.red.difference(both);
        self
    }

    /// Connected components of the live subgraph, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut rest = self.alive;
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let comp = self.graph.reach(v, self.alive);
            rest = rest.difference(comp);
            out.push(comp);
        }
        out
    }

    #[inline]
    pub fn canonical_key(&self, mover: Player) -> PositionKey {
        PositionKey {
            alive: self.alive.0,
            friendly: self.tint(mover).0,
            enemy: self.tint(mover.opponent()).0,
        }
    }

    /// The same board with blue and red tints exchanged.
    pub fn swap_colours(&self) -> Position<'g> {
        Position {
            blue: self.red,
            red: self.blue,
            ..*self
        }
    }

    pub fn to_json(&self) -> PositionJson {
        PositionJson {
            alive: self.alive.to_vec(),
            blue: self.blue.to_vec(),
            red: self.red.to_vec(),
        }
    }

    pub fn from_json(graph: &'g Graph, json: &PositionJson) -> Result<Position<'g>> {
        let set = |vs: &[usize]| -> Result<VertexSet> {
            match vs.iter().find(|&&v| v >= graph.len()) {
                Some(&v) => Err(Error::VertexOutOfRange { vertex: v }),
                None => Ok(vs.iter().copied().collect()),
            }
        };
        Position::from_sets(graph, set(&json.alive)?, set(&json.blue)?, set(&json.red)?)
    }
}

/// Wire form of a position, as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionJson {
    pub alive: Vec<usize>,
    pub blue: Vec<usize>,
    pub red: Vec<usize>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{build_grid, build_path};

    fn set(vs: &[usize]) -> VertexSet {
        vs.iter().copied().collect()
    }

    #[test]
    fn initial_positions() {
        let k1 = build_path(1).unwrap();
        let p = initial_position(&k1);
        assert_eq!(p.alive(), set(&[0]));
        assert!(p.blue_tint().is_empty() && p.red_tint().is_empty());
        let p6 = build_path(6).unwrap();
        assert_eq!(initial_position(&p6).alive().len(), 6);
        let t33 = build_grid(3, 3).unwrap();
        assert_eq!(initial_position(&t33).alive().len(), 9);
    }

    // Path vertices 1..6 are indices 0..5.
    #[test]
    fn path_six_reduction() {
        let g = build_path(6).unwrap();
        let p = initial_position(&g).apply_move(Player::Left, 2).unwrap();
        assert_eq!(p.alive(), set(&[0, 1, 3, 4, 5]));
        assert_eq!(p.blue_tint(), set(&[1, 3]));
        assert_eq!(p.legal_moves(Player::Right), vec![0, 4, 5]);

        let p = p.apply_move(Player::Right, 4).unwrap();
        assert_eq!(p.alive(), set(&[0, 1, 5]));
        assert_eq!(p.blue_tint(), set(&[1]));
        assert_eq!(p.red_tint(), set(&[5]));
        assert_eq!(p.components(), vec![set(&[0, 1]), set(&[5])]);
    }

    #[test]
    fn illegal_moves_are_distinguished() {
        let g = build_path(3).unwrap();
        let p = initial_position(&g).apply_move(Player::Left, 0).unwrap();
        let dead = p.apply_move(Player::Right, 0).unwrap_err();
        assert_eq!(dead, Error::IllegalMove { vertex: 0, cause: IllegalMoveCause::Dead });
        let tinted = p.apply_move(Player::Right, 1).unwrap_err();
        assert_eq!(
            tinted,
            Error::IllegalMove { vertex: 1, cause: IllegalMoveCause::OpponentTinted }
        );
        let range = p.apply_move(Player::Right, 7).unwrap_err();
        assert_eq!(range, Error::IllegalMove { vertex: 7, cause: IllegalMoveCause::OutOfRange });
        // own tint is fine
        assert!(p.apply_move(Player::Left, 1).is_ok());
    }

    #[test]
    fn single_vertex_cases() {
        let g = build_path(1).unwrap();
        let p = initial_position(&g);
        assert!(p.apply_move(Player::Left, 0).unwrap().is_empty());
        let red = p.apply_tint(Player::Right, set(&[0])).unwrap();
        assert!(red.legal_moves(Player::Left).is_empty());
        assert_eq!(red.legal_moves(Player::Right), vec![0]);
        let both = red.apply_tint(Player::Left, set(&[0])).unwrap();
        assert!(both.is_empty());
    }

    #[test]
    fn tint_edge_cases() {
        let g = build_path(2).unwrap();
        let p = initial_position(&g);
        assert_eq!(p.apply_tint(Player::Left, VertexSet::EMPTY).unwrap(), p);
        let p = p.apply_tint(Player::Left, set(&[0])).unwrap();
        assert_eq!(p.legal_moves(Player::Right).len(), 1);
        assert!(p.apply_tint(Player::Left, set(&[9])).is_err());
    }

    #[test]
    fn components_of_empty_and_connected() {
        let g = build_grid(3, 2).unwrap();
        let p = initial_position(&g);
        assert_eq!(p.components().len(), 1);
        let empty = Position::from_sets(&g, VertexSet::EMPTY, VertexSet::EMPTY, VertexSet::EMPTY)
            .unwrap();
        assert!(empty.components().is_empty());
    }

    #[test]
    fn keys() {
        let g = build_path(4).unwrap();
        let p = Position::from_sets(&g, set(&[0, 1, 2, 3]), set(&[0]), set(&[3])).unwrap();
        assert_eq!(p.canonical_key(Player::Left), p.canonical_key(Player::Left));
        assert_eq!(p.canonical_key(Player::Left), p.swap_colours().canonical_key(Player::Right));
        let q = Position::from_sets(&g, set(&[0, 1, 3]), set(&[0]), set(&[3])).unwrap();
        assert_ne!(p.canonical_key(Player::Left), q.canonical_key(Player::Left));
    }

    #[test]
    fn json_round_trip() {
        let g = build_path(6).unwrap();
        let p = initial_position(&g)
            .apply_move(Player::Left, 2)
            .unwrap()
            .apply_move(Player::Right, 4)
            .unwrap();
        let j = p.to_json();
        assert_eq!(j.alive, vec![0, 1, 5]);
        assert_eq!(Position::from_json(&g, &j).unwrap(), p);
        let bad = PositionJson { alive: vec![0], blue: vec![1], red: vec![] };
        assert!(Position::from_json(&g, &bad).is_err());
    }

    #[test]
    fn outcome_combination() {
        assert_eq!(Outcome::from_wins(true, true), Outcome::N);
        assert_eq!(Outcome::from_wins(false, false), Outcome::P);
        assert_eq!(Outcome::from_wins(true, false), Outcome::L);
        assert_eq!(Outcome::from_wins(false, true), Outcome::R);
        assert_eq!(Outcome::L.swap(), Outcome::R);
        assert_eq!(Outcome::N.swap(), Outcome::N);
    }
}
