//! Server-side game sessions: a human against the engine on one board.

use serde::{Deserialize, Serialize};
use snort_core::solver::SolverConfig;
use snort_core::{
    Error, Family, Graph, GraphJson, Outcome, Player, Position, PositionJson, Solver, VertexLabel,
    VertexSet,
};

/// Node cap for engine and analysis searches made on behalf of the service.
pub const SERVICE_NODE_CAP: u64 = 50_000_000;

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("it is not {0}'s turn")]
    NotYourTurn(Player),
    #[error("the game is over")]
    GameOver,
    #[error(transparent)]
    Illegal(Error),
    #[error(transparent)]
    Core(#[from] Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ply {
    pub player: Player,
    pub vertex: usize,
}

#[derive(Debug, Clone)]
pub struct GameSession {
    id: String,
    family: Family,
    n: usize,
    graph: Graph,
    human: Player,
    first: Player,
    history: Vec<Ply>,
    alive: VertexSet,
    blue: VertexSet,
    red: VertexSet,
    to_move: Player,
}

impl GameSession {
    /// New game; if the engine moves first it opens immediately.
    pub fn start(
        id: String,
        family: Family,
        n: usize,
        human: Player,
        first: Player,
    ) -> Result<GameSession, SessionError> {
        let graph = family.graph(n)?;
        let all = graph.all();
        let mut session = GameSession {
            id,
            family,
            n,
            graph,
            human,
            first,
            history: Vec::new(),
            alive: all,
            blue: VertexSet::EMPTY,
            red: VertexSet::EMPTY,
            to_move: first,
        };
        if first != human {
            session.engine_reply()?;
        }
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn history(&self) -> &[Ply] {
        &self.history
    }

    pub fn to_move(&self) -> Player {
        self.to_move
    }

    pub fn position(&self) -> Position<'_> {
        Position::from_sets(&self.graph, self.alive, self.blue, self.red)
            .expect("session state is always a valid position")
    }

    /// Recomputes the current position from the move history.
    pub fn replay(&self) -> Result<Position<'_>, Error> {
        let mut p = Position::initial(&self.graph);
        for ply in &self.history {
            p = p.apply_move(ply.player, ply.vertex)?;
        }
        Ok(p)
    }

    pub fn is_over(&self) -> bool {
        self.position().legal_set(self.to_move).is_empty()
    }

    /// The player who moved last, once the side to move is stuck.
    pub fn winner(&self) -> Option<Player> {
        self.is_over().then(|| self.to_move.opponent())
    }

    fn apply(&mut self, player: Player, v: usize) -> Result<(), SessionError> {
        let (alive, blue, red) = {
            let next = self.position().apply_move(player, v).map_err(SessionError::Illegal)?;
            (next.alive(), next.blue_tint(), next.red_tint())
        };
        self.alive = alive;
        self.blue = blue;
        self.red = red;
        self.history.push(Ply { player, vertex: v });
        self.to_move = player.opponent();
        Ok(())
    }

    /// Plays the human's move, then the engine's answer (if it has one).
    pub fn human_move(&mut self, v: usize) -> Result<Option<usize>, SessionError> {
        if self.is_over() {
            return Err(SessionError::GameOver);
        }
        if self.to_move != self.human {
            return Err(SessionError::NotYourTurn(self.human));
        }
        self.apply(self.human, v)?;
        self.engine_reply()
    }

    fn engine_reply(&mut self) -> Result<Option<usize>, SessionError> {
        let engine = self.human.opponent();
        debug_assert_eq!(self.to_move, engine);
        let choice = if self.history.is_empty() {
            engine_opening(&self.position(), engine)?
        } else {
            engine_choice(&self.position(), engine)?
        };
        if let Some(v) = choice {
            self.apply(engine, v)?;
        }
        Ok(choice)
    }

    pub fn view(&self) -> SessionView {
        let pos = self.position();
        SessionView {
            id: self.id.clone(),
            family: self.family,
            n: self.n,
            human_player: self.human,
            first_player: self.first,
            to_move: self.to_move,
            graph: self.graph.to_json(),
            position: pos.to_json(),
            history: self.history.clone(),
            legal_moves: pos.legal_moves(self.to_move),
            human_legal_moves: if self.to_move == self.human {
                pos.legal_moves(self.human)
            } else {
                Vec::new()
            },
            game_over: self.is_over(),
            winner: self.winner(),
        }
    }

    pub fn analysis(&self) -> Result<AnalysisView, Error> {
        let pos = self.position();
        let mut solver = Solver::with_config(&self.graph, service_config());
        let outcome = solver.outcome(&pos)?;
        let winning = solver.best_moves(&pos, self.to_move)?;
        Ok(AnalysisView {
            outcome,
            to_move: self.to_move,
            winning_labels: winning.iter().map(|&v| self.graph.label(v)).collect(),
            winning_moves: winning,
            position: pos.to_json(),
        })
    }
}

fn service_config() -> SolverConfig {
    SolverConfig {
        node_cap: SERVICE_NODE_CAP,
        ..SolverConfig::default()
    }
}

/// Lowest-index winning move, or the lowest-index legal move when every move
/// loses (or the search budget runs out). `None` if the engine is stuck.
pub fn engine_choice(pos: &Position<'_>, engine: Player) -> Result<Option<usize>, Error> {
    let mut solver = Solver::with_config(pos.graph(), service_config());
    match solver.best_moves(pos, engine) {
        Ok(best) if !best.is_empty() => Ok(Some(best[0])),
        Ok(_) | Err(Error::ResourceBudget { .. }) => Ok(pos.legal_set(engine).first()),
        Err(e) => Err(e),
    }
}

/// Opening move: the most central winning vertex (least eccentricity), ties
/// by index. Falls back to [`engine_choice`] when no move wins.
pub fn engine_opening(pos: &Position<'_>, engine: Player) -> Result<Option<usize>, Error> {
    let mut solver = Solver::with_config(pos.graph(), service_config());
    match solver.best_moves(pos, engine) {
        Ok(best) if !best.is_empty() => {
            Ok(best.into_iter().min_by_key(|&v| (eccentricity(pos.graph(), v, pos.alive()), v)))
        }
        Ok(_) | Err(Error::ResourceBudget { .. }) => engine_choice(pos, engine),
        Err(e) => Err(e),
    }
}

/// Largest BFS distance from `v` inside `within`.
fn eccentricity(graph: &Graph, v: usize, within: VertexSet) -> usize {
    let mut seen = VertexSet::singleton(v);
    let mut frontier = seen;
    let mut depth = 0;
    loop {
        let mut next = VertexSet::EMPTY;
        for u in frontier.iter() {
            next = next.union(graph.neighbor_mask(u));
        }
        next = next.intersection(within).difference(seen);
        if next.is_empty() {
            return depth;
        }
        seen = seen.union(next);
        frontier = next;
        depth += 1;
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SessionView {
    pub id: String,
    pub family: Family,
    pub n: usize,
    pub human_player: Player,
    pub first_player: Player,
    pub to_move: Player,
    pub graph: GraphJson,
    pub position: PositionJson,
    pub history: Vec<Ply>,
    /// Legal moves of the side to move.
    pub legal_moves: Vec<usize>,
    /// Cells the human may click right now.
    pub human_legal_moves: Vec<usize>,
    pub game_over: bool,
    pub winner: Option<Player>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisView {
    pub outcome: Outcome,
    pub to_move: Player,
    pub winning_moves: Vec<usize>,
    pub winning_labels: Vec<VertexLabel>,
    pub position: PositionJson,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn engine_opens_path_six_in_the_centre() {
        let s = GameSession::start("t".into(), Family::Path, 6, Player::Right, Player::Left).unwrap();
        assert_eq!(s.history().len(), 1);
        let v = s.history()[0].vertex;
        // vertices 3 and 4 of the path
        assert!(v == 2 || v == 3, "engine opened at {v}");
        assert_eq!(s.to_move(), Player::Right);
    }

    #[test]
    fn engine_wins_when_moving_first() {
        for (family, n) in [(Family::T2, 5), (Family::BothAddOne3, 3), (Family::Path, 6)] {
            let mut s = GameSession::start("t".into(), family, n, Player::Right, Player::Left).unwrap();
            // human always plays its highest legal vertex
            while !s.is_over() {
                let v = *s.position().legal_moves(Player::Right).last().unwrap();
                s.human_move(v).unwrap();
            }
            assert_eq!(s.winner(), Some(Player::Left), "{family} n={n}");
            assert_eq!(s.replay().unwrap(), s.position());
        }
    }

    #[test]
    fn illegal_and_out_of_turn() {
        let mut s = GameSession::start("t".into(), Family::Path, 6, Player::Right, Player::Left).unwrap();
        let engine_vertex = s.history()[0].vertex;
        assert!(matches!(s.human_move(engine_vertex), Err(SessionError::Illegal(_))));
        let mut t = GameSession::start("t".into(), Family::Path, 1, Player::Left, Player::Left).unwrap();
        t.human_move(0).unwrap();
        assert!(matches!(t.human_move(0), Err(SessionError::GameOver)));
    }
}
