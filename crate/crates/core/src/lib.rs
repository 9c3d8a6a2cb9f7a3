//! Snort on triangular grid graphs.
//!
//! * [`graph`] builds paths, triangulated grids and their corner variants.
//! * [`position`] holds the board state and the claim/tint/delete reduction.
//! * [`solver`] decides outcome classes by exhaustive memoized search.
//! * [`strategy`] encodes the first moves and one-hand-tied splits that make
//!   each family a first player win, and checks them by exhaustive play.

pub mod error;
pub mod graph;
pub mod isomorphism;
pub mod position;
pub mod report;
pub mod solver;
pub mod strategy;
pub mod vertex_set;

pub use error::{Error, IllegalMoveCause, Result};
pub use graph::{build_grid, build_path, build_variant, Family, Graph, GraphJson, VertexLabel};
pub use position::{initial_position, Outcome, Player, Position, PositionJson, PositionKey};
pub use solver::{solve_family, MoveOrder, SolveStats, Solver, SolverConfig};
pub use vertex_set::VertexSet;
