//! Knotted foams presented as movies of Morse stills.
pub mod moves;
pub mod movie;
pub mod spin;
pub mod still;
pub use moves::Kind;
pub use movie::{
    cocycle_invariant, collect_triple_points, load_movie, parse_movie, propagate_coloring, validate_movie, Event,
    FoamColoring, InvariantMultiset, InvariantReport, Movie, MovieError, TriplePoint,
};
pub use still::{Layout, Level, Side, Still, StillColoring, StillError};
