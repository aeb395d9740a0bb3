//! Convex polyominoes classified by degree of convexity.
//!
//! The crate enumerates convex polyominoes, measures their NE/NW convexity
//! degrees, grows ascending polyominoes along a generating tree and checks
//! closed-form generating functions against exact power series.

pub mod classify;
pub mod enumerate;
pub mod gentree;
pub mod polyomino;
pub mod series;
pub mod verify;

pub use classify::{census, degree_pair, CensusRow, DegreePair};
pub use enumerate::{all_convex, count_convex};
pub use polyomino::{Cell, Polyomino, PolyominoError};
pub use series::Series;
