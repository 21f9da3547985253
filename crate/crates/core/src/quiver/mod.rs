//! Quivers, representations, morphisms and Krull–Schmidt decomposition.

mod decompose;
pub mod io;
mod morphism;
#[allow(clippy::module_inception)]
mod quiver;
mod rep;
mod typea;

pub use decompose::{
    decompose, decompose_with, find_splitting_endo, is_indecomposable, is_isomorphic,
    iso_between_indecomposables, iso_indecomposable, Decomposition, Summand, DEFAULT_END_CAP,
};
pub use morphism::{
    factor_through, factor_through_in, factor_through_left, flat_len, hom, intertwining_operator,
    is_retraction, is_section, HomSpace, Morphism,
};
pub use quiver::{line_order, Arrow, InfiniteQuiverSpec, Path, Quiver};
pub use rep::{DirectSum, Rep};
pub use typea::{enumerate_indecomposables, interval, interval_support};
