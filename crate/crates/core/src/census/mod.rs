//! Diagram families: forests of clasped unknots, braid closures and the
//! named fixture library.

mod braid;
mod fixtures;
mod forest;

pub use braid::{ball_closure, braid_closure, one_strand_closure, random_braid, Braid};
pub use fixtures::{fixture, fixture_names, fixtures, reidemeister_pairs, ReidemeisterPair};
pub use forest::{forest_link, random_forest, MarkedForest};
