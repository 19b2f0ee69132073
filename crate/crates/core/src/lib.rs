//! Exact machinery for crossing pairs of simplices spanned by points in
//! general position: Gale transforms, crossing predicates, proper linear
//! separations, Ham Sandwich cuts through the origin and the colouring
//! schedules built from them, plus a verification harness.
//!
//! All arithmetic is over exact rationals.

pub mod cli;
pub mod configs;
pub mod crossing;
pub mod error;
pub mod exact;
pub mod formats;
pub mod gale;
pub mod separations;
pub mod verify;

pub use configs::{lift_odd, moment_curve_config, random_config, PointConfig, SimplexPair};
pub use crossing::{
    count_crossing_pairs, extend_crossing, simplices_cross, vkf_find, CrossingCount,
    CrossingWitness,
};
pub use error::{Error, Result};
pub use exact::{Rational, RatMatrix};
pub use gale::{gale_transform, separation_to_crossing, GaleDiagram, LinearSeparation};
pub use separations::{enumerate_separations, ham_sandwich_cut, schedule_lemma4, schedule_lemma5};
