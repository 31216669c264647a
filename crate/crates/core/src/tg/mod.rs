//! Totally geodesic subspaces and hyperplane distributions of metric Lie
//! algebras, the Frenet data of their normal orbits, and the resulting case
//! classification.

mod classify;
mod frenet;
mod helix;
mod search;
mod subspace;

pub use classify::{
    character_space, character_space_with, classify_case, CaseTag, CharacterSpace,
    ClassificationReport,
};
pub use frenet::{binormal_bracket_residual, curvature_bracket_residual, frenet_orbit, FrenetData};
pub use helix::{
    helix_bracket_table, helix_witness, killing_form, sl2_recognize, sl2_recognize_with,
    HelixWitness, Sl2Recognition,
};
pub use search::{search_tg_hyperplanes, SearchConfig, SearchResult};
pub use subspace::{
    codazzi_residual, hyperplane_form, hyperplane_tg_residual, tg_subspace_check, BracketWitness,
    TgCheck,
};
