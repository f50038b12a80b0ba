//! Link diagrams and their Milnor invariants.

mod corpus;
mod diagram;
mod invariants;
mod surgery;

pub use corpus::{corpus, corpus_diagram, corpus_names};
pub use diagram::{Crossing, DiagramJson, LinkDiagram, UNDER_IN, UNDER_OUT};
pub use invariants::{
    longitude_classes, longitude_expansions, longitudes, milnor_mu, nilpotent_arc_words, sato_levine, wirtinger,
    MilnorResult, MilnorResultJson, MuBarJson, SatoLevine, WirtingerArc, WirtingerPresentation, WirtingerRelation,
};
pub use surgery::{band_sum, faces, mirror, permute_components, reverse, split_union, FaceSide};

/// Parses a diagram from JSON text.
pub fn parse_pd(text: &str) -> crate::Result<LinkDiagram> {
    LinkDiagram::parse(text)
}
