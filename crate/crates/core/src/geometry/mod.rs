//! Proto-tiles, the substitution rule and labeled patches.

pub mod census;
pub mod export;
pub mod patch;
pub mod predicates;
pub mod prototile;
pub mod rule;
pub mod search;
pub mod tile;

pub use census::adjacency_census;
pub use export::{to_svg, SvgOptions};
pub use patch::{iterate, label_angle, label_puncture, label_tile, Patch};
pub use prototile::{default_prototiles, prototiles, ProtoTile};
pub use rule::{is_primitive, pinwheel_rule, verify_rule, SubstitutionRule};
pub use search::find_decompositions;
pub use tile::{Label, Tile};
