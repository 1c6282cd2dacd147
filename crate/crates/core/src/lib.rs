//! Combinatorial engine for closed braids: Seifert statistics, resolutions
//! into braid-like graphs, two-colour labelings and splitting, MOY and
//! HOMFLY evaluation, and Bennequin-type bound reports.

pub mod bounds;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod homfly;
pub mod labeling;
pub mod moy;
pub mod poly;
pub mod resolution;

pub use diagram::{
    braid_to_diagram, component_count, parse_braid, parse_diagram, seifert_stats, BraidWord,
    LinkDiagram, SeifertStats, Sign,
};
pub use error::{Error, Result};
pub use poly::{LaurentPoly1, LaurentPoly2};
pub use resolution::{Resolution, ResolvedGraph};
