//! The pre-discontinuity set, computed two ways.
//!
//! [`backward_arcs`] pulls the boundary back level by level through every
//! branch and clips the preimages to the branch's region, giving circline arcs
//! tagged with the word that carries them onto the boundary. [`raster`]
//! labels pixel centers by forward iteration, and [`consistency_check`]
//! compares the two.

mod arcs;
mod consistency;
pub mod raster;

pub use arcs::{
    arc_preimages, backward_arcs, backward_arcs_with, Arc, LevelStats, Preimages, Span, SpiderwebApprox, SpiderwebConfig,
    DEFAULT_MAX_ARCS, DEFAULT_MIN_ARC_CHORDAL,
};


pub use consistency::{consistency_check, ConsistencyReport};
pub use raster::{raster_classify, Classifier, Label, RasterImage, RasterParams, Window};
