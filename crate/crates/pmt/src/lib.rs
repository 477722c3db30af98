//! Std layer over `pmt-core`: scene files, parallel drivers, image and
//! report output, and the `pmt` command line.

pub mod cli;
pub mod error;
pub mod export;
pub mod image;
pub mod parallel;
pub mod scene;

pub use error::{Error, Result};
