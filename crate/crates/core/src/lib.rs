//! Piecewise Möbius transformations (PMTs) on the Riemann sphere.
//!
//! A PMT is a partition of the sphere into finitely many circline-bounded
//! regions together with one Möbius transformation per region. The map is
//! undefined on the region boundaries, and the closure of all backward images
//! of that boundary (the pre-discontinuity set, or "spiderweb") plays the role
//! the Julia set plays for rational maps.
//!
//! The crate is `no_std` and only needs `alloc`:
//!
//! - [`sphere`], [`moebius`], [`circline`]: exact sphere arithmetic, Möbius
//!   maps with their classification, fixed points and spherical derivatives,
//!   and generalized circles.
//! - [`partition`]: circline-bounded regions and point location.
//! - [`pmt`] and [`presets`]: evaluation, orbits, itineraries, word maps and
//!   a gallery of named examples.
//! - [`spiderweb`]: leveled circline arcs approximating the pre-discontinuity
//!   set, pixel classification and cross-validation between the two.
//! - [`analysis`]: periodic-point census, ω-limit and α-limit sampling,
//!   hyperbolicity / α-expansion verdicts, Schottky-type hypothesis checks,
//!   stability reports and parameter sweeps.
//!
//! ```
//! use pmt_core::presets;
//! use pmt_core::sphere::SpherePoint;
//!
//! let f = presets::two_scalings(0.5.into()).unwrap();
//! let image = f.apply(SpherePoint::new(0.4, 0.0), 1e-9).unwrap();
//! assert!(image.chordal_dist(SpherePoint::new(0.2, 0.0)) < 1e-12);
//! ```
#![no_std]
// `!(x > t)` comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
pub mod circline;
mod error;
pub mod moebius;
pub mod partition;
pub mod pmt;
pub mod presets;
pub mod sphere;
pub mod spiderweb;
mod vec3;

pub use error::{Error, Result};

pub use num_complex::Complex64;
