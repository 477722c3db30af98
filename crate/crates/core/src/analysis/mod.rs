//! Periodic points, limit sets and the stability hypotheses.

mod alpha;
mod hyperbolic;
mod omega;
mod periodic;
mod report;
mod schottky;
mod sweep;

pub use alpha::{alpha_expanding_check, alpha_sample, AlphaExpansion, AlphaSample, EXPANSION_MARGIN};
pub use hyperbolic::{
    hyperbolicity_check, HyperbolicityConfig, HyperbolicityReport, HyperbolicityVerdict,
};
pub use omega::{omega_limit_approx, OmegaLimit, OMEGA_CLUSTER_RADIUS};
pub use periodic::{
    attracting_cycles, classify_periodic, find_periodic, PeriodicConfig, PeriodicKind, PeriodicPoint,
};
pub use report::{stability_report, StabilityConfig, StabilityReport};
pub use schottky::{schottky_hypothesis_check, SchottkyCase, SchottkyLevel, SchottkyResult};
pub use sweep::{
    cell_signature, change_locus, family_signature, parameter_sweep, ParameterGrid, Signature, SignatureConfig, SweepResult,
};
