//! The α → ½⁺ limit of subcritical solutions.
//!
//! A sweep integrates the same datum for a decreasing list of dissipation
//! exponents with a shared time step and sampling, then measures how the
//! solutions approach each other in `H^{-1/2}`. The diagnostics mirror the
//! energy argument for the difference of two solutions: the smallness
//! coefficient that makes the differential inequality dissipative, the
//! fitted rate in `Δα`, interpolation upgrades to stronger norms, and a
//! weak-form residual of the critical equation.

mod diagnostics;
mod sweep;

pub use diagnostics::{
    h_minus_half_distance, interpolation_upgrade, l43_check, pairwise_bound_check,
    smallness_coefficient, weak_form_residual, DiscreteConstants, InterpolationCheck,
    L43Constants, PairBoundRecord, PairwiseBoundCheck,
};
pub use sweep::{
    dirichlet_sweep, run_sweep, AlphaRun, AlphaSweepConfig, ConvergenceReport, PairBound,
    PairSample, SweepResult, DEFAULT_ALPHAS,
};
