//! Emulation of the two-photon experiment: post-selected PPBS gate, Poisson
//! coincidence counts, conditional-state tomography and Monte Carlo error bars.
//!
//! Only counting noise is modelled; optical imperfections are not.

mod counts;
mod gate;
mod montecarlo;
mod pipeline;
pub mod rng;
mod tomography;

pub use counts::{expected_counts, probs_from_counts, sample_counts, CoincidenceCounts, ExpectedCounts};
pub use gate::{joint_basis, physical_gate, ppbs_apply, PhysicalGate, SUCCESS_AMPLITUDE};
pub use montecarlo::{monte_carlo, monte_carlo_vector, resample_seed, MonteCarloEstimate};
pub use pipeline::{conditional_state_pipeline, ConditionalEstimate, Sampling};
pub use tomography::{
    plus_probabilities, project_to_physical, reconstruct, reconstruct_from_bloch, reconstruct_from_probabilities,
    simulate_tomography, TomographyRecord,
};

/// Count budget used when none is configured.
pub const DEFAULT_N0: u64 = 100_000;
/// Tomography shots per Pauli axis used when none is configured.
pub const DEFAULT_SHOTS: u64 = 10_000;
pub const DEFAULT_RESAMPLES: usize = 1000;
