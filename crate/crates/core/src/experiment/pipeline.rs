//! Experimental estimate of the information terms from simulated counts and
//! conditional-state tomography.

use super::counts::{expected_counts, probs_from_counts, sample_counts};
use super::rng::derive_seed;
use super::tomography::{plus_probabilities, reconstruct, reconstruct_from_probabilities, simulate_tomography};
use crate::error::{Error, Result};
use crate::linalg::{operator_entropy_term, shannon_entropy, von_neumann_entropy, DensityOperator, SUPPORT_TOL};
use crate::measurement::{build_kraus, MeasurementStrength, SignalState};
use crate::thermo::{ConditionalOutputState, ThermalMeter};

const SUBSTREAM_COUNTS: u64 = 1;
const SUBSTREAM_TOMOGRAPHY: u64 = 2;

/// How the pipeline draws its data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sampling {
    /// Infinite statistics: exact probabilities feed the estimators.
    Exact,
    Finite { n0: f64, shots: u64, seed: u64 },
}

/// Per-outcome reconstructed states and estimated probabilities, plus the
/// information terms evaluated on `p̂_k ρ̂_k`.
#[derive(Debug, Clone)]
pub struct ConditionalEstimate {
    /// `None` for an outcome that never occurs.
    pub rho_hat: [Option<DensityOperator>; 2],
    pub p_hat: [f64; 2],
    pub h_shannon: f64,
    pub residual_term: f64,
    pub tilde_info: f64,
}

pub fn conditional_state_pipeline(
    theta: MeasurementStrength,
    meter: &ThermalMeter,
    signal: &SignalState,
    sampling: Sampling,
) -> Result<ConditionalEstimate> {
    let kraus = build_kraus(theta);
    let conditional = ConditionalOutputState::new(signal, &kraus, meter)?;
    let weights = (meter.w_h, meter.w_v);

    let p_hat = match sampling {
        Sampling::Exact => expected_counts(theta, weights, signal, 1.0)?.meter_marginals(),
        Sampling::Finite { n0, seed, .. } => {
            let table = expected_counts(theta, weights, signal, n0)?;
            let counts = sample_counts(&table, derive_seed(seed, &[SUBSTREAM_COUNTS]))?;
            let (pd, pa) = probs_from_counts(&counts)?;
            [pd, pa]
        }
    };

    let mut rho_hat: [Option<DensityOperator>; 2] = [None, None];
    for (k, slot) in rho_hat.iter_mut().enumerate() {
        let target = match conditional.normalized(k) {
            Ok(t) => t,
            Err(Error::NoSupport(_)) => continue,
            Err(e) => return Err(e),
        };
        *slot = Some(match sampling {
            Sampling::Exact => reconstruct_from_probabilities(plus_probabilities(&target)?)?,
            Sampling::Finite { shots, seed, .. } => {
                let tomo_seed = derive_seed(seed, &[SUBSTREAM_TOMOGRAPHY, k as u64]);
                reconstruct(&simulate_tomography(&target, shots, tomo_seed)?)?
            }
        });
    }

    let h_shannon = shannon_entropy(&p_hat)?;
    let mut residual_term = 0.0;
    for k in 0..2 {
        if let Some(rho) = &rho_hat[k] {
            if p_hat[k] >= SUPPORT_TOL {
                let branch = DensityOperator::branch(rho.matrix().scale_real(p_hat[k]))?;
                residual_term += operator_entropy_term(&branch)?;
            }
        }
    }
    let tilde_info = von_neumann_entropy(signal.rho())? + h_shannon + residual_term;
    Ok(ConditionalEstimate {
        rho_hat,
        p_hat,
        h_shannon,
        residual_term,
        tilde_info,
    })
}
