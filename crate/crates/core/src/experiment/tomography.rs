//! Single-qubit Pauli tomography with linear inversion and eigenvalue truncation.

use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use super::rng::{stream, STREAM_TOMOGRAPHY};
use crate::error::{invalid, Error, Result};
use crate::linalg::{bloch_matrix, hermitian_eigen, ComplexMatrix, DensityOperator};

/// Plus-outcome counts along X, Y, Z.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TomographyRecord {
    pub shots: [u64; 3],
    pub plus_counts: [u64; 3],
}

impl TomographyRecord {
    pub fn new(shots: [u64; 3], plus_counts: [u64; 3]) -> Result<Self> {
        for axis in 0..3 {
            if shots[axis] == 0 {
                return Err(Error::EmptyData(format!("axis {axis} has no shots")));
            }
            if plus_counts[axis] > shots[axis] {
                return Err(invalid!(
                    "axis {axis}: {} plus outcomes exceed {} shots",
                    plus_counts[axis],
                    shots[axis]
                ));
            }
        }
        Ok(Self { shots, plus_counts })
    }

    pub fn bloch_estimate(&self) -> [f64; 3] {
        [0, 1, 2].map(|i| 2.0 * self.plus_counts[i] as f64 / self.shots[i] as f64 - 1.0)
    }
}

/// Probability of the + outcome on each Pauli axis, `(1 + r_i)/2`.
pub fn plus_probabilities(rho: &DensityOperator) -> Result<[f64; 3]> {
    let r = rho.bloch_vector()?;
    Ok(r.map(|ri| (0.5 * (1.0 + ri)).clamp(0.0, 1.0)))
}

/// Binomial outcomes with `shots` per axis; axis `i` draws from its own stream.
pub fn simulate_tomography(rho: &DensityOperator, shots: u64, seed: u64) -> Result<TomographyRecord> {
    if shots == 0 {
        return Err(Error::EmptyData("tomography needs at least one shot per axis".into()));
    }
    let probs = plus_probabilities(rho)?;
    let mut plus_counts = [0u64; 3];
    for axis in 0..3 {
        let law = Binomial::new(shots, probs[axis]).map_err(|e| invalid!("binomial law: {e}"))?;
        plus_counts[axis] = law.sample(&mut stream(seed, &[STREAM_TOMOGRAPHY, axis as u64]));
    }
    TomographyRecord::new([shots; 3], plus_counts)
}

/// Clamps negative eigenvalues to zero and restores unit trace.
pub fn project_to_physical(m: &ComplexMatrix) -> Result<DensityOperator> {
    let eig = hermitian_eigen(m)?;
    let total: f64 = eig.values.values().iter().map(|l| l.max(0.0)).sum();
    if total <= 0.0 {
        return Err(invalid!("no positive spectral weight to project"));
    }
    DensityOperator::new(eig.reconstruct_with(|l| l.max(0.0) / total))
}

pub fn reconstruct_from_bloch(r: [f64; 3]) -> Result<DensityOperator> {
    project_to_physical(&bloch_matrix(r))
}

/// Linear inversion from exact + probabilities (the infinite-shot limit).
pub fn reconstruct_from_probabilities(plus: [f64; 3]) -> Result<DensityOperator> {
    reconstruct_from_bloch(plus.map(|p| 2.0 * p - 1.0))
}

/// `ρ̂ = (I + Σ r̂_i σ_i)/2`, then projected onto the physical set.
pub fn reconstruct(record: &TomographyRecord) -> Result<DensityOperator> {
    reconstruct_from_bloch(record.bloch_estimate())
}
