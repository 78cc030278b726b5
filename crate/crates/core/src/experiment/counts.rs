use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use super::rng::{stream, STREAM_COUNTS};
use crate::error::{invalid, Error, Result};
use crate::measurement::{circuit_branch_states, MeasurementStrength, MeterPrep, SignalState};

/// Coincidence events, signal analyzer (H/V) × meter analyzer (D/A).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CoincidenceCounts {
    pub n_hd: u64,
    pub n_vd: u64,
    pub n_ha: u64,
    pub n_va: u64,
}

impl CoincidenceCounts {
    pub fn new(n_hd: u64, n_vd: u64, n_ha: u64, n_va: u64) -> Self {
        Self { n_hd, n_vd, n_ha, n_va }
    }

    pub fn n0(&self) -> u64 {
        self.n_hd + self.n_vd + self.n_ha + self.n_va
    }
}

/// Expected coincidences, indexed `[signal][meter]` with signal 0 = H, 1 = V and
/// meter 0 = D, 1 = A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpectedCounts {
    pub cells: [[f64; 2]; 2],
}

impl ExpectedCounts {
    pub fn total(&self) -> f64 {
        self.cells.iter().flatten().sum()
    }

    /// Meter marginals (D, A).
    pub fn meter_marginals(&self) -> [f64; 2] {
        let t = self.total();
        [0, 1].map(|k| (self.cells[0][k] + self.cells[1][k]) / t)
    }

    /// Signal marginals (H, V).
    pub fn signal_marginals(&self) -> [f64; 2] {
        let t = self.total();
        [0, 1].map(|s| (self.cells[s][0] + self.cells[s][1]) / t)
    }
}

/// Gibbs-weighted mixture of the two meter preparations, evaluated on the ideal
/// circuit and scaled by `n0`.
pub fn expected_counts(
    theta: MeasurementStrength,
    weights: (f64, f64),
    signal: &SignalState,
    n0: f64,
) -> Result<ExpectedCounts> {
    let (w_h, w_v) = weights;
    if w_h < 0.0 || w_v < 0.0 || (w_h + w_v - 1.0).abs() > 1e-12 {
        return Err(invalid!("meter weights ({w_h}, {w_v}) are not a distribution"));
    }
    if !(n0 > 0.0 && n0.is_finite()) {
        return Err(invalid!("count budget n0 = {n0} must be positive"));
    }
    let mut cells = [[0.0; 2]; 2];
    for (prep, w) in [(MeterPrep::H, w_h), (MeterPrep::V, w_v)] {
        if w == 0.0 {
            continue;
        }
        let branches = circuit_branch_states(theta, prep, signal);
        for (k, branch) in branches.iter().enumerate() {
            for (s, row) in cells.iter_mut().enumerate() {
                row[k] += w * n0 * branch.get(s, s).re.max(0.0);
            }
        }
    }
    Ok(ExpectedCounts { cells })
}

fn poisson(lambda: f64, seed: u64, cell: u64) -> Result<u64> {
    if !(lambda >= 0.0 && lambda.is_finite()) {
        return Err(invalid!("Poisson mean {lambda} must be finite and ≥ 0"));
    }
    if lambda == 0.0 {
        return Ok(0);
    }
    let law = Poisson::new(lambda).map_err(|e| invalid!("Poisson mean {lambda}: {e}"))?;
    Ok(law.sample(&mut stream(seed, &[STREAM_COUNTS, cell])) as u64)
}

/// Independent Poisson draw per cell; cell `i` uses its own derived stream.
pub fn sample_counts(expected: &ExpectedCounts, seed: u64) -> Result<CoincidenceCounts> {
    let c = &expected.cells;
    Ok(CoincidenceCounts {
        n_hd: poisson(c[0][0], seed, 0)?,
        n_vd: poisson(c[1][0], seed, 1)?,
        n_ha: poisson(c[0][1], seed, 2)?,
        n_va: poisson(c[1][1], seed, 3)?,
    })
}

/// `p_D = (N_HD + N_VD)/N_0`, `p_A = (N_HA + N_VA)/N_0`.
pub fn probs_from_counts(c: &CoincidenceCounts) -> Result<(f64, f64)> {
    let n0 = c.n0();
    if n0 == 0 {
        return Err(Error::EmptyData("no coincidences recorded".into()));
    }
    let n0 = n0 as f64;
    Ok(((c.n_hd + c.n_vd) as f64 / n0, (c.n_ha + c.n_va) as f64 / n0))
}
