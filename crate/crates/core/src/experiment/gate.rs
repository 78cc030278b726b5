//! Post-selected C-Sign built from partially polarizing beam splitters.

use crate::error::{Error, Result};
use crate::linalg::{ComplexMatrix, DensityOperator, C64, SUPPORT_TOL};

/// Amplitude scale of a successful (coincidence) event.
pub const SUCCESS_AMPLITUDE: f64 = 1.0 / 3.0;

/// Non-unitary two-photon operator acting on {HH, HV, VH, VV}:
/// HH → ⅓VV, HV → ⅓VH, VH → ⅓HV, VV → −⅓HH.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalGate {
    operator: ComplexMatrix,
}

impl PhysicalGate {
    pub fn operator(&self) -> &ComplexMatrix {
        &self.operator
    }

    /// Test hook: returns a copy with `delta` added to the amplitude at `(row, col)`.
    pub fn perturbed(&self, row: usize, col: usize, delta: f64) -> Self {
        let d = self.operator.dim();
        let entries = self
            .operator
            .entries()
            .iter()
            .enumerate()
            .map(|(i, &z)| if i == row * d + col { z + delta } else { z })
            .collect();
        Self {
            operator: ComplexMatrix::new(d, entries).expect("same shape"),
        }
    }

    /// Max entrywise deviation of `(3A)†(3A)` from the identity.
    pub fn unitarity_defect(&self) -> f64 {
        let scaled = self.operator.scale_real(1.0 / SUCCESS_AMPLITUDE);
        (&scaled.dagger() * &scaled)
            .max_abs_diff(&ComplexMatrix::identity(4).expect("4x4"))
            .expect("4x4")
    }
}

pub fn physical_gate() -> PhysicalGate {
    let s = SUCCESS_AMPLITUDE;
    // Column j is the image of basis state j.
    #[rustfmt::skip]
    let entries = [
        0.0, 0.0, 0.0,  -s,
        0.0, 0.0,   s, 0.0,
        0.0,   s, 0.0, 0.0,
          s, 0.0, 0.0, 0.0,
    ];
    PhysicalGate {
        operator: ComplexMatrix::from_real(4, &entries).expect("4x4"),
    }
}

/// Post-selected output state and success probability `Tr[AρA†]`.
pub fn ppbs_apply(gate: &PhysicalGate, state: &DensityOperator) -> Result<(DensityOperator, f64)> {
    let out = gate.operator().conjugate(state.matrix())?;
    let success = out.trace().re;
    if success < SUPPORT_TOL {
        return Err(Error::NoSupport(format!("post-selection probability {success:e}")));
    }
    Ok((DensityOperator::new(out.scale_real(1.0 / success))?, success))
}

/// Basis ket `|i⟩` of the two-qubit space.
pub fn joint_basis(i: usize) -> [C64; 4] {
    let mut v = [C64::new(0.0, 0.0); 4];
    v[i] = C64::new(1.0, 0.0);
    v
}
