//! Small dense complex linear algebra (dimensions 2 and 4) and entropy functionals.
//!
//! Basis order is fixed: index 0 = |H⟩, index 1 = |V⟩; two-qubit states use
//! {HH, HV, VH, VV} with the signal as the first factor.

mod eigen;
mod entropy;
mod matrix;
mod state;

pub use eigen::{hermitian_eigen, hermitian_eigenvalues, HermitianEigen, Spectrum, HERMITIAN_INPUT_TOL};
pub use entropy::{operator_entropy_term, shannon_entropy, von_neumann_entropy, xlnx};
pub use matrix::{dagger, inner, matmul, tensor, vector_norm, ComplexMatrix, C64, ONE, ZERO};
pub use state::{fidelity_pure, psd_sqrt, DensityOperator, HERMITIAN_TOL, PSD_TOL, SUPPORT_TOL, TRACE_TOL};

pub(crate) use state::bloch_matrix;

/// Polarization basis kets.
pub mod basis {
    use super::{C64, ONE, ZERO};
    use std::f64::consts::FRAC_1_SQRT_2;

    const R: C64 = C64::new(FRAC_1_SQRT_2, 0.0);

    pub fn horizontal() -> [C64; 2] {
        [ONE, ZERO]
    }

    pub fn vertical() -> [C64; 2] {
        [ZERO, ONE]
    }

    /// (|H⟩ + |V⟩)/√2
    pub fn diagonal() -> [C64; 2] {
        [R, R]
    }

    /// (|H⟩ − |V⟩)/√2
    pub fn antidiagonal() -> [C64; 2] {
        [R, -R]
    }

    /// (|H⟩ + i|V⟩)/√2
    pub fn right_circular() -> [C64; 2] {
        [R, C64::new(0.0, FRAC_1_SQRT_2)]
    }

    /// (|H⟩ − i|V⟩)/√2
    pub fn left_circular() -> [C64; 2] {
        [R, C64::new(0.0, -FRAC_1_SQRT_2)]
    }
}

/// Pauli matrices in the H/V basis.
pub mod pauli {
    use super::{ComplexMatrix, C64};

    pub fn x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, &[0.0, 1.0, 1.0, 0.0]).expect("2x2")
    }

    pub fn y() -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            vec![C64::new(0.0, 0.0), C64::new(0.0, -1.0), C64::new(0.0, 1.0), C64::new(0.0, 0.0)],
        )
        .expect("2x2")
    }

    pub fn z() -> ComplexMatrix {
        ComplexMatrix::diag(&[1.0, -1.0]).expect("2x2")
    }
}
