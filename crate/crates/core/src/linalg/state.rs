use super::eigen::{hermitian_eigen, Spectrum};
use super::matrix::{vector_norm, ComplexMatrix, C64};
use crate::error::{invalid, Error, Result};

pub const HERMITIAN_TOL: f64 = 1e-12;
pub const PSD_TOL: f64 = 1e-10;
pub const TRACE_TOL: f64 = 1e-12;
/// Smallest trace a branch may have before normalization is refused.
pub const SUPPORT_TOL: f64 = 1e-15;

/// Hermitian PSD operator; either a unit-trace state or a subnormalized
/// measurement branch `KρK†` whose trace is the outcome probability.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    trace_normalized: bool,
}

impl DensityOperator {
    /// Unit-trace state.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let m = validate_psd(&matrix)?;
        let tr = m.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(invalid!("state trace {tr} differs from 1"));
        }
        Ok(Self {
            matrix: m,
            trace_normalized: true,
        })
    }

    /// Subnormalized branch with `0 < Tr ≤ 1`.
    pub fn branch(matrix: ComplexMatrix) -> Result<Self> {
        let m = validate_psd(&matrix)?;
        let tr = m.trace().re;
        if tr <= 0.0 || tr > 1.0 + TRACE_TOL {
            return Err(invalid!("branch trace {tr} outside (0, 1]"));
        }
        Ok(Self {
            matrix: m,
            trace_normalized: false,
        })
    }

    pub fn pure(psi: &[C64]) -> Result<Self> {
        let n = vector_norm(psi);
        if (n - 1.0).abs() > TRACE_TOL {
            return Err(invalid!("state vector norm {n} differs from 1"));
        }
        Self::new(ComplexMatrix::outer(psi, psi)?)
    }

    pub fn maximally_mixed(dim: usize) -> Result<Self> {
        Self::new(ComplexMatrix::identity(dim)?.scale_real(1.0 / dim as f64))
    }

    /// Qubit state `(I + x σx + y σy + z σz)/2`; requires `|r| ≤ 1`.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if len > 1.0 + 1e-12 {
            return Err(invalid!("Bloch vector length {len} exceeds 1"));
        }
        Self::new(bloch_matrix(r))
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    pub fn is_trace_normalized(&self) -> bool {
        self.trace_normalized
    }

    pub fn spectrum(&self) -> Spectrum {
        hermitian_eigen(&self.matrix)
            .expect("validated operators are Hermitian")
            .values
    }

    /// Divides a branch by its trace.
    pub fn normalized(&self) -> Result<Self> {
        let tr = self.trace();
        if tr < SUPPORT_TOL {
            return Err(Error::NoSupport(format!("branch trace {tr:e} too small to normalize")));
        }
        Ok(Self {
            matrix: self.matrix.scale_real(1.0 / tr),
            trace_normalized: true,
        })
    }

    /// Bloch components `Tr(ρ σ_i)` for a qubit state.
    pub fn bloch_vector(&self) -> Result<[f64; 3]> {
        if self.dim() != 2 {
            return Err(invalid!("Bloch vector needs a qubit, got dimension {}", self.dim()));
        }
        let m = &self.matrix;
        Ok([
            2.0 * m.get(0, 1).re,
            -2.0 * m.get(0, 1).im,
            (m.get(0, 0) - m.get(1, 1)).re,
        ])
    }
}

pub(crate) fn bloch_matrix(r: [f64; 3]) -> ComplexMatrix {
    let [x, y, z] = r;
    ComplexMatrix::new(
        2,
        vec![
            C64::new(0.5 * (1.0 + z), 0.0),
            C64::new(0.5 * x, -0.5 * y),
            C64::new(0.5 * x, 0.5 * y),
            C64::new(0.5 * (1.0 - z), 0.0),
        ],
    )
    .expect("2x2 layout")
}

fn validate_psd(matrix: &ComplexMatrix) -> Result<ComplexMatrix> {
    let defect = matrix.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(invalid!("operator is not Hermitian (max |A - A†| = {defect:e})"));
    }
    let m = matrix.hermitian_part();
    let min = hermitian_eigen(&m)?.values.min();
    if min < -PSD_TOL {
        return Err(invalid!("operator is not positive semidefinite (min eigenvalue {min:e})"));
    }
    Ok(m)
}

/// Unique PSD square root via eigendecomposition.
pub fn psd_sqrt(e: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(e)?;
    let min = eig.values.min();
    if min < -PSD_TOL {
        return Err(invalid!("cannot take square root: eigenvalue {min:e} is negative"));
    }
    Ok(eig.reconstruct_with(|l| l.max(0.0).sqrt()))
}

/// `⟨ψ|ρ|ψ⟩` for a normalized ψ.
pub fn fidelity_pure(psi: &[C64], rho: &DensityOperator) -> Result<f64> {
    let n = vector_norm(psi);
    if (n - 1.0).abs() > TRACE_TOL {
        return Err(invalid!("state vector norm {n} differs from 1"));
    }
    let rho_psi = rho.matrix().apply(psi)?;
    let f: f64 = psi.iter().zip(&rho_psi).map(|(a, b)| (a.conj() * b).re).sum();
    Ok(f.clamp(0.0, 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis, ONE, ZERO};
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    #[test]
    fn fidelity_examples() {
        let d = DensityOperator::pure(&basis::diagonal()).unwrap();
        assert!((fidelity_pure(&basis::diagonal(), &d).unwrap() - 1.0).abs() < 1e-15);
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert!((fidelity_pure(&basis::horizontal(), &mixed).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn fidelity_ignores_global_phase() {
        let rho = DensityOperator::from_bloch([0.3, -0.2, 0.5]).unwrap();
        let psi = [C64::new(0.6, 0.0), C64::new(0.0, 0.8)];
        let f0 = fidelity_pure(&psi, &rho).unwrap();
        for k in 0..8 {
            let ph = C64::from_polar(1.0, k as f64 * PI / 4.0);
            let rotated = [psi[0] * ph, psi[1] * ph];
            assert!((fidelity_pure(&rotated, &rho).unwrap() - f0).abs() < 1e-15);
        }
    }

    #[test]
    fn fidelity_rejects_unnormalized_vector() {
        let rho = DensityOperator::maximally_mixed(2).unwrap();
        assert!(fidelity_pure(&[ONE, ONE], &rho).is_err());
        assert!(fidelity_pure(&[ONE, ZERO, ZERO, ZERO], &rho).is_err());
    }

    #[test]
    fn sqrt_examples() {
        let i = ComplexMatrix::identity(2).unwrap();
        assert!(psd_sqrt(&i).unwrap().max_abs_diff(&i).unwrap() < 1e-15);
        let d = ComplexMatrix::diag(&[0.25, 1.0]).unwrap();
        let want = ComplexMatrix::diag(&[0.5, 1.0]).unwrap();
        assert!(psd_sqrt(&d).unwrap().max_abs_diff(&want).unwrap() < 1e-15);
        let a = 3.0 * PI / 8.0;
        let e0 = ComplexMatrix::diag(&[a.cos().powi(2), a.sin().powi(2)]).unwrap();
        let want = ComplexMatrix::diag(&[a.cos(), a.sin()]).unwrap();
        assert!(psd_sqrt(&e0).unwrap().max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn sqrt_squares_back() {
        let e = DensityOperator::from_bloch([0.4, 0.1, -0.7]).unwrap();
        let r = psd_sqrt(e.matrix()).unwrap();
        assert!((&r * &r).max_abs_diff(e.matrix()).unwrap() < 1e-10);
    }

    #[test]
    fn sqrt_rejects_negative_operator() {
        let m = ComplexMatrix::diag(&[1.0, -0.1]).unwrap();
        assert!(psd_sqrt(&m).is_err());
    }

    #[test]
    fn state_validation() {
        assert!(DensityOperator::new(ComplexMatrix::diag(&[0.6, 0.6]).unwrap()).is_err());
        assert!(DensityOperator::new(ComplexMatrix::diag(&[1.2, -0.2]).unwrap()).is_err());
        assert!(DensityOperator::branch(ComplexMatrix::diag(&[0.0, 0.0]).unwrap()).is_err());
        let half = ComplexMatrix::diag(&[0.0, 0.5]).unwrap();
        let b = DensityOperator::branch(half).unwrap();
        assert!(!b.is_trace_normalized());
        assert!(b.normalized().unwrap().is_trace_normalized());
    }

    #[test]
    fn bloch_round_trip() {
        let r = [FRAC_1_SQRT_2 * 0.5, -0.25, 0.1];
        let rho = DensityOperator::from_bloch(r).unwrap();
        let back = rho.bloch_vector().unwrap();
        for i in 0..3 {
            assert!((back[i] - r[i]).abs() < 1e-15);
        }
    }
}
