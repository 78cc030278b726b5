//! Entropy functionals in nats.

use super::eigen::Spectrum;
use super::state::{DensityOperator, PSD_TOL};
use crate::error::{invalid, Error, Result};

const XLNX_NEG_TOL: f64 = 1e-12;
const NORMALIZATION_TOL: f64 = 1e-9;

/// `p ln p` with `0 ln 0 = 0`; tiny negative round-off is treated as 0.
pub fn xlnx(p: f64) -> Result<f64> {
    if p.is_nan() || p < -XLNX_NEG_TOL {
        return Err(Error::Domain(format!("x ln x undefined for x = {p}")));
    }
    Ok(if p <= 0.0 { 0.0 } else { p * p.ln() })
}

pub fn shannon_entropy(probs: &[f64]) -> Result<f64> {
    if probs.is_empty() {
        return Err(Error::InvalidDistribution("empty distribution".into()));
    }
    // Written so that NaN is rejected too.
    #[allow(clippy::neg_cmp_op_on_partial_ord)]
    if let Some(p) = probs.iter().find(|p| !(**p >= -XLNX_NEG_TOL)) {
        return Err(Error::InvalidDistribution(format!("negative probability {p}")));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
    }
    let mut h = 0.0;
    for &p in probs {
        h -= xlnx(p)?;
    }
    Ok(h)
}

fn spectral_sum(spectrum: &Spectrum) -> Result<f64> {
    let mut acc = 0.0;
    for &l in spectrum.values() {
        if l < -PSD_TOL {
            return Err(invalid!("eigenvalue {l:e} is below the PSD tolerance"));
        }
        acc += xlnx(l.max(0.0))?;
    }
    Ok(acc)
}

pub fn von_neumann_entropy(rho: &DensityOperator) -> Result<f64> {
    if !rho.is_trace_normalized() {
        return Err(invalid!("von Neumann entropy needs a unit-trace state"));
    }
    // Eigenvalues of a pure state can land a rounding error above 1.
    Ok((-spectral_sum(&rho.spectrum())?).max(0.0))
}

/// `Tr[A ln A] = Σ λ ln λ` for a (possibly subnormalized) PSD operator.
pub fn operator_entropy_term(a: &DensityOperator) -> Result<f64> {
    spectral_sum(&a.spectrum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{basis, ComplexMatrix};
    use proptest::prelude::*;
    use std::f64::consts::LN_2;

    // Oracle values: independent scalar evaluations of the defining sums.
    fn gibbs_weights_beta_one() -> (f64, f64) {
        let wh = 1.0 / (1.0 + (-1.0f64).exp());
        (wh, 1.0 - wh)
    }

    #[test]
    fn xlnx_conventions() {
        assert_eq!(xlnx(0.0).unwrap(), 0.0);
        assert_eq!(xlnx(1.0).unwrap(), 0.0);
        assert_eq!(xlnx(-5e-13).unwrap(), 0.0);
        assert!((xlnx(0.5).unwrap() - (-0.346_573_590_279_972_6)).abs() < 1e-15);
        assert!(matches!(xlnx(-1e-6), Err(Error::Domain(_))));
    }

    #[test]
    fn shannon_examples() {
        assert!((shannon_entropy(&[0.5, 0.5]).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(shannon_entropy(&[1.0, 0.0]).unwrap(), 0.0);
        assert!((shannon_entropy(&[0.9, 0.1]).unwrap() - 0.325_082_973_391_448_2).abs() < 1e-12);
        assert!(matches!(
            shannon_entropy(&[0.5, 0.6]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(shannon_entropy(&[1.1, -0.1]).is_err());
    }

    #[test]
    fn von_neumann_examples() {
        let d = DensityOperator::pure(&basis::diagonal()).unwrap();
        assert!(von_neumann_entropy(&d).unwrap().abs() < 1e-14);
        let mixed = DensityOperator::maximally_mixed(2).unwrap();
        assert!((von_neumann_entropy(&mixed).unwrap() - LN_2).abs() < 1e-15);
        let (wh, wv) = gibbs_weights_beta_one();
        let gibbs = DensityOperator::new(ComplexMatrix::diag(&[wh, wv]).unwrap()).unwrap();
        assert!((von_neumann_entropy(&gibbs).unwrap() - 0.582_203_108_888_217_9).abs() < 1e-12);
    }

    #[test]
    fn operator_term_examples() {
        let half_v = DensityOperator::branch(ComplexMatrix::diag(&[0.0, 0.5]).unwrap()).unwrap();
        assert!((operator_entropy_term(&half_v).unwrap() - (-0.346_573_590_279_972_6)).abs() < 1e-15);
        let d = DensityOperator::pure(&basis::diagonal()).unwrap();
        assert!(operator_entropy_term(&d).unwrap().abs() < 1e-14);
        let (wh, wv) = gibbs_weights_beta_one();
        let half_gibbs =
            DensityOperator::branch(ComplexMatrix::diag(&[wh / 2.0, wv / 2.0]).unwrap()).unwrap();
        assert!((operator_entropy_term(&half_gibbs).unwrap() - (-0.637_675_144_724_081_6)).abs() < 1e-12);
    }

    #[test]
    fn von_neumann_requires_unit_trace() {
        let b = DensityOperator::branch(ComplexMatrix::diag(&[0.2, 0.2]).unwrap()).unwrap();
        assert!(von_neumann_entropy(&b).is_err());
    }

    proptest! {
        #[test]
        fn diagonal_states_match_shannon(p in 0.0f64..=1.0) {
            let rho = DensityOperator::new(ComplexMatrix::diag(&[p, 1.0 - p]).unwrap()).unwrap();
            let s = von_neumann_entropy(&rho).unwrap();
            let h = shannon_entropy(&[p, 1.0 - p]).unwrap();
            prop_assert!((s - h).abs() <= 1e-12);
        }

        #[test]
        fn pure_branch_term_is_xlnx(p in 1e-6f64..=1.0, theta in 0.0f64..3.2, phi in 0.0f64..6.3) {
            let psi = [
                crate::linalg::C64::new((theta / 2.0).cos(), 0.0),
                crate::linalg::C64::from_polar((theta / 2.0).sin(), phi),
            ];
            let m = ComplexMatrix::outer(&psi, &psi).unwrap().scale_real(p);
            let term = operator_entropy_term(&DensityOperator::branch(m).unwrap()).unwrap();
            prop_assert!((term - xlnx(p).unwrap()).abs() <= 1e-12);
        }
    }
}
