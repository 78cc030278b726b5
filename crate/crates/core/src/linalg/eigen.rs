//! Hermitian eigendecomposition for 2×2 (closed form) and 4×4 (cyclic complex Jacobi).

use super::matrix::{ComplexMatrix, C64, ONE, ZERO};
use crate::error::{invalid, Result};

/// Hermiticity accepted on input to the eigensolver.
pub const HERMITIAN_INPUT_TOL: f64 = 1e-10;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Real eigenvalues in descending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum(Vec<f64>);

impl Spectrum {
    fn sorted(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Self(values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn sum(&self) -> f64 {
        self.0.iter().sum()
    }

    pub fn min(&self) -> f64 {
        *self.0.last().expect("spectrum is never empty")
    }

    pub fn max(&self) -> f64 {
        self.0[0]
    }
}

/// Eigenvalues (descending) and matching orthonormal eigenvectors stored as columns.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub values: Spectrum,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `Σ f(λ_i) v_i v_i†`.
    pub fn reconstruct_with(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let d = self.vectors.dim();
        let weights: Vec<f64> = self.values.values().iter().map(|&l| f(l)).collect();
        ComplexMatrix::from_fn(d, |r, c| {
            (0..d)
                .map(|k| self.vectors.get(r, k) * self.vectors.get(c, k).conj() * weights[k])
                .sum()
        })
        .expect("eigenvector matrix has a supported dimension")
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|l| l)
    }
}

fn validated_hermitian(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    let defect = a.hermiticity_defect();
    if defect > HERMITIAN_INPUT_TOL {
        return Err(invalid!("matrix is not Hermitian (max |A - A†| = {defect:e})"));
    }
    Ok(a.hermitian_part())
}

pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    let h = validated_hermitian(a)?;
    Ok(match h.dim() {
        2 => eigen_2x2(&h),
        _ => jacobi_eigen(&h),
    })
}

pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Spectrum> {
    Ok(hermitian_eigen(a)?.values)
}

/// Closed form from trace and determinant. The eigenvector for the larger root is
/// taken from whichever of the two null-space candidates has the larger norm, which
/// avoids cancellation when the off-diagonal element is small.
fn eigen_2x2(h: &ComplexMatrix) -> HermitianEigen {
    let a = h.get(0, 0).re;
    let d = h.get(1, 1).re;
    let b = h.get(0, 1);
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(b.norm());
    let mean = 0.5 * (a + d);
    let (upper, lower) = (mean + radius, mean - radius);

    let top = if b.norm() == 0.0 {
        if a >= d {
            [ONE, ZERO]
        } else {
            [ZERO, ONE]
        }
    } else {
        // Both (b, λ − a) and (λ − d, b̄) solve (A − λ)v = 0 for λ = upper.
        let cand_a = [b, C64::new(radius - half_gap, 0.0)];
        let cand_b = [C64::new(radius + half_gap, 0.0), b.conj()];
        let pick = if half_gap >= 0.0 { cand_b } else { cand_a };
        let norm = (pick[0].norm_sqr() + pick[1].norm_sqr()).sqrt();
        [pick[0] / norm, pick[1] / norm]
    };
    let bottom = [-top[1].conj(), top[0].conj()];
    let vectors = ComplexMatrix::new(2, vec![top[0], bottom[0], top[1], bottom[1]])
        .expect("2x2 layout");
    HermitianEigen {
        values: Spectrum(vec![upper, lower]),
        vectors,
    }
}

fn off_diagonal_norm(m: &ComplexMatrix) -> f64 {
    let d = m.dim();
    let mut acc = 0.0;
    for r in 0..d {
        for c in 0..d {
            if r != c {
                acc += m.get(r, c).norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Cyclic Jacobi for Hermitian matrices. Each pivot first removes the phase of
/// `a_pq` with a diagonal unitary, then applies a real plane rotation.
pub(crate) fn jacobi_eigen(h: &ComplexMatrix) -> HermitianEigen {
    let n = h.dim();
    let scale = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n).expect("supported dimension");

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a) <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let g = a.get(p, q);
                let modulus = g.norm();
                if modulus <= 1e-300 {
                    continue;
                }
                let phase = g / modulus;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * modulus);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let rot = ComplexMatrix::from_fn(n, |r, col| match (r, col) {
                    _ if r == p && col == p => C64::new(c, 0.0),
                    _ if r == p && col == q => C64::new(s, 0.0),
                    _ if r == q && col == p => phase.conj() * -s,
                    _ if r == q && col == q => phase.conj() * c,
                    _ if r == col => ONE,
                    _ => ZERO,
                })
                .expect("supported dimension");
                a = &(&rot.dagger() * &a) * &rot;
                v = &v * &rot;
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a.get(j, j).re.total_cmp(&a.get(i, i).re));
    let values = order.iter().map(|&i| a.get(i, i).re).collect();
    let vectors = ComplexMatrix::from_fn(n, |r, c| v.get(r, order[c])).expect("supported dimension");
    HermitianEigen {
        values: Spectrum::sorted(values),
        vectors,
    }
}
