//! The θ-parameterized two-outcome measurement of the signal qubit.
//!
//! Closed forms (normative) for a meter prepared in |H⟩:
//!
//! ```text
//! a = 2θ + π/4,  b = 2θ − π/4
//! M_0 =  cos a |H⟩⟨H| + sin a |V⟩⟨V|
//! M_1 = −cos b |H⟩⟨H| + sin b |V⟩⟨V|
//! ```
//!
//! and for a meter prepared in |V⟩, `N_k = (−iσ_y) M_k`. Effects are `E_k = M_k†M_k`.
//!
//! The circuit route is an independent oracle. The meter passes a half-wave plate
//! at angle θ, then couples to the signal through a C-Sign whose phase sits on
//! |H⟩_σ|V⟩_μ (the textbook gate conjugated by σ_x on the signal), and is read out
//! in the D/A basis. A single two-qubit unitary cannot produce both `{M_k}` and
//! `{N_k}` as printed (Σ_k M_k†N_k = cos 4θ · (−iσ_y) ≠ 0), so each meter
//! preparation carries a fixed local frame on the signal input:
//! identity for |H⟩, σ_x for |V⟩. With those frames both branch families match
//! the closed forms up to a global sign.

use std::f64::consts::{FRAC_PI_4, FRAC_PI_8};

use crate::error::{invalid, Error, Result};
use crate::linalg::{basis, pauli, ComplexMatrix, DensityOperator, C64, SUPPORT_TOL};

const THETA_TOL: f64 = 1e-12;

/// Half-wave-plate angle θ ∈ [0, π/8].
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MeasurementStrength(f64);

impl MeasurementStrength {
    pub const NONE: Self = Self(0.0);
    pub const PROJECTIVE: Self = Self(FRAC_PI_8);

    pub fn new(theta: f64) -> Result<Self> {
        if !theta.is_finite() || !(-THETA_TOL..=FRAC_PI_8 + THETA_TOL).contains(&theta) {
            return Err(invalid!("θ = {theta} outside [0, π/8]"));
        }
        Ok(Self(theta.clamp(0.0, FRAC_PI_8)))
    }

    pub fn radians(self) -> f64 {
        self.0
    }
}

/// Meter input polarization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeterPrep {
    H,
    V,
}

impl MeterPrep {
    pub fn ket(self) -> [C64; 2] {
        match self {
            MeterPrep::H => basis::horizontal(),
            MeterPrep::V => basis::vertical(),
        }
    }
}

/// Kraus operators for both meter preparations plus the shared effects.
#[derive(Debug, Clone)]
pub struct KrausSet {
    pub theta: MeasurementStrength,
    /// Meter prepared in |H⟩.
    pub m: [ComplexMatrix; 2],
    /// Meter prepared in |V⟩.
    pub n: [ComplexMatrix; 2],
    pub e: [ComplexMatrix; 2],
}

impl KrausSet {
    pub fn branch_ops(&self, prep: MeterPrep) -> &[ComplexMatrix; 2] {
        match prep {
            MeterPrep::H => &self.m,
            MeterPrep::V => &self.n,
        }
    }

    /// Largest entrywise deviation of `E_0 + E_1` from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let sum = &self.e[0] + &self.e[1];
        sum.max_abs_diff(&ComplexMatrix::identity(2).expect("2x2"))
            .expect("2x2")
    }

    /// Largest deviation of `M_k†M_k` or `N_k†N_k` from `E_k`.
    pub fn branch_effect_defect(&self) -> f64 {
        (0..2)
            .flat_map(|k| [&self.m[k], &self.n[k]].map(|op| {
                (&op.dagger() * op).max_abs_diff(&self.e[k]).expect("2x2")
            }))
            .fold(0.0, f64::max)
    }
}

/// Signal qubit state in the H/V basis.
#[derive(Debug, Clone, PartialEq)]
pub struct SignalState {
    rho: DensityOperator,
}

impl SignalState {
    pub fn new(rho: DensityOperator) -> Result<Self> {
        if rho.dim() != 2 || !rho.is_trace_normalized() {
            return Err(invalid!("signal must be a unit-trace qubit state"));
        }
        Ok(Self { rho })
    }

    pub fn pure(psi: &[C64; 2]) -> Result<Self> {
        Self::new(DensityOperator::pure(psi)?)
    }

    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        Self::new(DensityOperator::from_bloch(r)?)
    }

    /// Named preparations: H, V, D, A, R, L, and `mixed` (I/2).
    pub fn named(name: &str) -> Result<Self> {
        let psi = match name {
            "H" | "h" => basis::horizontal(),
            "V" | "v" => basis::vertical(),
            "D" | "d" => basis::diagonal(),
            "A" | "a" => basis::antidiagonal(),
            "R" | "r" => basis::right_circular(),
            "L" | "l" => basis::left_circular(),
            "mixed" | "I" => return Self::new(DensityOperator::maximally_mixed(2)?),
            other => return Err(invalid!("unknown signal preparation '{other}'")),
        };
        Self::pure(&psi)
    }

    pub fn rho(&self) -> &DensityOperator {
        &self.rho
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.rho.matrix()
    }
}

/// `−iσ_y`: |H⟩ → |V⟩, |V⟩ → −|H⟩.
pub fn flip_y() -> ComplexMatrix {
    ComplexMatrix::from_real(2, &[0.0, -1.0, 1.0, 0.0]).expect("2x2")
}

fn angles(theta: MeasurementStrength) -> (f64, f64) {
    let t = theta.radians();
    (2.0 * t + FRAC_PI_4, 2.0 * t - FRAC_PI_4)
}

pub fn build_kraus(theta: MeasurementStrength) -> KrausSet {
    let (a, b) = angles(theta);
    let m0 = ComplexMatrix::diag(&[a.cos(), a.sin()]).expect("2x2");
    let m1 = ComplexMatrix::diag(&[-b.cos(), b.sin()]).expect("2x2");
    let y = flip_y();
    let n0 = &y * &m0;
    let n1 = &y * &m1;
    let e0 = &m0.dagger() * &m0;
    let e1 = &m1.dagger() * &m1;
    KrausSet {
        theta,
        m: [m0, m1],
        n: [n0, n1],
        e: [e0, e1],
    }
}

/// Normalized post-measurement kets ψ_0, ψ_1 for a |D⟩ signal and |H⟩ meter.
pub fn post_measurement_kets(theta: MeasurementStrength) -> [[C64; 2]; 2] {
    let (a, b) = angles(theta);
    [
        [C64::new(a.cos(), 0.0), C64::new(a.sin(), 0.0)],
        [C64::new(-b.cos(), 0.0), C64::new(b.sin(), 0.0)],
    ]
}

/// Textbook C-Sign, diag(1, 1, 1, −1) over {HH, HV, VH, VV}.
pub fn csign_unitary() -> ComplexMatrix {
    ComplexMatrix::diag(&[1.0, 1.0, 1.0, -1.0]).expect("4x4")
}

/// Half-wave plate at angle θ.
pub fn hwp_unitary(theta: MeasurementStrength) -> ComplexMatrix {
    let (s, c) = (2.0 * theta.radians()).sin_cos();
    ComplexMatrix::from_real(2, &[c, s, s, -c]).expect("2x2")
}

/// C-Sign with the phase on |H⟩_σ|V⟩_μ: `(σ_x ⊗ I) CZ (σ_x ⊗ I)`.
pub fn coupling_unitary() -> ComplexMatrix {
    let i2 = ComplexMatrix::identity(2).expect("2x2");
    let flip = pauli::x().tensor(&i2).expect("4x4");
    &(&flip * &csign_unitary()) * &flip
}

fn signal_frame(prep: MeterPrep) -> ComplexMatrix {
    match prep {
        MeterPrep::H => ComplexMatrix::identity(2).expect("2x2"),
        MeterPrep::V => pauli::x(),
    }
}

/// Full two-qubit evolution for one meter preparation, including the signal frame.
pub fn circuit_unitary(theta: MeasurementStrength, prep: MeterPrep) -> ComplexMatrix {
    let i2 = ComplexMatrix::identity(2).expect("2x2");
    let hwp = i2.tensor(&hwp_unitary(theta)).expect("4x4");
    let frame = signal_frame(prep).tensor(&i2).expect("4x4");
    &(&coupling_unitary() * &hwp) * &frame
}

fn readout_kets() -> [[C64; 2]; 2] {
    [basis::diagonal(), basis::antidiagonal()]
}

/// Branch operators `(I ⊗ ⟨r_k|) U (I ⊗ |m⟩)` for readouts r_0 = D, r_1 = A.
pub fn kraus_from_circuit(theta: MeasurementStrength, prep: MeterPrep) -> [ComplexMatrix; 2] {
    let u = circuit_unitary(theta, prep);
    let m = prep.ket();
    readout_kets().map(|r| {
        ComplexMatrix::from_fn(2, |s_out, s_in| {
            let mut acc = C64::new(0.0, 0.0);
            for (mo, ro) in r.iter().enumerate() {
                for (mi, mv) in m.iter().enumerate() {
                    acc += ro.conj() * u.get(2 * s_out + mo, 2 * s_in + mi) * mv;
                }
            }
            acc
        })
        .expect("2x2")
    })
}

/// Runs the circuit on `ρ_σ ⊗ |m⟩⟨m|` and returns the unnormalized signal state
/// for each meter readout.
pub fn circuit_branch_states(
    theta: MeasurementStrength,
    prep: MeterPrep,
    signal: &SignalState,
) -> [ComplexMatrix; 2] {
    let m = prep.ket();
    let meter = ComplexMatrix::outer(&m, &m).expect("2x2");
    let joint = signal.matrix().tensor(&meter).expect("4x4");
    let out = circuit_unitary(theta, prep).conjugate(&joint).expect("4x4");
    readout_kets().map(|r| {
        ComplexMatrix::from_fn(2, |a, b| {
            let mut acc = C64::new(0.0, 0.0);
            for i in 0..2 {
                for j in 0..2 {
                    acc += r[i].conj() * out.get(2 * a + i, 2 * b + j) * r[j];
                }
            }
            acc
        })
        .expect("2x2")
    })
}

/// `p_k = Tr[E_k ρ]`.
pub fn outcome_probability(effect: &ComplexMatrix, signal: &SignalState) -> f64 {
    (effect * signal.matrix()).trace().re.clamp(0.0, 1.0)
}

/// Subnormalized branch `KρK†` with its trace.
#[derive(Debug, Clone)]
pub struct PostMeasurement {
    pub probability: f64,
    pub operator: ComplexMatrix,
}

impl PostMeasurement {
    pub fn subnormalized(&self) -> Result<DensityOperator> {
        if self.probability < SUPPORT_TOL {
            return Err(Error::NoSupport(format!("branch probability {:e}", self.probability)));
        }
        DensityOperator::branch(self.operator.clone())
    }

    pub fn normalized(&self) -> Result<DensityOperator> {
        if self.probability < SUPPORT_TOL {
            return Err(Error::NoSupport(format!("branch probability {:e}", self.probability)));
        }
        DensityOperator::new(self.operator.scale_real(1.0 / self.probability))
    }
}

pub fn post_measurement_state(kraus: &ComplexMatrix, signal: &SignalState) -> PostMeasurement {
    let operator = kraus.conjugate(signal.matrix()).expect("2x2");
    PostMeasurement {
        probability: operator.trace().re.max(0.0),
        operator,
    }
}
