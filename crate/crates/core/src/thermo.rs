//! Thermal meter, work and free-energy balance, and the information terms of the
//! measurement.
//!
//! Units: k_B = 1, so β is an inverse energy and all entropies are in nats.

use std::f64::consts::LN_2;

use crate::error::{invalid, Error, Result};
use crate::linalg::{
    operator_entropy_term, psd_sqrt, shannon_entropy, von_neumann_entropy, ComplexMatrix, DensityOperator,
    SUPPORT_TOL,
};
use crate::measurement::{build_kraus, outcome_probability, KrausSet, MeasurementStrength, SignalState};

/// Inverse temperature; zero temperature is carried as its own variant so the
/// Gibbs weights are exact there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta {
    Finite(f64),
    Infinite,
}

impl Beta {
    pub fn new(beta: f64) -> Result<Self> {
        if beta == f64::INFINITY {
            Ok(Beta::Infinite)
        } else if beta.is_finite() && beta >= 0.0 {
            Ok(Beta::Finite(beta))
        } else {
            Err(invalid!("β = {beta} must be ≥ 0"))
        }
    }

    /// From a temperature β⁻¹ ≥ 0; `0` maps to [`Beta::Infinite`] and `+∞` to β = 0.
    pub fn from_temperature(t: f64) -> Result<Self> {
        if t == 0.0 {
            Ok(Beta::Infinite)
        } else if t == f64::INFINITY {
            Ok(Beta::Finite(0.0))
        } else if t.is_finite() && t > 0.0 {
            Ok(Beta::Finite(1.0 / t))
        } else {
            Err(invalid!("temperature {t} must be ≥ 0"))
        }
    }

    pub fn temperature(self) -> f64 {
        match self {
            Beta::Infinite => 0.0,
            Beta::Finite(0.0) => f64::INFINITY,
            Beta::Finite(b) => 1.0 / b,
        }
    }

    pub fn is_zero_temperature(self) -> bool {
        matches!(self, Beta::Infinite)
    }
}

/// `ε_0 |H⟩⟨H| + ε_1 |V⟩⟨V|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeterHamiltonian {
    eps0: f64,
    eps1: f64,
}

impl Default for MeterHamiltonian {
    fn default() -> Self {
        Self { eps0: 0.0, eps1: 1.0 }
    }
}

impl MeterHamiltonian {
    pub fn new(eps0: f64, eps1: f64) -> Result<Self> {
        if !(eps0.is_finite() && eps1.is_finite() && eps1 > eps0) {
            return Err(invalid!("meter levels must satisfy ε1 > ε0, got ({eps0}, {eps1})"));
        }
        Ok(Self { eps0, eps1 })
    }

    pub fn eps0(&self) -> f64 {
        self.eps0
    }

    pub fn eps1(&self) -> f64 {
        self.eps1
    }

    pub fn gap(&self) -> f64 {
        self.eps1 - self.eps0
    }
}

/// Gibbs state of the meter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThermalMeter {
    pub beta: Beta,
    pub hamiltonian: MeterHamiltonian,
    pub z: f64,
    pub w_h: f64,
    pub w_v: f64,
}

impl ThermalMeter {
    /// `diag(w_h, w_v)`.
    pub fn density(&self) -> DensityOperator {
        DensityOperator::new(ComplexMatrix::diag(&[self.w_h, self.w_v]).expect("2x2"))
            .expect("Gibbs weights form a state")
    }
}

pub fn gibbs(beta: Beta, hamiltonian: MeterHamiltonian) -> ThermalMeter {
    let gap = hamiltonian.gap();
    let eps0 = hamiltonian.eps0();
    match beta {
        Beta::Infinite => ThermalMeter {
            beta,
            hamiltonian,
            z: match eps0 {
                e if e > 0.0 => 0.0,
                e if e < 0.0 => f64::INFINITY,
                _ => 1.0,
            },
            w_h: 1.0,
            w_v: 0.0,
        },
        Beta::Finite(b) => {
            let boltzmann = (-b * gap).exp();
            ThermalMeter {
                beta,
                hamiltonian,
                z: (-b * eps0).exp() + (-b * hamiltonian.eps1()).exp(),
                w_h: 1.0 / (1.0 + boltzmann),
                w_v: boltzmann / (1.0 + boltzmann),
            }
        }
    }
}

/// `⟨ε⟩ = Tr[ρ_μ H_μ]`.
pub fn mean_energy(meter: &ThermalMeter) -> f64 {
    meter.w_h * meter.hamiltonian.eps0() + meter.w_v * meter.hamiltonian.eps1()
}

/// `W = p_1 Δ + ε_0 − ⟨ε⟩`.
pub fn measurement_work(p1: f64, meter: &ThermalMeter) -> f64 {
    p1 * meter.hamiltonian.gap() + meter.hamiltonian.eps0() - mean_energy(meter)
}

fn check_finite_beta(meter: &ThermalMeter, what: &str) -> Result<()> {
    if meter.beta == Beta::Finite(0.0) {
        return Err(Error::Divergent(format!("{what} diverges at β = 0")));
    }
    Ok(())
}

/// `ΔF = p_1 Δ + β⁻¹ ln(1 + e^{−βΔ})`.
pub fn free_energy_change(p1: f64, meter: &ThermalMeter) -> Result<f64> {
    check_finite_beta(meter, "free-energy change")?;
    let gap = meter.hamiltonian.gap();
    let closed = match meter.beta {
        Beta::Infinite => p1 * gap,
        Beta::Finite(b) => p1 * gap + (-b * gap).exp().ln_1p() / b,
    };
    debug_assert!({
        let def = free_energy_change_by_definition(p1, meter)?;
        (def - closed).abs() <= 1e-12 * closed.abs().max(1.0)
    });
    Ok(closed)
}

/// `Σ_k p_k F^k − F^init` with `F^k = −β⁻¹ ln e^{−βε_k} = ε_k` and `F^init = −β⁻¹ ln Z`.
pub fn free_energy_change_by_definition(p1: f64, meter: &ThermalMeter) -> Result<f64> {
    check_finite_beta(meter, "free-energy change")?;
    let h = meter.hamiltonian;
    let weighted = (1.0 - p1) * h.eps0() + p1 * h.eps1();
    let f_init = match meter.beta {
        Beta::Infinite => h.eps0(),
        Beta::Finite(b) => {
            let z = (-b * h.eps0()).exp() + (-b * h.eps1()).exp();
            let ln_z = if z.is_finite() && z > 0.0 {
                z.ln()
            } else {
                let m = -b * h.eps0();
                m + (-b * h.gap()).exp().ln_1p()
            };
            -ln_z / b
        }
    };
    Ok(weighted - f_init)
}

/// `S_irr = βε_0 − β⟨ε⟩ − ln(1 + e^{−βΔ})`, independent of the outcome statistics.
pub fn irreversible_entropy(meter: &ThermalMeter) -> f64 {
    match meter.beta {
        Beta::Infinite => 0.0,
        Beta::Finite(b) => {
            let gap = meter.hamiltonian.gap();
            let closed = b * meter.hamiltonian.eps0() - b * mean_energy(meter) - (-b * gap).exp().ln_1p();
            debug_assert!(b == 0.0 || {
                let via_balance = irreversible_entropy_from_balance(0.5, meter).expect("β > 0");
                (via_balance - closed).abs() <= 1e-12 * closed.abs().max(1.0)
            });
            closed
        }
    }
}

/// `β (W − ΔF)` evaluated for a given `p_1`.
pub fn irreversible_entropy_from_balance(p1: f64, meter: &ThermalMeter) -> Result<f64> {
    let w = measurement_work(p1, meter);
    let df = free_energy_change(p1, meter)?;
    Ok(match meter.beta {
        // β(ε_0 − ⟨ε⟩) and the log term both vanish as β → ∞.
        Beta::Infinite => 0.0,
        Beta::Finite(b) => b * (w - df),
    })
}

/// `β⁻¹ (1 − H/ln 2)`: the Shannon entropy enters in bits here.
pub fn extractable_work(h_shannon_nats: f64, beta: Beta) -> Result<f64> {
    match beta {
        Beta::Infinite => Ok(0.0),
        Beta::Finite(0.0) => Err(Error::Divergent("extractable work diverges at β = 0".into())),
        Beta::Finite(b) => Ok((1.0 - h_shannon_nats / LN_2) / b),
    }
}

/// `Tr[A ln A]` for a branch operator; a branch without support contributes 0.
fn branch_term(a: &ComplexMatrix) -> Result<f64> {
    if a.trace().re < SUPPORT_TOL {
        return Ok(0.0);
    }
    operator_entropy_term(&DensityOperator::branch(a.clone())?)
}

pub fn outcome_probabilities(signal: &SignalState, kraus: &KrausSet) -> [f64; 2] {
    let p0 = outcome_probability(&kraus.e[0], signal);
    [p0, 1.0 - p0]
}

/// `I = S(ρ) + H(p) + Σ_k Tr[(√E_k ρ √E_k) ln(√E_k ρ √E_k)]`.
pub fn go_information(signal: &SignalState, kraus: &KrausSet) -> Result<f64> {
    let s = von_neumann_entropy(signal.rho())?;
    let h = shannon_entropy(&outcome_probabilities(signal, kraus))?;
    let mut residual = 0.0;
    for e in &kraus.e {
        let root = psd_sqrt(e)?;
        residual += branch_term(&root.conjugate(signal.matrix())?)?;
    }
    Ok(s + h + residual)
}

/// Thermally mixed conditional output `ρ̃_k = w_h M_kρM_k† + w_v N_kρN_k†`,
/// with `Tr ρ̃_k = p_k`.
#[derive(Debug, Clone)]
pub struct ConditionalOutputState {
    pub branches: [ComplexMatrix; 2],
}

impl ConditionalOutputState {
    pub fn new(signal: &SignalState, kraus: &KrausSet, meter: &ThermalMeter) -> Result<Self> {
        let rho = signal.matrix();
        let mut branches = Vec::with_capacity(2);
        for k in 0..2 {
            let from_h = kraus.m[k].conjugate(rho)?.scale_real(meter.w_h);
            let from_v = kraus.n[k].conjugate(rho)?.scale_real(meter.w_v);
            branches.push(from_h.try_add(&from_v)?);
        }
        let branches: [ComplexMatrix; 2] = branches.try_into().expect("two outcomes");
        Ok(Self { branches })
    }

    pub fn probability(&self, k: usize) -> f64 {
        self.branches[k].trace().re.max(0.0)
    }

    pub fn subnormalized(&self, k: usize) -> Result<DensityOperator> {
        DensityOperator::branch(self.branches[k].clone())
    }

    pub fn normalized(&self, k: usize) -> Result<DensityOperator> {
        let p = self.probability(k);
        if p < SUPPORT_TOL {
            return Err(Error::NoSupport(format!("outcome {k} has probability {p:e}")));
        }
        DensityOperator::new(self.branches[k].scale_real(1.0 / p))
    }

    /// `Σ_k Tr[ρ̃_k ln ρ̃_k]`.
    pub fn residual_term(&self) -> Result<f64> {
        Ok(branch_term(&self.branches[0])? + branch_term(&self.branches[1])?)
    }
}

#[derive(Debug, Clone)]
pub struct TildeInformation {
    pub tilde_info: f64,
    pub residual_term: f64,
    pub conditional: ConditionalOutputState,
}

/// `Ĩ = S(ρ) + H(p) + Σ_k Tr[ρ̃_k ln ρ̃_k]`.
pub fn tilde_information(signal: &SignalState, kraus: &KrausSet, meter: &ThermalMeter) -> Result<TildeInformation> {
    let conditional = ConditionalOutputState::new(signal, kraus, meter)?;
    let s = von_neumann_entropy(signal.rho())?;
    let h = shannon_entropy(&outcome_probabilities(signal, kraus))?;
    let residual_term = conditional.residual_term()?;
    Ok(TildeInformation {
        tilde_info: s + h + residual_term,
        residual_term,
        conditional,
    })
}

/// Slack in `S_irr ≥ I − H`, for the revised (Ĩ) and original (I) information.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundGap {
    pub revised: f64,
    pub original: f64,
}

pub fn bound_gap(s_irr: f64, tilde_info: f64, go_info: f64, h_shannon: f64) -> BoundGap {
    BoundGap {
        revised: s_irr - (tilde_info - h_shannon),
        original: s_irr - (go_info - h_shannon),
    }
}

/// All scalar outputs for one (θ, β) point.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoReport {
    pub theta: f64,
    pub beta: Beta,
    pub p: [f64; 2],
    pub h_shannon: f64,
    pub s_signal: f64,
    pub go_info: f64,
    pub tilde_info: f64,
    pub residual_term: f64,
    pub w_meas: f64,
    /// `None` where the quantity diverges (β = 0).
    pub delta_f: Option<f64>,
    pub s_irr: f64,
    pub bound_gap: f64,
    /// `None` where the quantity diverges (β = 0).
    pub w_extract: Option<f64>,
}

impl ThermoReport {
    pub fn original_bound_gap(&self) -> f64 {
        self.s_irr - (self.go_info - self.h_shannon)
    }
}

fn optional(r: Result<f64>) -> Result<Option<f64>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::Divergent(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn thermo_report(
    theta: MeasurementStrength,
    beta: Beta,
    hamiltonian: MeterHamiltonian,
    signal: &SignalState,
) -> Result<ThermoReport> {
    let kraus = build_kraus(theta);
    let meter = gibbs(beta, hamiltonian);
    let p = outcome_probabilities(signal, &kraus);
    let h_shannon = shannon_entropy(&p)?;
    let s_signal = von_neumann_entropy(signal.rho())?;
    let go_info = go_information(signal, &kraus)?;
    let tilde = tilde_information(signal, &kraus, &meter)?;
    let s_irr = irreversible_entropy(&meter);
    Ok(ThermoReport {
        theta: theta.radians(),
        beta,
        p,
        h_shannon,
        s_signal,
        go_info,
        tilde_info: tilde.tilde_info,
        residual_term: tilde.residual_term,
        w_meas: measurement_work(p[1], &meter),
        delta_f: optional(free_energy_change(p[1], &meter))?,
        s_irr,
        bound_gap: bound_gap(s_irr, tilde.tilde_info, go_info, h_shannon).revised,
        w_extract: optional(extractable_work(h_shannon, beta))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_8;

    // Oracle constants, evaluated directly from scalar definitions:
    // w_h(β=1) = 1/(1+e^{-1}), S_gibbs = −Σ w ln w.
    const W_H_BETA1: f64 = 0.731_058_578_630_004_9;
    const W_V_BETA1: f64 = 0.268_941_421_369_995_1;
    const Z_BETA1: f64 = 1.367_879_441_171_442_3;
    const S_GIBBS_BETA1: f64 = 0.582_203_108_888_217_9;
    const LN_ONE_PLUS_INV_E: f64 = 0.313_261_687_518_222_9;

    fn meter(beta: Beta) -> ThermalMeter {
        gibbs(beta, MeterHamiltonian::default())
    }

    fn theta(t: f64) -> MeasurementStrength {
        MeasurementStrength::new(t).unwrap()
    }

    #[test]
    fn beta_parsing() {
        assert!(Beta::new(-1.0).is_err());
        assert!(Beta::new(f64::NAN).is_err());
        assert_eq!(Beta::new(f64::INFINITY).unwrap(), Beta::Infinite);
        assert_eq!(Beta::from_temperature(0.0).unwrap(), Beta::Infinite);
        assert_eq!(Beta::from_temperature(2.0).unwrap(), Beta::Finite(0.5));
        assert_eq!(Beta::Finite(0.0).temperature(), f64::INFINITY);
    }

    #[test]
    fn hamiltonian_requires_ordered_levels() {
        assert!(MeterHamiltonian::new(1.0, 1.0).is_err());
        assert!(MeterHamiltonian::new(0.0, 2.0).is_ok());
    }

    #[test]
    fn gibbs_examples() {
        let g = meter(Beta::Infinite);
        assert_eq!((g.w_h, g.w_v), (1.0, 0.0));
        let g = meter(Beta::Finite(0.0));
        assert_eq!((g.w_h, g.w_v, g.z), (0.5, 0.5, 2.0));
        let g = meter(Beta::Finite(1.0));
        assert!((g.w_h - W_H_BETA1).abs() < 1e-15);
        assert!((g.w_v - W_V_BETA1).abs() < 1e-15);
        assert!((g.z - Z_BETA1).abs() < 1e-15);
        assert!((g.w_h + g.w_v - 1.0).abs() <= 1e-14);
    }

    #[test]
    fn mean_energy_examples() {
        assert_eq!(mean_energy(&meter(Beta::Infinite)), 0.0);
        assert_eq!(mean_energy(&meter(Beta::Finite(0.0))), 0.5);
        assert!((mean_energy(&meter(Beta::Finite(1.0))) - W_V_BETA1).abs() < 1e-15);
    }

    #[test]
    fn work_examples() {
        assert_eq!(measurement_work(0.5, &meter(Beta::Infinite)), 0.5);
        assert_eq!(measurement_work(0.0, &meter(Beta::Infinite)), 0.0);
        assert!((measurement_work(0.5, &meter(Beta::Finite(1.0))) - (0.5 - W_V_BETA1)).abs() < 1e-15);
    }

    #[test]
    fn free_energy_examples() {
        assert_eq!(free_energy_change(0.5, &meter(Beta::Infinite)).unwrap(), 0.5);
        let m = meter(Beta::Finite(1.0));
        assert!((free_energy_change(0.5, &m).unwrap() - (0.5 + LN_ONE_PLUS_INV_E)).abs() < 1e-15);
        assert!((free_energy_change(0.0, &m).unwrap() - LN_ONE_PLUS_INV_E).abs() < 1e-15);
        assert!(matches!(
            free_energy_change(0.5, &meter(Beta::Finite(0.0))),
            Err(Error::Divergent(_))
        ));
    }

    #[test]
    fn free_energy_routes_agree() {
        let h = MeterHamiltonian::new(0.3, 1.7).unwrap();
        for i in 1..=40 {
            let beta = Beta::Finite(0.05 * i as f64 * i as f64);
            for j in 0..=10 {
                let p1 = j as f64 / 10.0;
                for ham in [MeterHamiltonian::default(), h] {
                    let m = gibbs(beta, ham);
                    let a = free_energy_change(p1, &m).unwrap();
                    let b = free_energy_change_by_definition(p1, &m).unwrap();
                    assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
                }
            }
        }
    }

    #[test]
    fn irreversible_entropy_examples() {
        assert_eq!(irreversible_entropy(&meter(Beta::Infinite)), 0.0);
        assert!((irreversible_entropy(&meter(Beta::Finite(1.0))) + S_GIBBS_BETA1).abs() < 1e-12);
        assert!((irreversible_entropy(&meter(Beta::Finite(0.0))) + LN_2).abs() < 1e-15);
    }

    #[test]
    fn irreversible_entropy_routes_agree_for_any_p1() {
        for i in 1..=30 {
            let m = meter(Beta::Finite(0.2 * i as f64));
            let closed = irreversible_entropy(&m);
            for j in 0..=20 {
                let via = irreversible_entropy_from_balance(j as f64 / 20.0, &m).unwrap();
                assert!((via - closed).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn irreversible_entropy_is_minus_gibbs_entropy_for_ground_zero() {
        for i in 0..=20 {
            let m = meter(Beta::Finite(0.25 * i as f64));
            let s = von_neumann_entropy(&m.density()).unwrap();
            assert!((irreversible_entropy(&m) + s).abs() <= 1e-12);
        }
    }

    #[test]
    fn go_information_examples() {
        let d = SignalState::named("D").unwrap();
        for i in 0..=32 {
            let k = build_kraus(theta(FRAC_PI_8 * i as f64 / 32.0));
            assert!(go_information(&d, &k).unwrap().abs() <= 1e-9);
        }
        let proj = build_kraus(MeasurementStrength::PROJECTIVE);
        let h = SignalState::named("H").unwrap();
        assert!(go_information(&h, &proj).unwrap().abs() <= 1e-12);
        let mixed = SignalState::named("mixed").unwrap();
        assert!((go_information(&mixed, &proj).unwrap() - LN_2).abs() <= 1e-12);
    }

    #[test]
    fn pure_signals_have_zero_go_information() {
        for name in ["H", "V", "D", "A", "R", "L"] {
            let s = SignalState::named(name).unwrap();
            for i in 0..=16 {
                let k = build_kraus(theta(FRAC_PI_8 * i as f64 / 16.0));
                assert!(go_information(&s, &k).unwrap().abs() <= 1e-9, "{name} {i}");
            }
        }
    }

    #[test]
    fn tilde_information_examples() {
        let d = SignalState::named("D").unwrap();
        for i in 0..=16 {
            let k = build_kraus(theta(FRAC_PI_8 * i as f64 / 16.0));
            let t = tilde_information(&d, &k, &meter(Beta::Infinite)).unwrap();
            assert!(t.tilde_info.abs() <= 1e-9);
        }
        let proj = build_kraus(MeasurementStrength::PROJECTIVE);
        let t = tilde_information(&d, &proj, &meter(Beta::Finite(1.0))).unwrap();
        assert!((t.tilde_info + S_GIBBS_BETA1).abs() <= 1e-12);
        assert!((t.residual_term + S_GIBBS_BETA1 + LN_2).abs() <= 1e-12);
        let spec = t.conditional.subnormalized(0).unwrap().spectrum();
        assert!((spec.values()[0] - W_H_BETA1 / 2.0).abs() <= 1e-12);
        assert!((spec.values()[1] - W_V_BETA1 / 2.0).abs() <= 1e-12);

        let hot = tilde_information(&d, &proj, &meter(Beta::Finite(0.0))).unwrap();
        assert!((hot.tilde_info + LN_2).abs() <= 1e-12);
        assert!((hot.residual_term + 2.0 * LN_2).abs() <= 1e-12);
    }

    #[test]
    fn conditional_traces_are_outcome_probabilities() {
        let s = SignalState::from_bloch([0.2, -0.4, 0.6]).unwrap();
        for i in 0..=20 {
            let k = build_kraus(theta(FRAC_PI_8 * i as f64 / 20.0));
            let p = outcome_probabilities(&s, &k);
            for b in [Beta::Infinite, Beta::Finite(0.0), Beta::Finite(0.7)] {
                let c = ConditionalOutputState::new(&s, &k, &meter(b)).unwrap();
                assert!((c.probability(0) - p[0]).abs() <= 1e-12);
                assert!((c.probability(0) + c.probability(1) - 1.0).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn bound_gap_examples() {
        let d = SignalState::named("D").unwrap();
        let proj = build_kraus(MeasurementStrength::PROJECTIVE);
        let m = meter(Beta::Finite(1.0));
        let t = tilde_information(&d, &proj, &m).unwrap();
        let g = bound_gap(irreversible_entropy(&m), t.tilde_info, 0.0, LN_2);
        assert!((g.revised - LN_2).abs() <= 1e-12);

        let cold = meter(Beta::Infinite);
        for i in 0..=8 {
            let k = build_kraus(theta(FRAC_PI_8 * i as f64 / 8.0));
            let t = tilde_information(&d, &k, &cold).unwrap();
            let go = go_information(&d, &k).unwrap();
            let g = bound_gap(irreversible_entropy(&cold), t.tilde_info, go, LN_2);
            assert!((g.revised - LN_2).abs() <= 1e-9);
            assert!((g.original - LN_2).abs() <= 1e-9);
        }
    }

    #[test]
    fn extractable_work_examples() {
        assert_eq!(extractable_work(0.0, Beta::Finite(1.0)).unwrap(), 1.0);
        assert!(extractable_work(LN_2, Beta::Finite(1.0)).unwrap().abs() < 1e-15);
        assert!((extractable_work(0.5 * LN_2, Beta::Finite(2.0)).unwrap() - 0.25).abs() < 1e-15);
        assert_eq!(extractable_work(0.3, Beta::Infinite).unwrap(), 0.0);
        assert!(matches!(extractable_work(0.3, Beta::Finite(0.0)), Err(Error::Divergent(_))));
    }

    #[test]
    fn report_fields_are_consistent() {
        let s = SignalState::named("D").unwrap();
        let r = thermo_report(theta(0.2), Beta::Finite(0.8), MeterHamiltonian::default(), &s).unwrap();
        assert!((r.bound_gap - (r.s_irr - (r.tilde_info - r.h_shannon))).abs() <= 1e-12);
        assert!((r.tilde_info - (r.s_signal + r.h_shannon + r.residual_term)).abs() <= 1e-12);
        let hot = thermo_report(theta(0.2), Beta::Finite(0.0), MeterHamiltonian::default(), &s).unwrap();
        assert_eq!(hot.delta_f, None);
        assert_eq!(hot.w_extract, None);
    }
}
