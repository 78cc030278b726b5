use std::f64::consts::FRAC_PI_8;

use crate::error::Result;
use crate::experiment::{joint_basis, ppbs_apply, PhysicalGate};
use crate::linalg::{pauli, tensor, ComplexMatrix, DensityOperator};
use crate::measurement::{
    build_kraus, circuit_branch_states, coupling_unitary, kraus_from_circuit, MeasurementStrength, MeterPrep,
    SignalState,
};

use super::format::number;

const TOL: f64 = 1e-12;

/// Expected gate action on {HH, HV, VH, VV}: `(input, output, amplitude)`.
const GATE_TABLE: [(usize, usize, f64); 4] = [
    (0, 3, 1.0 / 3.0),
    (1, 2, 1.0 / 3.0),
    (2, 1, 1.0 / 3.0),
    (3, 0, -1.0 / 3.0),
];

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    /// Largest deviation observed.
    pub value: f64,
    pub tolerance: f64,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateReport {
    pub checks: Vec<Check>,
    pub theta_points: usize,
}

impl GateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One `PASS`/`FAIL` line per check.
    pub fn render(&self) -> String {
        let mut out = format!("gate-check over {} theta points\n", self.theta_points);
        for c in &self.checks {
            out.push_str(&format!(
                "{} {:<26} max_deviation={} tolerance={}\n",
                if c.passed() { "PASS" } else { "FAIL" },
                c.name,
                number(c.value),
                number(c.tolerance)
            ));
        }
        out.push_str(if self.passed() { "all checks passed\n" } else { "gate check FAILED\n" });
        out
    }
}

fn sign_free_diff(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<f64> {
    let plus = a.max_abs_diff(b)?;
    let minus = a.max_abs_diff(&b.scale_real(-1.0))?;
    Ok(plus.min(minus))
}

/// Verifies the gate table, the 1/9 success probability, unitarity of the
/// rescaled gate, its link to the measurement coupling, and closed-form vs
/// circuit agreement of the measurement on a θ grid of `theta_points`.
pub fn gate_check(gate: &PhysicalGate, theta_points: usize) -> Result<GateReport> {
    let theta_points = theta_points.max(2);
    let mut table_dev: f64 = 0.0;
    let mut success_dev: f64 = 0.0;
    for (input, output, amp) in GATE_TABLE {
        let image = gate.operator().apply(&joint_basis(input))?;
        for (i, z) in image.iter().enumerate() {
            let want = if i == output { amp } else { 0.0 };
            table_dev = table_dev.max((z.re - want).abs()).max(z.im.abs());
        }
        let (_, p) = ppbs_apply(gate, &DensityOperator::pure(&joint_basis(input))?)?;
        success_dev = success_dev.max((p - 1.0 / 9.0).abs());
    }

    let i2 = ComplexMatrix::identity(2)?;
    let x = pauli::x();
    let rebuilt = &(&tensor(&i2, &x)? * &gate.operator().scale_real(3.0)) * &tensor(&x, &i2)?;
    let coupling_dev = rebuilt.max_abs_diff(&coupling_unitary())?;

    let signals = ["H", "V", "D", "A", "R", "L"]
        .iter()
        .map(|n| SignalState::named(n))
        .collect::<Result<Vec<_>>>()?;
    let mut completeness: f64 = 0.0;
    let mut branch: f64 = 0.0;
    let mut circuit_ops: f64 = 0.0;
    let mut circuit_effects: f64 = 0.0;
    let mut circuit_states: f64 = 0.0;
    for i in 0..theta_points {
        let t = FRAC_PI_8 * i as f64 / (theta_points - 1) as f64;
        let theta = MeasurementStrength::new(t)?;
        let kraus = build_kraus(theta);
        completeness = completeness.max(kraus.completeness_defect());
        branch = branch.max(kraus.branch_effect_defect());
        for prep in [MeterPrep::H, MeterPrep::V] {
            let closed = kraus.branch_ops(prep);
            let circuit = kraus_from_circuit(theta, prep);
            for k in 0..2 {
                circuit_ops = circuit_ops.max(sign_free_diff(&circuit[k], &closed[k])?);
                let effect = &circuit[k].dagger() * &circuit[k];
                circuit_effects = circuit_effects.max(effect.max_abs_diff(&kraus.e[k])?);
            }
            for s in &signals {
                let states = circuit_branch_states(theta, prep, s);
                for k in 0..2 {
                    let want = closed[k].conjugate(s.matrix())?;
                    circuit_states = circuit_states.max(states[k].max_abs_diff(&want)?);
                }
            }
        }
    }

    let check = |name, value| Check {
        name,
        value,
        tolerance: TOL,
    };
    Ok(GateReport {
        checks: vec![
            check("ppbs_table", table_dev),
            check("success_probability", success_dev),
            check("unitarity", gate.unitarity_defect()),
            check("coupling_from_gate", coupling_dev),
            check("completeness", completeness),
            check("branch_effects", branch),
            check("circuit_kraus", circuit_ops),
            check("circuit_effects", circuit_effects),
            check("circuit_branch_states", circuit_states),
        ],
        theta_points,
    })
}
