//! Python bindings for the measurement, thermodynamics and experiment layers.

use pyo3::exceptions::{PyArithmeticError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use infotherm_core::experiment::{self as exp, Sampling};
use infotherm_core::linalg::{ComplexMatrix, C64};
use infotherm_core::measurement::{self as meas, MeasurementStrength};
use infotherm_core::sweep::{self, Mode, SamplingConfig, SignalSpec, SweepConfig, Temperature, ThetaGrid};
use infotherm_core::thermo::{self, Beta, MeterHamiltonian};
use infotherm_core::Error;

fn to_py(e: Error) -> PyErr {
    match e {
        Error::InvalidInput(_) | Error::InvalidDistribution(_) => PyValueError::new_err(e.to_string()),
        other => PyArithmeticError::new_err(other.to_string()),
    }
}

type Matrix = Vec<Vec<C64>>;

fn rows(m: &ComplexMatrix) -> Matrix {
    m.rows()
}

fn strength(theta: f64) -> PyResult<MeasurementStrength> {
    MeasurementStrength::new(theta).map_err(to_py)
}

/// A signal name such as `"D"` or a Bloch vector `(x, y, z)`.
fn signal_spec(obj: &Bound<'_, PyAny>) -> PyResult<SignalSpec> {
    if let Ok(name) = obj.extract::<String>() {
        return Ok(SignalSpec::Named(name));
    }
    let r: Vec<f64> = obj.extract()?;
    let r: [f64; 3] = r
        .try_into()
        .map_err(|_| PyValueError::new_err("Bloch vector needs three components"))?;
    Ok(SignalSpec::Bloch(r))
}

fn signal_state(obj: &Bound<'_, PyAny>) -> PyResult<meas::SignalState> {
    signal_spec(obj)?.resolve().map_err(to_py)
}

fn hamiltonian(eps0: f64, eps1: f64) -> PyResult<MeterHamiltonian> {
    MeterHamiltonian::new(eps0, eps1).map_err(to_py)
}

fn beta(value: f64) -> PyResult<Beta> {
    Beta::new(value).map_err(to_py)
}

fn beta_value(b: Beta) -> f64 {
    match b {
        Beta::Infinite => f64::INFINITY,
        Beta::Finite(x) => x,
    }
}

/// Branch operators for one measurement strength.
#[pyclass(frozen, get_all, module = "infotherm")]
pub struct KrausSet {
    theta: f64,
    /// Meter prepared in |H⟩.
    m: Vec<Matrix>,
    /// Meter prepared in |V⟩.
    n: Vec<Matrix>,
    e: Vec<Matrix>,
    completeness_defect: f64,
}

/// Gibbs state of the meter.
#[pyclass(frozen, get_all, module = "infotherm")]
pub struct ThermalMeter {
    beta: f64,
    z: f64,
    w_h: f64,
    w_v: f64,
}

/// Every scalar for one (θ, β) point. `delta_f` and `w_extract` are `None` at β = 0.
#[pyclass(frozen, get_all, module = "infotherm")]
pub struct ThermoReport {
    theta: f64,
    beta: f64,
    p: (f64, f64),
    h_shannon: f64,
    s_signal: f64,
    go_info: f64,
    tilde_info: f64,
    residual_term: f64,
    w_meas: f64,
    delta_f: Option<f64>,
    s_irr: f64,
    bound_gap: f64,
    w_extract: Option<f64>,
}

#[pymethods]
impl ThermoReport {
    fn __repr__(&self) -> String {
        format!(
            "ThermoReport(theta={}, beta={}, tilde_info={}, bound_gap={})",
            self.theta, self.beta, self.tilde_info, self.bound_gap
        )
    }
}

#[pyfunction]
fn build_kraus(theta: f64) -> PyResult<KrausSet> {
    let k = meas::build_kraus(strength(theta)?);
    Ok(KrausSet {
        theta,
        m: k.m.iter().map(rows).collect(),
        n: k.n.iter().map(rows).collect(),
        e: k.e.iter().map(rows).collect(),
        completeness_defect: k.completeness_defect(),
    })
}

/// `beta` may be `math.inf` for a zero-temperature meter.
#[pyfunction]
#[pyo3(signature = (beta, eps0 = 0.0, eps1 = 1.0))]
fn gibbs(beta: f64, eps0: f64, eps1: f64) -> PyResult<ThermalMeter> {
    let m = thermo::gibbs(self::beta(beta)?, hamiltonian(eps0, eps1)?);
    Ok(ThermalMeter {
        beta: beta_value(m.beta),
        z: m.z,
        w_h: m.w_h,
        w_v: m.w_v,
    })
}

#[pyfunction]
#[pyo3(signature = (theta, beta, signal = None, eps0 = 0.0, eps1 = 1.0))]
fn thermo_report(
    theta: f64,
    beta: f64,
    signal: Option<&Bound<'_, PyAny>>,
    eps0: f64,
    eps1: f64,
) -> PyResult<ThermoReport> {
    let s = match signal {
        Some(obj) => signal_state(obj)?,
        None => SignalSpec::default().resolve().map_err(to_py)?,
    };
    let r = thermo::thermo_report(strength(theta)?, self::beta(beta)?, hamiltonian(eps0, eps1)?, &s).map_err(to_py)?;
    Ok(ThermoReport {
        theta: r.theta,
        beta: beta_value(r.beta),
        p: (r.p[0], r.p[1]),
        h_shannon: r.h_shannon,
        s_signal: r.s_signal,
        go_info: r.go_info,
        tilde_info: r.tilde_info,
        residual_term: r.residual_term,
        w_meas: r.w_meas,
        delta_f: r.delta_f,
        s_irr: r.s_irr,
        bound_gap: r.bound_gap,
        w_extract: r.w_extract,
    })
}

#[pyfunction]
fn go_information(theta: f64, signal: &Bound<'_, PyAny>) -> PyResult<f64> {
    thermo::go_information(&signal_state(signal)?, &meas::build_kraus(strength(theta)?)).map_err(to_py)
}

#[pyfunction]
#[pyo3(signature = (theta, beta, signal, eps0 = 0.0, eps1 = 1.0))]
fn tilde_information(theta: f64, beta: f64, signal: &Bound<'_, PyAny>, eps0: f64, eps1: f64) -> PyResult<f64> {
    let meter = thermo::gibbs(self::beta(beta)?, hamiltonian(eps0, eps1)?);
    thermo::tilde_information(&signal_state(signal)?, &meas::build_kraus(strength(theta)?), &meter)
        .map(|t| t.tilde_info)
        .map_err(to_py)
}

fn count_cells<'py>(py: Python<'py>, cells: [[f64; 2]; 2]) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("HD", cells[0][0])?;
    d.set_item("VD", cells[1][0])?;
    d.set_item("HA", cells[0][1])?;
    d.set_item("VA", cells[1][1])?;
    Ok(d)
}

/// Mean coincidence counts over the four (signal, meter) cells.
#[pyfunction]
#[pyo3(signature = (theta, beta, signal, n0 = 100_000.0))]
fn expected_counts<'py>(
    py: Python<'py>,
    theta: f64,
    beta: f64,
    signal: &Bound<'py, PyAny>,
    n0: f64,
) -> PyResult<Bound<'py, PyDict>> {
    let meter = thermo::gibbs(self::beta(beta)?, MeterHamiltonian::default());
    let t = exp::expected_counts(strength(theta)?, (meter.w_h, meter.w_v), &signal_state(signal)?, n0).map_err(to_py)?;
    count_cells(py, t.cells)
}

/// One Poisson draw of the coincidence counts.
#[pyfunction]
#[pyo3(signature = (theta, beta, signal, n0, seed))]
fn sample_counts<'py>(
    py: Python<'py>,
    theta: f64,
    beta: f64,
    signal: &Bound<'py, PyAny>,
    n0: f64,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let meter = thermo::gibbs(self::beta(beta)?, MeterHamiltonian::default());
    let t = exp::expected_counts(strength(theta)?, (meter.w_h, meter.w_v), &signal_state(signal)?, n0).map_err(to_py)?;
    let c = exp::sample_counts(&t, seed).map_err(to_py)?;
    let d = PyDict::new(py);
    for (key, n) in [("HD", c.n_hd), ("VD", c.n_vd), ("HA", c.n_ha), ("VA", c.n_va)] {
        d.set_item(key, n)?;
    }
    Ok(d)
}

/// Simulated Pauli tomography of a Bloch-vector state; returns the reconstructed matrix.
#[pyfunction]
fn tomography(bloch: [f64; 3], shots: u64, seed: u64) -> PyResult<Matrix> {
    let rho = infotherm_core::linalg::DensityOperator::from_bloch(bloch).map_err(to_py)?;
    let rec = exp::simulate_tomography(&rho, shots, seed).map_err(to_py)?;
    Ok(rows(exp::reconstruct(&rec).map_err(to_py)?.matrix()))
}

/// Conditional-state pipeline; exact statistics unless `n0`, `shots` and `seed` are all given.
#[pyfunction]
#[pyo3(signature = (theta, beta, signal, n0 = None, shots = None, seed = None))]
fn conditional_states<'py>(
    py: Python<'py>,
    theta: f64,
    beta: f64,
    signal: &Bound<'py, PyAny>,
    n0: Option<u64>,
    shots: Option<u64>,
    seed: Option<u64>,
) -> PyResult<Bound<'py, PyDict>> {
    let sampling = match (n0, shots, seed) {
        (None, None, None) => Sampling::Exact,
        (Some(n0), Some(shots), Some(seed)) => Sampling::Finite { n0: n0 as f64, shots, seed },
        _ => return Err(PyValueError::new_err("give all of n0, shots and seed, or none")),
    };
    let meter = thermo::gibbs(self::beta(beta)?, MeterHamiltonian::default());
    let est = exp::conditional_state_pipeline(strength(theta)?, &meter, &signal_state(signal)?, sampling)
        .map_err(to_py)?;
    let d = PyDict::new(py);
    let states: Vec<Option<Matrix>> = est.rho_hat.iter().map(|r| r.as_ref().map(|r| rows(r.matrix()))).collect();
    d.set_item("rho_hat", states)?;
    d.set_item("p_hat", (est.p_hat[0], est.p_hat[1]))?;
    d.set_item("h_shannon", est.h_shannon)?;
    d.set_item("residual_term", est.residual_term)?;
    d.set_item("tilde_info", est.tilde_info)?;
    Ok(d)
}

/// Runs `sweep`, `fig3` or `fig4` and returns the serialized table.
#[pyfunction]
#[pyo3(signature = (
    command = "sweep",
    theta_min = 0.0,
    theta_max = std::f64::consts::FRAC_PI_8,
    theta_steps = 33,
    beta_inv = None,
    mode = "ideal",
    n0 = exp::DEFAULT_N0,
    shots = exp::DEFAULT_SHOTS,
    resamples = exp::DEFAULT_RESAMPLES,
    seed = None,
    signal = None,
    format = "csv",
))]
#[allow(clippy::too_many_arguments)]
fn run_sweep(
    command: &str,
    theta_min: f64,
    theta_max: f64,
    theta_steps: usize,
    beta_inv: Option<Vec<Bound<'_, PyAny>>>,
    mode: &str,
    n0: u64,
    shots: u64,
    resamples: usize,
    seed: Option<u64>,
    signal: Option<&Bound<'_, PyAny>>,
    format: &str,
) -> PyResult<String> {
    let temperatures = match beta_inv {
        None if command == "fig4" => sweep::fig4_default_temperatures(),
        None => vec![Temperature::ZERO],
        Some(list) => list
            .iter()
            .map(|t| t.str()?.to_string().parse::<Temperature>().map_err(to_py))
            .collect::<PyResult<_>>()?,
    };
    let mode: Mode = mode.parse().map_err(to_py)?;
    let sampling = match (mode, seed) {
        (Mode::Sampled, Some(seed)) => Some(SamplingConfig { n0, shots, resamples, seed }),
        (Mode::Sampled, None) => return Err(PyValueError::new_err("sampled mode requires a seed")),
        (Mode::Ideal, _) => None,
    };
    let config = SweepConfig {
        theta: ThetaGrid { min: theta_min, max: theta_max, steps: theta_steps },
        temperatures,
        mode,
        sampling,
        signal: match signal {
            Some(s) => signal_spec(s)?,
            None => SignalSpec::default(),
        },
        ..Default::default()
    };
    let table = match command {
        "sweep" => sweep::cmd_sweep(&config),
        "fig3" => sweep::cmd_fig3(&config),
        "fig4" => sweep::cmd_fig4(&config),
        other => return Err(PyValueError::new_err(format!("unknown command '{other}'"))),
    }
    .map_err(to_py)?;
    match format {
        "csv" => Ok(table.to_csv()),
        "json" => Ok(table.to_json()),
        other => Err(PyValueError::new_err(format!("format must be csv or json, got '{other}'"))),
    }
}

/// Returns `(passed, report)`; `perturb` adds an amplitude to one gate entry.
#[pyfunction]
#[pyo3(signature = (theta_points = 1000, perturb = None))]
fn gate_check(theta_points: usize, perturb: Option<f64>) -> PyResult<(bool, String)> {
    let mut gate = exp::physical_gate();
    if let Some(delta) = perturb {
        gate = gate.perturbed(0, 3, delta);
    }
    let report = sweep::gate_check(&gate, theta_points).map_err(to_py)?;
    Ok((report.passed(), report.render()))
}

#[pymodule]
mod infotherm {
    #[pymodule_export]
    use super::{
        build_kraus, conditional_states, expected_counts, gate_check, gibbs, go_information, run_sweep, sample_counts,
        thermo_report, tilde_information, tomography, KrausSet, ThermalMeter, ThermoReport,
    };
}
