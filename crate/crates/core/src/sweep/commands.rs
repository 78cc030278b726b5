use rayon::prelude::*;

use super::config::{Mode, SamplingConfig, SweepConfig, Temperature};
use super::format::number;
use super::table::{Cell, Row, RowError, Table};
use crate::error::{Error, Result};
use crate::experiment::rng::{derive_seed, RNG_ALGORITHM, STREAM_GRID};
use crate::experiment::{conditional_state_pipeline, monte_carlo_vector, MonteCarloEstimate, Sampling};
use crate::measurement::{MeasurementStrength, SignalState};
use crate::thermo::{
    bound_gap, extractable_work, free_energy_change, gibbs, irreversible_entropy, measurement_work, thermo_report,
    ThermalMeter, ThermoReport,
};

/// Scalars a row can carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    P0,
    P1,
    Shannon,
    SSignal,
    GoInfo,
    TildeInfo,
    Residual,
    /// `Ĩ − H`.
    Correlation,
    WMeas,
    DeltaF,
    SIrr,
    BoundGap,
    WExtract,
}

/// Quantities re-estimated from simulated data in sampled mode, in the order
/// the Monte Carlo trial returns them. The rest stay at their theory values.
const ESTIMATED: [Quantity; 10] = [
    Quantity::P0,
    Quantity::P1,
    Quantity::Shannon,
    Quantity::TildeInfo,
    Quantity::Residual,
    Quantity::Correlation,
    Quantity::WMeas,
    Quantity::DeltaF,
    Quantity::BoundGap,
    Quantity::WExtract,
];

impl Quantity {
    pub fn column_name(self) -> &'static str {
        match self {
            Quantity::P0 => "p0",
            Quantity::P1 => "p1",
            Quantity::Shannon => "shannon_nats",
            Quantity::SSignal => "s_signal_nats",
            Quantity::GoInfo => "go_info_nats",
            Quantity::TildeInfo => "tilde_info_nats",
            Quantity::Residual => "residual_nats",
            Quantity::Correlation => "correlation_nats",
            Quantity::WMeas => "w_meas",
            Quantity::DeltaF => "delta_f",
            Quantity::SIrr => "s_irr_nats",
            Quantity::BoundGap => "bound_gap_nats",
            Quantity::WExtract => "w_extract",
        }
    }

    pub fn is_estimated(self) -> bool {
        ESTIMATED.contains(&self)
    }

    fn theory(self, r: &ThermoReport) -> Option<f64> {
        Some(match self {
            Quantity::P0 => r.p[0],
            Quantity::P1 => r.p[1],
            Quantity::Shannon => r.h_shannon,
            Quantity::SSignal => r.s_signal,
            Quantity::GoInfo => r.go_info,
            Quantity::TildeInfo => r.tilde_info,
            Quantity::Residual => r.residual_term,
            Quantity::Correlation => r.tilde_info - r.h_shannon,
            Quantity::WMeas => r.w_meas,
            Quantity::DeltaF => return r.delta_f,
            Quantity::SIrr => r.s_irr,
            Quantity::BoundGap => r.bound_gap,
            Quantity::WExtract => return r.w_extract,
        })
    }

    fn estimate_index(self) -> Option<usize> {
        ESTIMATED.iter().position(|&q| q == self)
    }
}

/// The ideal sweep columns, in output order.
pub const SWEEP_QUANTITIES: [Quantity; 12] = [
    Quantity::P0,
    Quantity::P1,
    Quantity::Shannon,
    Quantity::SSignal,
    Quantity::GoInfo,
    Quantity::TildeInfo,
    Quantity::Residual,
    Quantity::WMeas,
    Quantity::DeltaF,
    Quantity::SIrr,
    Quantity::BoundGap,
    Quantity::WExtract,
];

#[derive(Debug, Clone, Copy)]
enum Source {
    Theta,
    BetaInv,
    Theory(Quantity),
    Mean(Quantity),
    StdError(Quantity),
}

struct Point {
    theta: MeasurementStrength,
    temperature: Temperature,
    report: ThermoReport,
    estimates: Option<Vec<MonteCarloEstimate>>,
}

impl Point {
    fn cell(&self, source: Source) -> Cell {
        let opt = |x: Option<f64>| x.map_or(Cell::Missing, Cell::Num);
        match source {
            Source::Theta => Cell::Num(self.theta.radians()),
            Source::BetaInv => Cell::Num(self.temperature.beta_inv()),
            Source::Theory(q) => opt(q.theory(&self.report)),
            Source::Mean(q) | Source::StdError(q) => {
                let est = self
                    .estimates
                    .as_ref()
                    .and_then(|e| q.estimate_index().map(|i| e[i]))
                    .expect("estimated column only requested in sampled mode");
                let x = if matches!(source, Source::Mean(_)) { est.mean } else { est.std_error };
                Cell::Num(x)
            }
        }
    }
}

/// Seed for the grid point `(θ, β⁻¹)`; depends on the point's values only, so
/// a point gets the same data whatever grid it belongs to.
pub fn point_seed(seed: u64, theta: MeasurementStrength, temperature: Temperature) -> u64 {
    derive_seed(seed, &[STREAM_GRID, theta.radians().to_bits(), temperature.beta_inv().to_bits()])
}

fn divergent_as_nan(r: Result<f64>) -> Result<f64> {
    match r {
        Err(Error::Divergent(_)) => Ok(f64::NAN),
        other => other,
    }
}

/// One Monte Carlo trial: the `ESTIMATED` quantities from simulated data.
fn sampled_trial(
    theta: MeasurementStrength,
    meter: &ThermalMeter,
    signal: &SignalState,
    sampling: SamplingConfig,
    go_info: f64,
    sub_seed: u64,
) -> Result<Vec<f64>> {
    let est = conditional_state_pipeline(
        theta,
        meter,
        signal,
        Sampling::Finite {
            n0: sampling.n0 as f64,
            shots: sampling.shots,
            seed: sub_seed,
        },
    )?;
    let p1 = est.p_hat[1];
    let s_irr = irreversible_entropy(meter);
    let values: Vec<f64> = ESTIMATED
        .iter()
        .map(|q| {
            Ok(match q {
                Quantity::P0 => est.p_hat[0],
                Quantity::P1 => p1,
                Quantity::Shannon => est.h_shannon,
                Quantity::TildeInfo => est.tilde_info,
                Quantity::Residual => est.residual_term,
                Quantity::Correlation => est.tilde_info - est.h_shannon,
                Quantity::WMeas => measurement_work(p1, meter),
                Quantity::DeltaF => divergent_as_nan(free_energy_change(p1, meter))?,
                Quantity::BoundGap => bound_gap(s_irr, est.tilde_info, go_info, est.h_shannon).revised,
                Quantity::WExtract => divergent_as_nan(extractable_work(est.h_shannon, meter.beta))?,
                _ => unreachable!("only estimated quantities are listed"),
            })
        })
        .collect::<Result<_>>()?;
    Ok(values)
}

fn evaluate_point(
    config: &SweepConfig,
    signal: &SignalState,
    theta: MeasurementStrength,
    temperature: Temperature,
) -> Result<Point> {
    let report = thermo_report(theta, temperature.beta(), config.hamiltonian, signal)?;
    let estimates = match (config.mode, config.sampling) {
        (Mode::Ideal, _) => None,
        (Mode::Sampled, Some(s)) => {
            let meter = gibbs(temperature.beta(), config.hamiltonian);
            let seed = point_seed(s.seed, theta, temperature);
            Some(monte_carlo_vector(s.resamples, seed, |sub| {
                sampled_trial(theta, &meter, signal, s, report.go_info, sub)
            })?)
        }
        (Mode::Sampled, None) => unreachable!("validated config"),
    };
    Ok(Point {
        theta,
        temperature,
        report,
        estimates,
    })
}

/// Evaluates the grid ordered by (β⁻¹, θ); grid points run in parallel.
fn evaluate_grid(config: &SweepConfig, temperatures: &[Temperature]) -> Result<Vec<(MeasurementStrength, Temperature, Result<Point>)>> {
    config.validate()?;
    let signal = config.signal.resolve()?;
    let thetas = config.theta.points()?;
    let grid: Vec<(MeasurementStrength, Temperature)> = temperatures
        .iter()
        .flat_map(|&t| thetas.iter().map(move |&th| (th, t)))
        .collect();
    Ok(grid
        .into_par_iter()
        .map(|(th, t)| (th, t, evaluate_point(config, &signal, th, t)))
        .collect())
}

fn metadata(command: &str, config: &SweepConfig, temperatures: &[Temperature]) -> Vec<(String, String)> {
    let mut m: Vec<(String, String)> = vec![
        ("command".into(), command.into()),
        ("mode".into(), config.mode.as_str().into()),
        ("signal".into(), config.signal.to_string()),
        ("theta_min".into(), number(config.theta.min)),
        ("theta_max".into(), number(config.theta.max)),
        ("theta_steps".into(), config.theta.steps.to_string()),
        (
            "beta_inv".into(),
            temperatures.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(";"),
        ),
        ("eps0".into(), number(config.hamiltonian.eps0())),
        ("eps1".into(), number(config.hamiltonian.eps1())),
        ("units".into(), "nats, k_B = 1".into()),
        ("is_zero_temperature".into(), "beta_inv = 0 marks T = 0 (beta = +inf)".into()),
    ];
    if let (Mode::Sampled, Some(s)) = (config.mode, config.sampling) {
        m.push(("n0".into(), s.n0.to_string()));
        m.push(("shots".into(), s.shots.to_string()));
        m.push(("resamples".into(), s.resamples.to_string()));
        m.push(("seed".into(), s.seed.to_string()));
        m.push(("rng_algorithm".into(), RNG_ALGORITHM.into()));
        let defaults = if config.defaulted.is_empty() {
            "none".to_string()
        } else {
            config.defaulted.join(";")
        };
        m.push(("defaults_applied".into(), defaults));
    }
    m
}

fn build_table(
    command: &str,
    config: &SweepConfig,
    temperatures: &[Temperature],
    columns: Vec<(String, Source)>,
) -> Result<Table> {
    let mut rows = Vec::new();
    let mut errors = Vec::new();
    for (theta, temperature, point) in evaluate_grid(config, temperatures)? {
        match point {
            Ok(p) => rows.push(Row {
                cells: columns.iter().map(|(_, s)| p.cell(*s)).collect(),
                is_zero_temperature: p.temperature.is_zero(),
            }),
            Err(e) => errors.push(RowError {
                theta: theta.radians(),
                beta_inv: temperature.to_string(),
                message: e.to_string(),
            }),
        }
    }
    Ok(Table {
        metadata: metadata(command, config, temperatures),
        columns: columns.into_iter().map(|(n, _)| n).collect(),
        rows,
        errors,
    })
}

fn with_errors(mode: Mode, quantities: &[Quantity]) -> Vec<(String, Source)> {
    let mut cols = Vec::new();
    for &q in quantities {
        if mode == Mode::Sampled && q.is_estimated() {
            cols.push((q.column_name().to_string(), Source::Mean(q)));
            cols.push((format!("{}_err", q.column_name()), Source::StdError(q)));
        } else {
            cols.push((q.column_name().to_string(), Source::Theory(q)));
        }
    }
    cols
}

/// One row per (θ, β⁻¹); in sampled mode estimated quantities are Monte Carlo
/// means with a `_err` column after each.
pub fn cmd_sweep(config: &SweepConfig) -> Result<Table> {
    let temperatures = config.sorted_temperatures();
    let mut columns = vec![
        ("theta_rad".to_string(), Source::Theta),
        ("beta_inv".to_string(), Source::BetaInv),
    ];
    columns.extend(with_errors(config.mode, &SWEEP_QUANTITIES));
    build_table("sweep", config, &temperatures, columns)
}

/// The T = 0 dataset: Shannon entropy, GO information and residual term
/// against θ. Configured temperatures are ignored. In sampled mode the
/// simulated values follow as `<name>_sampled` and `<name>_sampled_err`; at
/// T = 0 the sampled GO information is the estimate of Ĩ.
pub fn cmd_fig3(config: &SweepConfig) -> Result<Table> {
    let temperatures = [Temperature::ZERO];
    let plotted = [
        (Quantity::Shannon, Quantity::Shannon),
        (Quantity::GoInfo, Quantity::TildeInfo),
        (Quantity::Residual, Quantity::Residual),
    ];
    let mut columns = vec![("theta_rad".to_string(), Source::Theta)];
    for (q, _) in plotted {
        columns.push((q.column_name().to_string(), Source::Theory(q)));
    }
    if config.mode == Mode::Sampled {
        for (q, est) in plotted {
            columns.push((format!("{}_sampled", q.column_name()), Source::Mean(est)));
            columns.push((format!("{}_sampled_err", q.column_name()), Source::StdError(est)));
        }
    }
    build_table("fig3", config, &temperatures, columns)
}

/// Default temperature axis: β⁻¹ = 0, 0.25, …, 5.
pub fn fig4_default_temperatures() -> Vec<Temperature> {
    (0..21)
        .map(|i| Temperature::new(i as f64 * 0.25).expect("non-negative"))
        .collect()
}

/// Correlation term `Ĩ − H` and the bound gap over the (β⁻¹, θ) grid.
pub fn cmd_fig4(config: &SweepConfig) -> Result<Table> {
    let temperatures = config.sorted_temperatures();
    let mut columns = vec![
        ("theta_rad".to_string(), Source::Theta),
        ("beta_inv".to_string(), Source::BetaInv),
    ];
    columns.extend(with_errors(
        config.mode,
        &[
            Quantity::TildeInfo,
            Quantity::Shannon,
            Quantity::Correlation,
            Quantity::SIrr,
            Quantity::BoundGap,
        ],
    ));
    build_table("fig4", config, &temperatures, columns)
}

/// Runs the conditional-state pipeline at every grid point and prints the
/// reconstructed states next to the exact ones.
pub fn tomo_demo(config: &SweepConfig) -> Result<String> {
    use crate::measurement::build_kraus;
    use crate::thermo::ConditionalOutputState;

    config.validate()?;
    let signal = config.signal.resolve()?;
    let mut out = String::new();
    for temperature in config.sorted_temperatures() {
        let meter = gibbs(temperature.beta(), config.hamiltonian);
        for theta in config.theta.points()? {
            let sampling = match (config.mode, config.sampling) {
                (Mode::Sampled, Some(s)) => Sampling::Finite {
                    n0: s.n0 as f64,
                    shots: s.shots,
                    seed: point_seed(s.seed, theta, temperature),
                },
                _ => Sampling::Exact,
            };
            let est = conditional_state_pipeline(theta, &meter, &signal, sampling)?;
            let exact = ConditionalOutputState::new(&signal, &build_kraus(theta), &meter)?;
            out.push_str(&format!(
                "theta_rad={} beta_inv={} mode={}\n",
                number(theta.radians()),
                temperature,
                config.mode.as_str()
            ));
            for (k, label) in ["D", "A"].iter().enumerate() {
                out.push_str(&format!(
                    "  outcome {k} ({label}): p_hat={} p={}\n",
                    number(est.p_hat[k]),
                    number(exact.probability(k))
                ));
                match (&est.rho_hat[k], exact.normalized(k)) {
                    (Some(hat), Ok(truth)) => {
                        out.push_str(&format!("    rho_hat  = {}\n", super::format_matrix(hat.matrix())));
                        out.push_str(&format!("    rho_true = {}\n", super::format_matrix(truth.matrix())));
                        out.push_str(&format!(
                            "    max_abs_diff = {}\n",
                            number(hat.matrix().max_abs_diff(truth.matrix())?)
                        ));
                    }
                    _ => out.push_str("    outcome never occurs\n"),
                }
            }
            out.push_str(&format!(
                "  shannon_nats={} tilde_info_nats={} residual_nats={}\n",
                number(est.h_shannon),
                number(est.tilde_info),
                number(est.residual_term)
            ));
        }
    }
    Ok(out)
}
