use std::f64::consts::FRAC_PI_8;
use std::fmt;

use crate::error::{invalid, Result};
use crate::experiment::{DEFAULT_N0, DEFAULT_RESAMPLES, DEFAULT_SHOTS};
use crate::measurement::{MeasurementStrength, SignalState};
use crate::thermo::{Beta, MeterHamiltonian};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Ideal,
    Sampled,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Ideal => "ideal",
            Mode::Sampled => "sampled",
        }
    }
}

impl std::str::FromStr for Mode {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ideal" => Ok(Mode::Ideal),
            "sampled" => Ok(Mode::Sampled),
            other => Err(invalid!("mode must be 'ideal' or 'sampled', got '{other}'")),
        }
    }
}

/// Evenly spaced θ values, endpoints included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Default for ThetaGrid {
    fn default() -> Self {
        Self {
            min: 0.0,
            max: FRAC_PI_8,
            steps: 33,
        }
    }
}

impl ThetaGrid {
    pub fn points(&self) -> Result<Vec<MeasurementStrength>> {
        if self.steps == 0 {
            return Err(invalid!("θ grid is empty (steps = 0)"));
        }
        if self.min > self.max {
            return Err(invalid!("θ grid has min {} > max {}", self.min, self.max));
        }
        MeasurementStrength::new(self.min)?;
        MeasurementStrength::new(self.max)?;
        if self.steps == 1 {
            return Ok(vec![MeasurementStrength::new(self.min)?]);
        }
        let span = self.max - self.min;
        (0..self.steps)
            .map(|i| {
                let t = if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + span * i as f64 / (self.steps - 1) as f64
                };
                MeasurementStrength::new(t)
            })
            .collect()
    }
}

/// One temperature of the grid, as given by the user.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Temperature(Beta);

impl Temperature {
    pub const ZERO: Self = Self(Beta::Infinite);

    pub fn new(beta_inv: f64) -> Result<Self> {
        Ok(Self(Beta::from_temperature(beta_inv)?))
    }

    pub fn from_beta(beta: Beta) -> Self {
        Self(beta)
    }

    pub fn beta(self) -> Beta {
        self.0
    }

    pub fn beta_inv(self) -> f64 {
        self.0.temperature()
    }

    pub fn is_zero(self) -> bool {
        self.0.is_zero_temperature()
    }
}

impl std::str::FromStr for Temperature {
    type Err = crate::Error;

    /// Accepts a number ≥ 0, `zero` (T = 0, β = +∞) or `inf` (β = 0).
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "zero" | "0" => Ok(Self::ZERO),
            "inf" | "infinity" => Ok(Self(Beta::Finite(0.0))),
            other => {
                let t: f64 = other
                    .parse()
                    .map_err(|_| invalid!("cannot parse temperature '{other}'"))?;
                if !t.is_finite() {
                    return Err(invalid!("temperature '{other}' must be finite; use 'inf' for β = 0"));
                }
                Self::new(t)
            }
        }
    }
}

impl fmt::Display for Temperature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Beta::Infinite => write!(f, "0"),
            Beta::Finite(0.0) => write!(f, "inf"),
            _ => write!(f, "{}", super::format::number(self.beta_inv())),
        }
    }
}

/// Signal preparation: a named state or an explicit Bloch vector.
#[derive(Debug, Clone, PartialEq)]
pub enum SignalSpec {
    Named(String),
    Bloch([f64; 3]),
}

impl Default for SignalSpec {
    fn default() -> Self {
        SignalSpec::Named("D".into())
    }
}

impl SignalSpec {
    pub fn resolve(&self) -> Result<SignalState> {
        match self {
            SignalSpec::Named(n) => SignalState::named(n),
            SignalSpec::Bloch(r) => SignalState::from_bloch(*r),
        }
    }
}

impl std::str::FromStr for SignalSpec {
    type Err = crate::Error;

    /// A name (`D`, `H`, `mixed`, ...) or three comma-separated Bloch components.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.contains(',') {
            let parts: Vec<f64> = s
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| invalid!("cannot parse Bloch vector '{s}'"))?;
            let r: [f64; 3] = parts
                .try_into()
                .map_err(|_| invalid!("Bloch vector '{s}' needs three components"))?;
            let spec = SignalSpec::Bloch(r);
            spec.resolve()?;
            Ok(spec)
        } else {
            let spec = SignalSpec::Named(s.to_string());
            spec.resolve()?;
            Ok(spec)
        }
    }
}

impl fmt::Display for SignalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignalSpec::Named(n) => write!(f, "{n}"),
            SignalSpec::Bloch([x, y, z]) => write!(
                f,
                "{},{},{}",
                super::format::number(*x),
                super::format::number(*y),
                super::format::number(*z)
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SamplingConfig {
    pub n0: u64,
    pub shots: u64,
    pub resamples: usize,
    pub seed: u64,
}

impl SamplingConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self {
            n0: DEFAULT_N0,
            shots: DEFAULT_SHOTS,
            resamples: DEFAULT_RESAMPLES,
            seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub theta: ThetaGrid,
    pub temperatures: Vec<Temperature>,
    pub mode: Mode,
    /// Required in sampled mode.
    pub sampling: Option<SamplingConfig>,
    pub signal: SignalSpec,
    pub hamiltonian: MeterHamiltonian,
    /// Names of sampling parameters that fell back to built-in defaults.
    pub defaulted: Vec<String>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            theta: ThetaGrid::default(),
            temperatures: vec![Temperature::ZERO],
            mode: Mode::Ideal,
            sampling: None,
            signal: SignalSpec::default(),
            hamiltonian: MeterHamiltonian::default(),
            defaulted: Vec::new(),
        }
    }
}

impl SweepConfig {
    /// Checks the grid and the mode/sampling pairing.
    pub fn validate(&self) -> Result<()> {
        self.theta.points()?;
        self.signal.resolve()?;
        if self.temperatures.is_empty() {
            return Err(invalid!("temperature grid is empty"));
        }
        match (self.mode, &self.sampling) {
            (Mode::Sampled, None) => Err(invalid!("sampled mode needs n0, shots, resamples and seed")),
            (Mode::Sampled, Some(s)) => {
                if s.n0 == 0 || s.shots == 0 {
                    return Err(invalid!("n0 and shots must be positive"));
                }
                if s.resamples < 2 {
                    return Err(invalid!("resamples must be at least 2"));
                }
                Ok(())
            }
            (Mode::Ideal, _) => Ok(()),
        }
    }

    /// Temperatures in ascending order of β⁻¹.
    pub fn sorted_temperatures(&self) -> Vec<Temperature> {
        let mut t = self.temperatures.clone();
        t.sort_by(|a, b| a.beta_inv().total_cmp(&b.beta_inv()));
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_spans_full_range() {
        let pts = ThetaGrid::default().points().unwrap();
        assert_eq!(pts.len(), 33);
        assert_eq!(pts[0].radians(), 0.0);
        assert_eq!(pts[32].radians(), FRAC_PI_8);
    }

    #[test]
    fn grid_validation() {
        assert!(ThetaGrid { min: 0.0, max: 0.3, steps: 0 }.points().is_err());
        assert!(ThetaGrid { min: 0.3, max: 0.1, steps: 3 }.points().is_err());
        assert!(ThetaGrid { min: 0.0, max: 1.0, steps: 3 }.points().is_err());
        assert_eq!(ThetaGrid { min: 0.2, max: 0.3, steps: 1 }.points().unwrap().len(), 1);
    }

    #[test]
    fn temperature_tokens() {
        assert!("zero".parse::<Temperature>().unwrap().is_zero());
        assert!("0".parse::<Temperature>().unwrap().is_zero());
        assert_eq!("inf".parse::<Temperature>().unwrap().beta(), Beta::Finite(0.0));
        assert_eq!("2".parse::<Temperature>().unwrap().beta(), Beta::Finite(0.5));
        assert!("-1".parse::<Temperature>().is_err());
        assert!("warm".parse::<Temperature>().is_err());
        assert_eq!("0.25".parse::<Temperature>().unwrap().to_string(), "0.25");
        assert_eq!(Temperature::ZERO.to_string(), "0");
    }

    #[test]
    fn signal_tokens() {
        assert_eq!("D".parse::<SignalSpec>().unwrap(), SignalSpec::Named("D".into()));
        assert_eq!("0,0,1".parse::<SignalSpec>().unwrap(), SignalSpec::Bloch([0.0, 0.0, 1.0]));
        assert!("1,1,1".parse::<SignalSpec>().is_err());
        assert!("0,1".parse::<SignalSpec>().is_err());
        assert!("Z".parse::<SignalSpec>().is_err());
    }

    #[test]
    fn sampled_mode_requires_parameters() {
        let mut c = SweepConfig { mode: Mode::Sampled, ..Default::default() };
        assert!(c.validate().is_err());
        c.sampling = Some(SamplingConfig::with_seed(1));
        assert!(c.validate().is_ok());
        c.sampling = Some(SamplingConfig { resamples: 1, ..SamplingConfig::with_seed(1) });
        assert!(c.validate().is_err());
    }
}
