use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use infotherm_core::experiment::{DEFAULT_N0, DEFAULT_RESAMPLES, DEFAULT_SHOTS};
use infotherm_core::sweep::{Mode, SamplingConfig, SignalSpec, SweepConfig, Temperature, ThetaGrid};

#[derive(Debug, Parser)]
#[command(name = "infotherm", version, about = "Thermodynamics of variable-strength qubit measurements")]
pub struct Cli {
    /// Worker threads for grid and Monte Carlo evaluation (output does not depend on it).
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full table over the (β⁻¹, θ) grid.
    Sweep(GridArgs),
    /// T = 0 dataset: Shannon entropy, GO information and residual term against θ.
    Fig3(GridArgs),
    /// Correlation term Ĩ − H and bound gap over (β⁻¹, θ).
    Fig4(GridArgs),
    /// Self-check of the gate model and the measurement circuit.
    GateCheck(GateArgs),
    /// Runs the conditional-state pipeline and prints reconstructed matrices.
    TomoDemo(GridArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Default, Args)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub theta_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub theta_max: Option<f64>,
    #[arg(long)]
    pub theta_steps: Option<usize>,
    /// Temperature β⁻¹ ≥ 0; `zero` or 0 for T = 0, `inf` for β = 0. Repeatable.
    #[arg(long = "beta-inv", allow_hyphen_values = true)]
    pub beta_inv: Vec<String>,
    /// ideal or sampled.
    #[arg(long)]
    pub mode: Option<String>,
    #[arg(long)]
    pub n0: Option<u64>,
    /// Tomography shots per Pauli axis.
    #[arg(long)]
    pub shots: Option<u64>,
    #[arg(long)]
    pub resamples: Option<usize>,
    /// Required in sampled mode.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Named state (H, V, D, A, R, L, mixed) or Bloch vector `x,y,z`.
    #[arg(long, allow_hyphen_values = true)]
    pub signal: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Plain-text `key=value` file; flags override its values.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GateArgs {
    /// Number of θ points for the measurement checks.
    #[arg(long, default_value_t = 1000)]
    pub theta_steps: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Adds this amplitude to the gate's VV→HH entry (negative control).
    #[arg(long, hide = true, allow_hyphen_values = true)]
    pub perturb: Option<f64>,
}

const CONFIG_KEYS: [&str; 12] = [
    "theta-min",
    "theta-max",
    "theta-steps",
    "beta-inv",
    "mode",
    "n0",
    "shots",
    "resamples",
    "seed",
    "signal",
    "out",
    "format",
];

/// Reads `key=value` lines; `#` starts a comment, `_` and `-` are interchangeable in keys.
pub fn parse_config_file(text: &str) -> Result<BTreeMap<String, String>, String> {
    let mut map = BTreeMap::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key=value", n + 1))?;
        let key = k.trim().replace('_', "-");
        if !CONFIG_KEYS.contains(&key.as_str()) {
            return Err(format!("config line {}: unknown key '{}'", n + 1, k.trim()));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e| format!("{key}: cannot parse '{value}': {e}"))
}

/// Fully resolved options for a grid command.
#[derive(Debug)]
pub struct Resolved {
    pub config: SweepConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
    /// True when no temperature was given anywhere.
    pub default_temperatures: bool,
}

fn read_config(path: &Path) -> Result<BTreeMap<String, String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    parse_config_file(&text)
}

/// Merges the config file (if any) under the flags and builds a [`SweepConfig`].
pub fn resolve(args: &GridArgs) -> Result<Resolved, String> {
    let file = match &args.config {
        Some(p) => read_config(p)?,
        None => BTreeMap::new(),
    };
    let pick = |flag: Option<String>, key: &str| flag.or_else(|| file.get(key).cloned());

    let mut theta = ThetaGrid::default();
    if let Some(v) = pick(args.theta_min.map(|x| x.to_string()), "theta-min") {
        theta.min = parse_value("theta-min", &v)?;
    }
    if let Some(v) = pick(args.theta_max.map(|x| x.to_string()), "theta-max") {
        theta.max = parse_value("theta-max", &v)?;
    }
    if let Some(v) = pick(args.theta_steps.map(|x| x.to_string()), "theta-steps") {
        theta.steps = parse_value("theta-steps", &v)?;
    }

    let tokens: Vec<String> = if !args.beta_inv.is_empty() {
        args.beta_inv.clone()
    } else if let Some(list) = file.get("beta-inv") {
        list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
    } else {
        Vec::new()
    };
    let default_temperatures = tokens.is_empty();
    let temperatures = if default_temperatures {
        vec![Temperature::ZERO]
    } else {
        tokens
            .iter()
            .map(|t| parse_value::<Temperature>("beta-inv", t))
            .collect::<Result<_, _>>()?
    };

    let mode: Mode = match pick(args.mode.clone(), "mode") {
        Some(v) => parse_value("mode", &v)?,
        None => Mode::Ideal,
    };
    let signal: SignalSpec = match pick(args.signal.clone(), "signal") {
        Some(v) => parse_value("signal", &v)?,
        None => SignalSpec::default(),
    };

    let mut defaulted = Vec::new();
    let mut numeric = |flag: Option<u64>, key: &str, default: u64| -> Result<u64, String> {
        match pick(flag.map(|x| x.to_string()), key) {
            Some(v) => parse_value(key, &v),
            None => {
                defaulted.push(key.to_string());
                Ok(default)
            }
        }
    };
    let n0 = numeric(args.n0, "n0", DEFAULT_N0)?;
    let shots = numeric(args.shots, "shots", DEFAULT_SHOTS)?;
    let resamples = numeric(args.resamples.map(|r| r as u64), "resamples", DEFAULT_RESAMPLES as u64)?;
    let seed = match pick(args.seed.map(|x| x.to_string()), "seed") {
        Some(v) => Some(parse_value::<u64>("seed", &v)?),
        None => None,
    };

    let sampling = match mode {
        Mode::Ideal => None,
        Mode::Sampled => {
            let seed = seed.ok_or("sampled mode requires --seed")?;
            Some(SamplingConfig {
                n0,
                shots,
                resamples: resamples as usize,
                seed,
            })
        }
    };
    if mode == Mode::Ideal {
        defaulted.clear();
    }

    let format = match (args.format, file.get("format")) {
        (Some(f), _) => f,
        (None, Some(v)) => Format::from_str(v, true).map_err(|_| format!("format: expected csv or json, got '{v}'"))?,
        (None, None) => Format::Csv,
    };
    let out = args.out.clone().or_else(|| file.get("out").map(PathBuf::from));

    let config = SweepConfig {
        theta,
        temperatures,
        mode,
        sampling,
        signal,
        defaulted,
        ..Default::default()
    };
    config.validate().map_err(|e| e.to_string())?;
    Ok(Resolved {
        config,
        out,
        format,
        default_temperatures,
    })
}
