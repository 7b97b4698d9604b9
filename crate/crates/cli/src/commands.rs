//! Subcommand arguments and the tables they produce.

use std::fs;
use std::path::{Path, PathBuf};

use clap::Args;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use rbnlab::channels::{apply_local, ChannelKind, KrausChannel};
use rbnlab::correlations::{concurrence, rbn, werner_rbn_closed_form, OptimizerConfig};
use rbnlab::matcore::{ComplexMatrix, DensityMatrix, Subsystem, C64};
use rbnlab::random::substream;
use rbnlab::security::{rbn_after_eve_analytic, simulate_protocol, ProtocolConfig, Scenario};
use rbnlab::states::werner;
use rbnlab::thermal::{thermal_noise_sweep, thermal_sweep};

use crate::error::{CliError, CliResult};
use crate::table::{Cell, Format, Table};

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputArgs {
    /// Output file; stdout when omitted (no manifest is written then).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizerArgs {
    /// Coarse grid points per angle.
    #[arg(long, default_value_t = 12)]
    pub grid: usize,
    /// Grid cells refined by Nelder–Mead.
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 20_000)]
    pub max_evals: usize,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
}

impl OptimizerArgs {
    fn config(&self, seed: u64) -> CliResult<OptimizerConfig> {
        let cfg = OptimizerConfig {
            coarse_grid_per_angle: self.grid,
            restarts: self.restarts,
            refine_tolerance: self.tol,
            max_evals: self.max_evals,
            seed,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

fn parse_channel(s: &str) -> Result<String, String> {
    if s.eq_ignore_ascii_case("none") {
        return Ok("none".into());
    }
    s.parse::<ChannelKind>()
        .map(|k| k.code().to_string())
        .map_err(|e| e.to_string())
}

fn parse_scenario(s: &str) -> Result<String, String> {
    s.parse::<Scenario>().map(|sc| sc.name().to_string())
}

fn channel_kind(name: &str) -> CliResult<Option<ChannelKind>> {
    if name == "none" {
        Ok(None)
    } else {
        name.parse().map(Some).map_err(CliError::from)
    }
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRbnArgs {
    /// JSON state file: {"dims": [dA, dB], "matrix": [[[re, im], ...], ...]}.
    pub input: PathBuf,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WernerSweepArgs {
    /// Points on the μ grid over [0, 1].
    #[arg(long, default_value_t = 101)]
    pub mu_steps: usize,
    /// none, IB, IF, IBF, DP or AD.
    #[arg(long, default_value = "none", value_parser = parse_channel)]
    pub channel: String,
    /// Fixed channel strength; drawn per sample when omitted.
    #[arg(long)]
    pub p: Option<f64>,
    /// Fixed damping strength for AD; drawn per sample when omitted.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Random (μ, p, γ) draws when a parameter is left free.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecurityArgs {
    /// ideal, eve-random or eve-aligned.
    #[arg(long, default_value = "ideal", value_parser = parse_scenario)]
    pub scenario: String,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThermalArgs {
    /// Level splittings, comma separated.
    #[arg(long = "E", value_delimiter = ',', default_values_t = [1.0, 2.0, 3.0])]
    pub energies: Vec<f64>,
    #[arg(long, default_value_t = 0.1)]
    pub kt_min: f64,
    #[arg(long, default_value_t = 20.0)]
    pub kt_max: f64,
    /// Points on the linear kT grid.
    #[arg(long, default_value_t = 40)]
    pub steps: usize,
    /// none, IB, IF, IBF, DP or AD, applied to the second qubit.
    #[arg(long, default_value = "none", value_parser = parse_channel)]
    pub channel: String,
    /// Channel strengths, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub p: Vec<f64>,
    /// AD damping strengths, comma separated; crossed with --p.
    #[arg(long, value_delimiter = ',')]
    pub gamma: Vec<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub optimizer: OptimizerArgs,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Deserialize)]
struct StateFile {
    dims: [usize; 2],
    matrix: Vec<Vec<[f64; 2]>>,
}

/// Reads a state file. Malformed JSON or ragged rows are parse errors;
/// anything that fails density-matrix validation is an invalid state.
pub fn load_state(path: &Path) -> CliResult<DensityMatrix> {
    let parse_err = |message: String| CliError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let text = fs::read_to_string(path)?;
    let file: StateFile = serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?;
    let rows: Vec<Vec<C64>> = file
        .matrix
        .iter()
        .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect();
    let m = ComplexMatrix::from_rows(&rows).map_err(|e| parse_err(e.to_string()))?;
    DensityMatrix::new(file.dims[0], file.dims[1], m).map_err(CliError::InvalidState)
}

pub fn state_rbn(args: &StateRbnArgs) -> CliResult<Table> {
    let rho = load_state(&args.input)?;
    let cfg = args.optimizer.config(args.seed)?;
    let res = rbn(&rho, &cfg).map_err(CliError::InvalidState)?;
    let mut t = Table::new(&[
        "rbn",
        "theta_a",
        "phi_a",
        "theta_b",
        "phi_b",
        "evaluations",
        "converged",
    ]);
    t.push(vec![
        res.value.into(),
        res.angles_a.theta.into(),
        res.angles_a.phi.into(),
        res.angles_b.theta.into(),
        res.angles_b.phi.into(),
        res.evaluations.into(),
        res.converged.into(),
    ]);
    Ok(t)
}

pub const WERNER_COLUMNS: [&str; 8] = [
    "series",
    "mu",
    "p",
    "gamma",
    "rbn_analytic",
    "rbn_numeric",
    "concurrence",
    "rbn_noisy",
];

fn noisy_rbn(channel: &KrausChannel, mu: f64, cfg: &OptimizerConfig) -> CliResult<f64> {
    let rho = apply_local(channel, &werner(mu)?, Subsystem::B)?;
    Ok(rbn(&rho, cfg)?.value)
}

/// Noiseless curve, separability marker and, for a channel, either a fixed
/// parameter curve or a random scatter over the free parameters.
pub fn werner_sweep(args: &WernerSweepArgs) -> CliResult<Table> {
    if args.mu_steps < 2 {
        return Err(CliError::Flags("--mu-steps must be >= 2".into()));
    }
    let cfg = args.optimizer.config(args.seed)?;
    let kind = channel_kind(&args.channel)?;
    if kind.is_none() && (args.p.is_some() || args.gamma.is_some()) {
        return Err(CliError::Flags("--p/--gamma need --channel".into()));
    }
    if let Some(k) = kind {
        if !k.uses_gamma() && args.gamma.is_some() {
            return Err(CliError::Flags(format!("--gamma has no meaning for {}", k.code())));
        }
    }
    let n = args.mu_steps;
    let mus: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();

    let mut t = Table::new(&WERNER_COLUMNS);
    let clean: Vec<(f64, f64, f64)> = mus
        .par_iter()
        .map(|&mu| -> CliResult<(f64, f64, f64)> {
            let rho = werner(mu)?;
            Ok((werner_rbn_closed_form(mu)?, rbn(&rho, &cfg)?.value, concurrence(&rho)?))
        })
        .collect::<CliResult<_>>()?;
    for (&mu, &(analytic, numeric, c)) in mus.iter().zip(&clean) {
        t.push(vec![
            "noiseless".into(),
            mu.into(),
            Cell::Empty,
            Cell::Empty,
            analytic.into(),
            numeric.into(),
            c.into(),
            Cell::Empty,
        ]);
    }
    t.push(vec![
        "separability".into(),
        (1.0 / 3.0).into(),
        Cell::Empty,
        Cell::Empty,
        werner_rbn_closed_form(1.0 / 3.0)?.into(),
        Cell::Empty,
        0.0.into(),
        Cell::Empty,
    ]);

    let Some(kind) = kind else {
        return Ok(t);
    };
    let gamma_fixed = !kind.uses_gamma() || args.gamma.is_some();
    if let (Some(p), true) = (args.p, gamma_fixed) {
        let channel = KrausChannel::from_kind(kind, p, args.gamma)?;
        let noisy: Vec<f64> = mus
            .par_iter()
            .map(|&mu| noisy_rbn(&channel, mu, &cfg))
            .collect::<CliResult<_>>()?;
        for ((&mu, &(analytic, _, _)), &v) in mus.iter().zip(&clean).zip(&noisy) {
            t.push(vec![
                "noisy".into(),
                mu.into(),
                p.into(),
                channel.gamma().into(),
                analytic.into(),
                Cell::Empty,
                Cell::Empty,
                v.into(),
            ]);
        }
    } else {
        let rows: Vec<Vec<Cell>> = (0..args.samples)
            .into_par_iter()
            .map(|i| -> CliResult<Vec<Cell>> {
                let mut rng = substream(args.seed, i as u64);
                let mu: f64 = rng.gen_range(0.0..=1.0);
                let p = args.p.unwrap_or_else(|| rng.gen_range(0.0..=1.0));
                let gamma = if kind.uses_gamma() {
                    Some(args.gamma.unwrap_or_else(|| rng.gen_range(0.0..=1.0)))
                } else {
                    None
                };
                let channel = KrausChannel::from_kind(kind, p, gamma)?;
                Ok(vec![
                    "scatter".into(),
                    mu.into(),
                    p.into(),
                    gamma.into(),
                    werner_rbn_closed_form(mu)?.into(),
                    Cell::Empty,
                    Cell::Empty,
                    noisy_rbn(&channel, mu, &cfg)?.into(),
                ])
            })
            .collect::<CliResult<_>>()?;
        for row in rows {
            t.push(row);
        }
    }
    Ok(t)
}

pub const SECURITY_COLUMNS: [&str; 11] = [
    "mu",
    "kind",
    "theta_a",
    "phi_a",
    "theta_b",
    "phi_b",
    "theta_e",
    "phi_e",
    "eta",
    "envelope_ideal",
    "envelope_eve",
];

pub fn security(args: &SecurityArgs) -> CliResult<Table> {
    let scenario: Scenario = args.scenario.parse().map_err(CliError::Flags)?;
    let records = simulate_protocol(&ProtocolConfig::new(scenario, args.samples, args.seed))?;
    let mut t = Table::new(&SECURITY_COLUMNS);
    for r in records {
        t.push(vec![
            r.mu.into(),
            r.kind.name().into(),
            r.alice.theta.into(),
            r.alice.phi.into(),
            r.bob.theta.into(),
            r.bob.phi.into(),
            r.eve.map(|e| e.theta).into(),
            r.eve.map(|e| e.phi).into(),
            r.eta.into(),
            werner_rbn_closed_form(r.mu)?.into(),
            rbn_after_eve_analytic(r.mu)?.into(),
        ]);
    }
    Ok(t)
}

pub const THERMAL_COLUMNS: [&str; 7] = ["E", "kT", "q", "rbn", "eta_xx", "eta_zz", "gd"];
pub const THERMAL_NOISE_COLUMNS: [&str; 11] = [
    "E", "kT", "q", "rbn", "eta_xx", "eta_zz", "gd", "channel", "p", "gamma", "rbn_noisy",
];

pub fn kt_grid(min: f64, max: f64, steps: usize) -> CliResult<Vec<f64>> {
    if steps == 0 || !(min > 0.0) || !(max >= min) {
        return Err(CliError::Flags("need steps >= 1 and 0 < kt-min <= kt-max".into()));
    }
    if steps == 1 {
        return Ok(vec![min]);
    }
    Ok((0..steps)
        .map(|i| min + (max - min) * i as f64 / (steps - 1) as f64)
        .collect())
}

pub fn thermal(args: &ThermalArgs) -> CliResult<Table> {
    if args.energies.is_empty() {
        return Err(CliError::Flags("--E needs at least one value".into()));
    }
    let cfg = args.optimizer.config(args.seed)?;
    let kts = kt_grid(args.kt_min, args.kt_max, args.steps)?;
    let Some(kind) = channel_kind(&args.channel)? else {
        if !args.p.is_empty() || !args.gamma.is_empty() {
            return Err(CliError::Flags("--p/--gamma need --channel".into()));
        }
        let mut t = Table::new(&THERMAL_COLUMNS);
        for r in thermal_sweep(&args.energies, &kts, &cfg)? {
            t.push(vec![
                r.energy.into(),
                r.kt.into(),
                r.q.into(),
                r.rbn.into(),
                r.eta_xx.into(),
                r.eta_zz.into(),
                r.gd.into(),
            ]);
        }
        return Ok(t);
    };
    if args.p.is_empty() {
        return Err(CliError::Flags(format!("--channel {} needs --p", kind.code())));
    }
    let pairs: Vec<(f64, Option<f64>)> = if kind.uses_gamma() {
        if args.gamma.is_empty() {
            return Err(CliError::Flags("--channel AD needs --gamma".into()));
        }
        args.p
            .iter()
            .flat_map(|&p| args.gamma.iter().map(move |&g| (p, Some(g))))
            .collect()
    } else {
        if !args.gamma.is_empty() {
            return Err(CliError::Flags(format!("--gamma has no meaning for {}", kind.code())));
        }
        args.p.iter().map(|&p| (p, None)).collect()
    };
    let mut t = Table::new(&THERMAL_NOISE_COLUMNS);
    for &e in &args.energies {
        for r in thermal_noise_sweep(e, &kts, kind, &pairs, &cfg)? {
            let c = r.clean;
            t.push(vec![
                c.energy.into(),
                c.kt.into(),
                c.q.into(),
                c.rbn.into(),
                c.eta_xx.into(),
                c.eta_zz.into(),
                c.gd.into(),
                r.channel.code().into(),
                r.p.into(),
                r.gamma.into(),
                r.rbn_noisy.into(),
            ]);
        }
    }
    Ok(t)
}
