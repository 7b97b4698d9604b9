//! `rbnlab`: RBN sweeps over Werner, intercepted and thermal states.

mod commands;
mod error;
mod manifest;
mod table;

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use commands::{OutputArgs, SecurityArgs, StateRbnArgs, ThermalArgs, WernerSweepArgs};
use error::{CliError, CliResult};
use manifest::RunManifest;

#[derive(Parser, Debug)]
#[command(name = "rbnlab", version, about = "Realism-based nonlocality sweeps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// N_rb of a two-qubit state read from a JSON file.
    StateRbn(StateRbnArgs),
    /// Werner-state curves, optionally through a local noise channel.
    WernerSweep(WernerSweepArgs),
    /// Monte-Carlo runs of the Werner witness protocol.
    Security(SecurityArgs),
    /// RBN and global discord of the correlated thermal state over kT.
    Thermal(ThermalArgs),
    /// Re-run a command from its manifest.
    Replay(ReplayArgs),
}

#[derive(Args, Debug)]
struct ReplayArgs {
    manifest: PathBuf,
    /// Write here instead of the recorded output path.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn params<T: Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).expect("serializable arguments")
}

fn execute(cmd: Command) -> CliResult<()> {
    let start = Instant::now();
    let (name, seed, output, params, table) = match cmd {
        Command::StateRbn(mut a) => {
            let t = commands::state_rbn(&a)?;
            a.input = fs::canonicalize(&a.input)?;
            ("state-rbn", a.seed, a.output.clone(), params(&a), t)
        }
        Command::WernerSweep(a) => ("werner-sweep", a.seed, a.output.clone(), params(&a), commands::werner_sweep(&a)?),
        Command::Security(a) => ("security", a.seed, a.output.clone(), params(&a), commands::security(&a)?),
        Command::Thermal(a) => ("thermal", a.seed, a.output.clone(), params(&a), commands::thermal(&a)?),
        Command::Replay(r) => return replay(r),
    };
    let text = table.render(output.format);
    let OutputArgs { out: Some(path), .. } = output else {
        std::io::stdout().lock().write_all(text.as_bytes())?;
        return Ok(());
    };
    fs::write(&path, &text)?;
    let manifest = RunManifest {
        command: name.into(),
        params,
        seed,
        version: env!("CARGO_PKG_VERSION").into(),
        library_version: rbnlab::VERSION.into(),
        rng: rbnlab::random::RNG_ALGORITHM.into(),
        output: path.clone(),
        duration_seconds: start.elapsed().as_secs_f64(),
    };
    let mpath = manifest.write()?;
    eprintln!(
        "wrote {} ({} rows), manifest {}",
        path.display(),
        table.rows().len(),
        mpath.display()
    );
    Ok(())
}

fn replay(r: ReplayArgs) -> CliResult<()> {
    let m = RunManifest::read(&r.manifest)?;
    let out = r.out.unwrap_or_else(|| m.output.clone());
    let bad = |e: serde_json::Error| CliError::Parse {
        path: r.manifest.clone(),
        message: e.to_string(),
    };
    let mut params = m.params.clone();
    params["output"]["out"] = serde_json::to_value(&out).expect("path");
    let cmd = match m.command.as_str() {
        "state-rbn" => Command::StateRbn(serde_json::from_value(params).map_err(bad)?),
        "werner-sweep" => Command::WernerSweep(serde_json::from_value(params).map_err(bad)?),
        "security" => Command::Security(serde_json::from_value(params).map_err(bad)?),
        "thermal" => Command::Thermal(serde_json::from_value(params).map_err(bad)?),
        other => {
            return Err(CliError::Parse {
                path: r.manifest.clone(),
                message: format!("unknown command '{other}'"),
            })
        }
    };
    execute(cmd)
}

fn configure_threads() -> CliResult<()> {
    let Ok(v) = std::env::var("RBNLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| CliError::Flags(format!("RBNLAB_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Flags(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(4),
            };
        }
    };
    match configure_threads().and_then(|()| execute(cli.command)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("rbnlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
