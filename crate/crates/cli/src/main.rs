//! Batch front-end for NESS computations on two coupled damped oscillators:
//! deterministic parameter sweeps, seeded random sampling of the
//! correlation/irreversibility planes, optomechanical detuning scans, and
//! relaxation trajectories. See `recipes/` for ready-made run configs.

mod commands;
mod config;
mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::RunError;
use config::Settings;
use output::{Format, Table};

#[derive(Parser)]
#[command(name = "ness", version, about = "Steady states of coupled damped quantum oscillators")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run configuration file (key = value lines).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Individual setting overrides, applied after the config file.
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    overrides: Vec<String>,

    /// Output path; stdout when omitted. Runs producing several tables
    /// append a suffix before the extension for the extra files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,

    /// Seed for the random subcommand's generator (overrides the config).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Worker-thread count; defaults to the machine parallelism.
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Print the output schema of the chosen subcommand and exit.
    #[arg(long, global = true)]
    schema: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep one oscillator parameter over a linear grid.
    Sweep,
    /// Sample random steady states and emit the scatter plus bound curves.
    Random,
    /// Scan the optomechanical detuning or coupling.
    Optomech,
    /// Integrate a relaxation trajectory and its entropy balance.
    Trajectory,
}

fn schema_text(command: &Command) -> String {
    let (name, cols): (&str, &[&str]) = match command {
        Command::Sweep => ("sweep", commands::SWEEP_COLUMNS),
        Command::Random => ("random", commands::SCATTER_COLUMNS),
        Command::Optomech => ("optomech", commands::OPTOMECH_COLUMNS),
        Command::Trajectory => ("trajectory", commands::TRAJECTORY_COLUMNS),
    };
    let mut text = format!("{name}: {}\n", cols.join(","));
    if matches!(command, Command::Random) {
        text.push_str(&format!("random (curves file): {}\n", commands::CURVE_COLUMNS.join(",")));
    }
    text.push_str(
        "floats: 17 significant digits; booleans: 0/1; missing values empty (unstable points)\n",
    );
    text
}

fn suffixed_path(base: &Path, suffix: &str) -> PathBuf {
    if suffix.is_empty() {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = base.extension().and_then(|s| s.to_str());
    let name = match ext {
        Some(ext) => format!("{stem}.{suffix}.{ext}"),
        None => format!("{stem}.{suffix}"),
    };
    base.with_file_name(name)
}

fn write_tables(
    tables: &[(String, Table)],
    out: Option<&Path>,
    format: Format,
) -> std::io::Result<()> {
    match out {
        Some(path) => {
            for (suffix, table) in tables {
                let mut file = std::fs::File::create(suffixed_path(path, suffix))?;
                table.write(format, &mut file)?;
            }
        }
        None => {
            let stdout = std::io::stdout();
            for (_, table) in tables {
                table.write(format, &mut stdout.lock())?;
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), ExitCode> {
    let fail = |code: u8, msg: String| {
        eprintln!("ness: {msg}");
        ExitCode::from(code)
    };
    let run_err = |e: RunError| {
        let code = match e {
            RunError::Usage(_) => 2,
            RunError::Numerical(_) => 3,
        };
        fail(code, e.to_string())
    };

    if cli.schema {
        print!("{}", schema_text(&cli.command));
        return Ok(());
    }

    if let Some(workers) = cli.workers {
        rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
            .map_err(|e| fail(2, format!("worker pool: {e}")))?;
    }

    let mut settings = match &cli.config {
        Some(path) => match Settings::from_file(path) {
            Err(io) => return Err(fail(4, format!("{}: {io}", path.display()))),
            Ok(Err(parse)) => return Err(fail(2, format!("{}: {parse}", path.display()))),
            Ok(Ok(s)) => s,
        },
        None => Settings::default(),
    };
    settings.apply_overrides(&cli.overrides).map_err(|e| fail(2, e.to_string()))?;

    let seed = match cli.seed {
        Some(s) => s,
        None => settings
            .get("seed")
            .map(|v| v.parse().map_err(|_| fail(2, "seed is not a u64".into())))
            .transpose()?
            .unwrap_or(0),
    };

    let tables = match cli.command {
        Command::Sweep => commands::run_sweep(&settings),
        Command::Random => commands::run_random(&settings, seed),
        Command::Optomech => commands::run_optomech(&settings),
        Command::Trajectory => commands::run_trajectory(&settings),
    }
    .map_err(run_err)?;

    if tables.len() > 1 && cli.out.is_none() {
        return Err(fail(2, "this run produces several tables; --out is required".into()));
    }
    write_tables(&tables, cli.out.as_deref(), cli.format)
        .map_err(|e| fail(4, format!("writing output: {e}")))
}

fn main() -> ExitCode {
    match run(&Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(code) => code,
    }
}
