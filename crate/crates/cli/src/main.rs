use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fso_capacity::capacity::{Method, Units};
use fso_capacity::channel::SnrSampler;
use fso_capacity::moments::{amount_of_fading, moment};
use fso_capacity_cli::{evaluate, format_point, run_sweep, CliError, Config};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Parser)]
#[command(name = "fsocap", version, about = "Ergodic capacity of FSO links under turbulence and pointing errors")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Capacity at one SNR or over a sweep.
    Capacity {
        #[command(subcommand)]
        mode: CapacityMode,
    },
    /// Closed-form SNR moment of order n at the configured SNR point.
    Moments {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        n: f64,
    },
    /// Raw instantaneous SNR draws, one per line.
    Sample {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum CapacityMode {
    /// Print one capacity value.
    Point {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_parser = parse_method)]
        engine: Method,
        #[arg(long, value_parser = parse_units, default_value = "nats")]
        units: Units,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Write a CSV table over the configured SNR grid.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse()
}

fn parse_units(s: &str) -> Result<Units, String> {
    s.parse()
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            source: e,
        })?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn io_error(path: Option<&Path>) -> impl Fn(io::Error) -> CliError + '_ {
    move |e| CliError::Io {
        path: path.map_or_else(|| "stdout".to_string(), |p| p.display().to_string()),
        source: e,
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Capacity {
            mode:
                CapacityMode::Point {
                    config,
                    engine,
                    units,
                    seed,
                },
        } => {
            let cfg = Config::from_path(&config)?;
            let sc = cfg.point_scenario()?;
            fso_capacity_cli::config::check_engine(engine, &cfg.template()?)
                .map_err(|m| CliError::Engine(fso_capacity::Error::Precondition(m)))?;
            let est = evaluate(&sc, engine, &cfg.mc, seed)?;
            println!("{}", format_point(&est, units));
        }
        Command::Capacity {
            mode: CapacityMode::Sweep { config, out },
        } => {
            let spec = Config::from_path(&config)?.sweep_spec()?;
            let mut w = sink(out.as_deref())?;
            let report = run_sweep(&spec, &mut w)?;
            w.flush().map_err(io_error(out.as_deref()))?;
            for warning in &report.warnings {
                eprintln!("warning: {warning}");
            }
        }
        Command::Moments { config, n } => {
            let sc = Config::from_path(&config)?.point_scenario()?;
            let value = moment(&sc, n)?;
            println!("E[gamma^{n}] = {}", fso_capacity_cli::sweep::sig9(value));
            if n.fract() == 0.0 && n >= 1.0 {
                println!("AF_{n} = {}", fso_capacity_cli::sweep::sig9(amount_of_fading(&sc, n as u32)?));
            }
        }
        Command::Sample {
            config,
            count,
            seed,
            out,
        } => {
            let sc = Config::from_path(&config)?.point_scenario()?;
            let sampler = SnrSampler::new(&sc)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut w = sink(out.as_deref())?;
            for _ in 0..count {
                writeln!(w, "{:e}", sampler.sample(&mut rng)).map_err(io_error(out.as_deref()))?;
            }
            w.flush().map_err(io_error(out.as_deref()))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
