use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use dtdd::harness::{run_experiment, ScenarioConfig, Scheme};
use dtdd::Error;

/// Frame-level dynamic TDD simulator.
#[derive(Debug, Parser)]
#[command(version, about)]
struct Cli {
    /// Scenario file (TOML). Built-in defaults are used when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// `c=start:stop:step` or `k=5,10,15`. May be repeated.
    #[arg(long)]
    sweep: Vec<String>,
    /// Comma-separated subset of sip,app,opt,stdd,switch.
    #[arg(long, value_delimiter = ',')]
    schemes: Option<Vec<Scheme>>,
    /// Number of seeds, 0..n.
    #[arg(long)]
    seeds: Option<u64>,
    /// Frames scored per seed.
    #[arg(long)]
    frames: Option<usize>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long)]
    dump_slots: bool,
    #[arg(long)]
    dump_eq: bool,
}

fn parse_range(range: &str) -> Result<Vec<f64>, Error> {
    let bad = || Error::InvalidConfig(format!("bad range {range:?}, expected start:stop:step"));
    let parts: Vec<f64> = range
        .split(':')
        .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [start, stop, step] = parts[..] else {
        return Err(bad());
    };
    if step <= 0.0 || stop < start {
        return Err(bad());
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9).collect())
}

fn apply(cli: &Cli, cfg: &mut ScenarioConfig) -> Result<(), Error> {
    for sweep in &cli.sweep {
        match sweep.split_once('=') {
            Some(("c", range)) => cfg.c_values = parse_range(range)?,
            Some(("k", list)) => {
                cfg.k_values = list
                    .split(',')
                    .map(|s| s.trim().parse().map_err(|_| Error::InvalidConfig(format!("bad K {s:?}"))))
                    .collect::<Result<_, _>>()?
            }
            _ => return Err(Error::InvalidConfig(format!("unknown sweep {sweep:?}"))),
        }
    }
    if let Some(s) = &cli.schemes {
        cfg.schemes = s.clone();
    }
    if let Some(n) = cli.seeds {
        cfg.seeds = (0..n).collect();
    }
    if let Some(f) = cli.frames {
        cfg.frames = f;
    }
    cfg.dump_slots |= cli.dump_slots;
    cfg.dump_equilibria |= cli.dump_eq;
    cfg.validate()
}

fn run(cli: Cli) -> Result<(), Error> {
    let mut cfg = match &cli.config {
        Some(path) => ScenarioConfig::from_path(path)?,
        None => ScenarioConfig::default(),
    };
    apply(&cli, &mut cfg)?;
    let result = run_experiment(&cfg)?;
    result.write_dir(&cli.out)?;
    for r in &result.records {
        println!(
            "seed={} scheme={} c={} k={} wsr={:.4}",
            r.seed, r.scheme, r.c, r.k, r.avg_network_wsr
        );
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
