use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};

use clap::Parser;
use dastc_experiment::output::write_csv;
use dastc_experiment::run::Progress;
use dastc_experiment::{
    emit_csv, emit_plotdata, run_experiment_with_progress, Methods, Result, Scenario, Settings,
    SnrGrid,
};

/// Average sum-rate sweep for two-way relaying with a distributed Alamouti code.
///
/// Writes the result table as CSV to `--out`, or to standard output.
/// Exit status is 0 when every requested cell was computed, 2 when some
/// cells were unavailable and 1 on error.
#[derive(Debug, Parser)]
#[command(name = "dastc", version)]
struct Cli {
    /// key=value settings file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,

    /// symmetric (Ω = 1,1,1), colinear (Ω0 = 1, Ω1 = Ω2 = 16) or custom.
    #[arg(long)]
    scenario: Option<Scenario>,

    /// Mean power of the direct link (custom scenario).
    #[arg(long)]
    omega0: Option<f64>,

    /// Mean power of the source 1 to relay link (custom scenario).
    #[arg(long)]
    omega1: Option<f64>,

    /// Mean power of the source 2 to relay link (custom scenario).
    #[arg(long)]
    omega2: Option<f64>,

    /// SNR grid in dB as start:step:stop [default: 0:2:30].
    #[arg(long = "snr-db", allow_hyphen_values = true)]
    snr_db: Option<SnrGrid>,

    /// Monte-Carlo trials per grid point [default: 100000].
    #[arg(long)]
    trials: Option<u64>,

    /// Base seed [default: 0].
    #[arg(long)]
    seed: Option<u64>,

    /// Comma-separated subset of mc,closed,quadrature,oneway [default: all].
    #[arg(long)]
    methods: Option<Methods>,

    /// CSV output path.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Long-format plot table path.
    #[arg(long = "plot-data")]
    plot_data: Option<PathBuf>,

    /// Suppress progress on standard error.
    #[arg(long, short)]
    quiet: bool,
}

impl Cli {
    fn settings(&self) -> Settings {
        Settings {
            scenario: self.scenario,
            omega: [self.omega0, self.omega1, self.omega2],
            snr_db: self.snr_db,
            trials: self.trials,
            seed: self.seed,
            methods: self.methods,
            out: self.out.clone(),
            plot_data: self.plot_data.clone(),
        }
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let base = match &cli.config {
        Some(path) => Settings::load(path)?,
        None => Settings::default(),
    };
    let config = base.overlay(cli.settings()).resolve()?;
    let sc = &config.scenario_config;
    if !cli.quiet {
        eprintln!(
            "dastc: {} Ω={:?}, {} grid points, {} trials, seed {}, methods {}",
            config.scenario,
            sc.omega(),
            sc.snr_grid_db().len(),
            sc.trials(),
            sc.seed(),
            config.methods
        );
    }
    let last_pct = AtomicUsize::new(usize::MAX);
    let report = |p: Progress| {
        if cli.quiet {
            return;
        }
        let pct = p.done * 100 / p.total.max(1);
        if last_pct.swap(pct, Ordering::Relaxed) != pct {
            eprint!("\r{pct:3}% ({}/{})", p.done, p.total);
            if p.done == p.total {
                eprintln!();
            }
        }
    };
    let result = run_experiment_with_progress(sc, config.methods, report)?;
    for u in &result.unavailable {
        eprintln!(
            "dastc: {} at {} dB unavailable: {}",
            u.column, u.snr_db, u.reason
        );
    }
    match &config.out {
        Some(path) => emit_csv(&result, path)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_csv(&result, &mut lock, std::path::Path::new("<stdout>"))?;
            let _ = lock.flush();
        }
    }
    if let Some(path) = &config.plot_data {
        emit_plotdata(&result, path)?;
    }
    Ok(result.is_complete())
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which is reserved for partial results.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("dastc: {e}");
            ExitCode::FAILURE
        }
    }
}
