//! SNR sweep over all requested methods.

use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering};

use dastc_core::channel::ScenarioConfig;
use dastc_core::protocol::{block_count, run_block, BlockStats, GainMode};
use dastc_core::sumrate::{rho_from_db, rsum_closed, rsum_quadrature, Method};
use rayon::prelude::*;

use crate::config::Methods;
use crate::error::{ExperimentError, Result};

/// One grid point. `None` marks a cell that was not requested or that the
/// method could not produce; the latter is also listed in
/// [`ExperimentResult::unavailable`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Row {
    pub snr_db: f64,
    pub mc_mean: Option<f64>,
    pub mc_stderr: Option<f64>,
    pub closed_form: Option<f64>,
    pub quadrature: Option<f64>,
    pub oneway_mean: Option<f64>,
    pub oneway_stderr: Option<f64>,
    /// `mc_mean - oneway_mean`.
    pub gain: Option<f64>,
}

impl Row {
    pub fn empty(snr_db: f64) -> Row {
        Row {
            snr_db,
            mc_mean: None,
            mc_stderr: None,
            closed_form: None,
            quadrature: None,
            oneway_mean: None,
            oneway_stderr: None,
            gain: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Column {
    Mc,
    ClosedForm,
    Quadrature,
    Oneway,
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Column::Mc => "mc",
            Column::ClosedForm => "closed_form",
            Column::Quadrature => "quadrature",
            Column::Oneway => "oneway",
        })
    }
}

/// A requested cell the method refused or failed to compute.
#[derive(Debug, Clone, PartialEq)]
pub struct Unavailable {
    pub snr_db: f64,
    pub column: Column,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExperimentResult {
    /// Ascending in `snr_db`.
    pub rows: Vec<Row>,
    pub unavailable: Vec<Unavailable>,
}

impl ExperimentResult {
    /// True when every requested cell was filled.
    pub fn is_complete(&self) -> bool {
        self.unavailable.is_empty()
    }

    pub fn row_at(&self, snr_db: f64) -> Option<&Row> {
        self.rows.iter().find(|r| r.snr_db == snr_db)
    }
}

/// Sweep progress: finished and total work items.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Progress {
    pub done: usize,
    pub total: usize,
}

#[derive(Debug, Clone, Copy)]
enum Task {
    Closed(usize),
    Quadrature(usize),
    Block(usize, u64),
}

enum Output {
    Analytic(std::result::Result<f64, String>),
    Block(std::result::Result<BlockStats, String>),
}

pub fn run_experiment(config: &ScenarioConfig, methods: Methods) -> Result<ExperimentResult> {
    run_experiment_with_progress(config, methods, |_| {})
}

/// Evaluates every grid point in parallel. Monte-Carlo blocks are merged
/// in index order, so the result does not depend on the thread count.
pub fn run_experiment_with_progress<P>(
    config: &ScenarioConfig,
    methods: Methods,
    progress: P,
) -> Result<ExperimentResult>
where
    P: Fn(Progress) + Sync,
{
    if methods.is_empty() {
        return Err(ExperimentError::Config(
            "at least one method must be selected".into(),
        ));
    }
    let grid = config.snr_grid_db();
    let blocks = block_count(config.trials());

    // Analytic points first: they are the slowest items.
    let mut tasks = Vec::new();
    for point in 0..grid.len() {
        if methods.closed {
            tasks.push(Task::Closed(point));
        }
        if methods.quadrature {
            tasks.push(Task::Quadrature(point));
        }
    }
    if methods.needs_trials() {
        for point in 0..grid.len() {
            tasks.extend((0..blocks).map(|b| Task::Block(point, b)));
        }
    }

    let done = AtomicUsize::new(0);
    let total = tasks.len();
    let outputs: Vec<Output> = tasks
        .par_iter()
        .map(|task| {
            let out = match *task {
                Task::Closed(p) => Output::Analytic(closed_cell(config, grid[p])),
                Task::Quadrature(p) => Output::Analytic(
                    rsum_quadrature(config, rho_from_db(grid[p]))
                        .map(|b| b.rsum)
                        .map_err(|e| e.to_string()),
                ),
                Task::Block(p, b) => Output::Block(
                    run_block(config, rho_from_db(grid[p]), GainMode::Exact, b)
                        .map_err(|e| e.to_string()),
                ),
            };
            progress(Progress {
                done: done.fetch_add(1, Ordering::Relaxed) + 1,
                total,
            });
            out
        })
        .collect();

    let mut rows: Vec<Row> = grid.iter().map(|&s| Row::empty(s)).collect();
    let mut stats = vec![BlockStats::default(); grid.len()];
    let mut failures: Vec<Option<String>> = vec![None; grid.len()];
    let mut unavailable = Vec::new();
    for (task, output) in tasks.iter().zip(outputs) {
        match (*task, output) {
            (Task::Closed(p), Output::Analytic(v)) => match v {
                Ok(v) => rows[p].closed_form = Some(v),
                Err(reason) => unavailable.push(Unavailable {
                    snr_db: grid[p],
                    column: Column::ClosedForm,
                    reason,
                }),
            },
            (Task::Quadrature(p), Output::Analytic(v)) => match v {
                Ok(v) => rows[p].quadrature = Some(v),
                Err(reason) => unavailable.push(Unavailable {
                    snr_db: grid[p],
                    column: Column::Quadrature,
                    reason,
                }),
            },
            (Task::Block(p, _), Output::Block(v)) => match v {
                Ok(block) => stats[p].merge(&block),
                Err(reason) => {
                    failures[p].get_or_insert(reason);
                }
            },
            _ => unreachable!("task and output kinds always match"),
        }
    }

    if methods.needs_trials() {
        for (p, row) in rows.iter_mut().enumerate() {
            if let Some(reason) = failures[p].take() {
                for (wanted, column) in [(methods.mc, Column::Mc), (methods.oneway, Column::Oneway)]
                {
                    if wanted {
                        unavailable.push(Unavailable {
                            snr_db: grid[p],
                            column,
                            reason: reason.clone(),
                        });
                    }
                }
                continue;
            }
            let two = stats[p].two_way.estimate();
            let one = stats[p].one_way.estimate();
            if methods.mc {
                row.mc_mean = Some(two.mean);
                row.mc_stderr = Some(two.stderr);
            }
            if methods.oneway {
                row.oneway_mean = Some(one.mean);
                row.oneway_stderr = Some(one.stderr);
            }
            if methods.mc && methods.oneway {
                row.gain = Some(two.mean - one.mean);
            }
        }
    }

    unavailable.sort_by(|a, b| {
        a.snr_db
            .total_cmp(&b.snr_db)
            .then((a.column as u8).cmp(&(b.column as u8)))
    });
    Ok(ExperimentResult { rows, unavailable })
}

/// The closed-form cell holds only fully closed evaluations; a result that
/// needed quadrature for any term is reported as unavailable instead.
fn closed_cell(config: &ScenarioConfig, snr_db: f64) -> std::result::Result<f64, String> {
    match rsum_closed(config, rho_from_db(snr_db)) {
        Ok(b) if b.method == Method::Closed => Ok(b.rsum),
        Ok(_) => Err("closed form does not cover these mean powers".into()),
        Err(e) => Err(e.to_string()),
    }
}
