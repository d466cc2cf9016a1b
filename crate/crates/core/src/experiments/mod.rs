//! Scenario configuration, dataset ingestion, scenario runners and result
//! persistence.
//!
//! Every trial draws its seed from `(master_seed, scenario tag, grid index,
//! trial index)`, and rows are emitted in grid-then-trial order, so output is
//! byte-identical for identical configs whatever the thread count.

mod concentration;
mod crossover;
mod dataset;
mod density;
mod gap;
mod output;
mod table1;
mod weighted;

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{derive_seed, tag};

pub use concentration::{run_concentration_scaling, ConcentrationConfig, ConcentrationRow};
pub use crossover::{run_tradeoff_crossover, CrossoverConfig, CrossoverReport, CrossoverRow, CrossoverSummary};
pub use dataset::{
    encode_labels, ingest_edge_list, ingest_gml, largest_component, read_edge_pairs, read_label_file,
    Dataset, DatasetSpec, IngestOptions,
};
pub use density::{run_sbm_triangle_density, DensityConfig, DensityRow};
pub use gap::{run_misclustering_vs_gap, GapConfig, GapRow};
pub use output::{render_rows, sibling_path, Format, RenderedTable};
pub use table1::{run_table1, table1_for_datasets, Table1Config, Table1Detail, Table1Report, Table1Row};
pub use weighted::{run_weighted_sweep, WeightedConfig, WeightedRow};

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "MOTIFSPECTRA_THREADS";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub master_seed: u64,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default)]
    pub output_path: Option<String>,
    #[serde(flatten)]
    pub scenario: Scenario,
}

fn default_trials() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "scenario", rename_all = "snake_case")]
pub enum Scenario {
    Table1(Table1Config),
    ConcentrationScaling(ConcentrationConfig),
    MisclusteringVsGap(GapConfig),
    TradeoffCrossover(CrossoverConfig),
    WeightedSweep(WeightedConfig),
    SbmTriangleDensity(DensityConfig),
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Table1(_) => "table1",
            Scenario::ConcentrationScaling(_) => "concentration_scaling",
            Scenario::MisclusteringVsGap(_) => "misclustering_vs_gap",
            Scenario::TradeoffCrossover(_) => "tradeoff_crossover",
            Scenario::WeightedSweep(_) => "weighted_sweep",
            Scenario::SbmTriangleDensity(_) => "sbm_triangle_density",
        }
    }
}

impl ScenarioConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParams("trials must be at least 1".into()));
        }
        let empty = match &self.scenario {
            Scenario::Table1(c) => c.datasets.is_empty(),
            Scenario::ConcentrationScaling(c) => c.n_values.is_empty(),
            Scenario::MisclusteringVsGap(c) => c.gaps.is_empty(),
            Scenario::TradeoffCrossover(c) => c.deltas.is_empty(),
            Scenario::WeightedSweep(c) => c.weights.is_empty(),
            Scenario::SbmTriangleDensity(c) => c.a_e_values.is_empty(),
        };
        if empty {
            return Err(Error::InvalidParams(format!("{} grid is empty", self.scenario.name())));
        }
        Ok(())
    }
}

/// Result of one scenario run.
#[derive(Clone, Debug)]
pub enum ScenarioOutput {
    Table1(Table1Report),
    ConcentrationScaling(Vec<ConcentrationRow>),
    MisclusteringVsGap(Vec<GapRow>),
    TradeoffCrossover(CrossoverReport),
    WeightedSweep(Vec<WeightedRow>),
    SbmTriangleDensity(Vec<DensityRow>),
}

impl ScenarioOutput {
    /// The main table first, then auxiliary tables with their file suffixes.
    pub fn render(&self, format: Format) -> Result<Vec<RenderedTable>> {
        let main = |bytes| RenderedTable { suffix: None, bytes };
        Ok(match self {
            ScenarioOutput::Table1(r) => vec![
                main(render_rows(&r.summary, format)?),
                RenderedTable {
                    suffix: Some("trials"),
                    bytes: render_rows(&r.detail, format)?,
                },
            ],
            ScenarioOutput::ConcentrationScaling(rows) => vec![main(render_rows(rows, format)?)],
            ScenarioOutput::MisclusteringVsGap(rows) => vec![main(render_rows(rows, format)?)],
            ScenarioOutput::TradeoffCrossover(r) => vec![
                main(render_rows(&r.rows, format)?),
                RenderedTable {
                    suffix: Some("summary"),
                    bytes: render_rows(std::slice::from_ref(&r.summary), format)?,
                },
            ],
            ScenarioOutput::WeightedSweep(rows) => vec![main(render_rows(rows, format)?)],
            ScenarioOutput::SbmTriangleDensity(rows) => vec![main(render_rows(rows, format)?)],
        })
    }

    /// Writes every table next to `path`; returns the files written.
    pub fn write(&self, path: &Path, format: Format) -> Result<Vec<std::path::PathBuf>> {
        let mut written = Vec::new();
        for t in self.render(format)? {
            let p = match t.suffix {
                None => path.to_path_buf(),
                Some(s) => sibling_path(path, s),
            };
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
            }
            std::fs::write(&p, &t.bytes).map_err(|e| Error::io(&p, e))?;
            written.push(p);
        }
        Ok(written)
    }
}

/// Runs a scenario. Relative dataset paths resolve against `base_dir`.
pub fn run_scenario(cfg: &ScenarioConfig, base_dir: &Path) -> Result<ScenarioOutput> {
    cfg.validate()?;
    let (seed, trials) = (cfg.master_seed, cfg.trials);
    with_thread_pool(|| {
        Ok(match &cfg.scenario {
            Scenario::Table1(c) => ScenarioOutput::Table1(run_table1(c, seed, trials, base_dir)?),
            Scenario::ConcentrationScaling(c) => {
                ScenarioOutput::ConcentrationScaling(run_concentration_scaling(c, seed, trials)?)
            }
            Scenario::MisclusteringVsGap(c) => {
                ScenarioOutput::MisclusteringVsGap(run_misclustering_vs_gap(c, seed, trials)?)
            }
            Scenario::TradeoffCrossover(c) => {
                ScenarioOutput::TradeoffCrossover(run_tradeoff_crossover(c, seed, trials)?)
            }
            Scenario::WeightedSweep(c) => ScenarioOutput::WeightedSweep(run_weighted_sweep(c, seed, trials)?),
            Scenario::SbmTriangleDensity(c) => {
                ScenarioOutput::SbmTriangleDensity(run_sbm_triangle_density(c, seed, trials)?)
            }
        })
    })
}

/// Runs `f` on a pool sized by [`THREADS_ENV`], or on the global pool when unset.
pub fn with_thread_pool<R: Send>(f: impl FnOnce() -> Result<R> + Send) -> Result<R> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return f();
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| Error::InvalidParams(format!("{THREADS_ENV}={raw:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot build thread pool: {e}")))?
        .install(f)
}

/// Seed of one trial at one grid point of a scenario.
pub fn trial_seed(master_seed: u64, scenario: &str, grid_index: usize, trial: usize) -> u64 {
    derive_seed(&[master_seed, tag(scenario), grid_index as u64, trial as u64])
}

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Median; the average of the two middle values for even lengths.
pub fn median(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        0.5 * (v[m - 1] + v[m])
    }
}

pub fn max(xs: &[f64]) -> f64 {
    xs.iter().copied().fold(f64::NEG_INFINITY, f64::max)
}

// `f64::signum` maps zero to one, which would count ties as concordant.
fn sign(x: f64) -> i64 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Kendall's tau-a between two equally long sequences.
pub fn kendall_tau(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len().min(ys.len());
    if n < 2 {
        return 0.0;
    }
    let mut s = 0i64;
    for i in 0..n {
        for j in (i + 1)..n {
            s += sign(xs[j] - xs[i]) * sign(ys[j] - ys[i]);
        }
    }
    s as f64 / (n * (n - 1) / 2) as f64
}
