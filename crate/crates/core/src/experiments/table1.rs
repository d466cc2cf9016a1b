use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::evaluation::misclustered_count;
use crate::spectral::{cluster_with, ClusterMethod, ClusterOptions, DEFAULT_RESTARTS};

use super::dataset::{Dataset, DatasetSpec};
use super::{median, trial_seed};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Table1Config {
    pub datasets: Vec<DatasetSpec>,
    #[serde(default = "default_restarts")]
    pub restarts: usize,
}

fn default_restarts() -> usize {
    DEFAULT_RESTARTS
}

/// Misclustered vertices per method, one row per dataset and statistic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub dataset: String,
    pub n: usize,
    /// `min` or `median` over trials.
    pub statistic: &'static str,
    #[serde(rename = "spA")]
    pub sp_a: f64,
    #[serde(rename = "hospA")]
    pub hosp_a: f64,
    #[serde(rename = "spL")]
    pub sp_l: f64,
    #[serde(rename = "hospL")]
    pub hosp_l: f64,
    #[serde(rename = "rspL")]
    pub rsp_l: f64,
    #[serde(rename = "horspL")]
    pub horsp_l: f64,
    pub master_seed: u64,
    pub trials: usize,
    pub restarts: usize,
}

impl Table1Row {
    /// Values in the order of [`ClusterMethod::NAMES`].
    pub fn values(&self) -> [f64; 6] {
        [self.sp_a, self.hosp_a, self.sp_l, self.hosp_l, self.rsp_l, self.horsp_l]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Table1Detail {
    pub dataset: String,
    pub trial: usize,
    pub seed: u64,
    pub method: &'static str,
    pub misclustered: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Table1Report {
    pub summary: Vec<Table1Row>,
    pub detail: Vec<Table1Detail>,
}

impl Table1Report {
    /// Per-trial counts of one dataset, in method order.
    pub fn trial_row(&self, dataset: &str, trial: usize) -> Vec<usize> {
        self.detail
            .iter()
            .filter(|d| d.dataset == dataset && d.trial == trial)
            .map(|d| d.misclustered)
            .collect()
    }
}

pub fn run_table1(cfg: &Table1Config, master_seed: u64, trials: usize, base_dir: &Path) -> Result<Table1Report> {
    let datasets = cfg
        .datasets
        .iter()
        .map(|d| d.resolved(base_dir).load())
        .collect::<Result<Vec<_>>>()?;
    table1_for_datasets(&datasets, master_seed, trials, cfg.restarts)
}

pub fn table1_for_datasets(
    datasets: &[Dataset],
    master_seed: u64,
    trials: usize,
    restarts: usize,
) -> Result<Table1Report> {
    let opts = ClusterOptions {
        restarts,
        ..ClusterOptions::default()
    };
    let mut summary = Vec::new();
    let mut detail = Vec::new();
    for ds in datasets {
        let k = ds.labels.k();
        let scenario = format!("table1/{}", ds.name);
        let per_trial: Vec<(u64, Vec<usize>)> = (0..trials)
            .into_par_iter()
            .map(|t| {
                let seed = trial_seed(master_seed, &scenario, 0, t);
                let counts = ClusterMethod::named()
                    .iter()
                    .map(|(_, m)| {
                        let est = cluster_with(&ds.graph, m, k, seed, &opts)?;
                        misclustered_count(&ds.labels, &est)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok((seed, counts))
            })
            .collect::<Result<Vec<_>>>()?;
        for (t, (seed, counts)) in per_trial.iter().enumerate() {
            for (c, name) in counts.iter().zip(ClusterMethod::NAMES) {
                detail.push(Table1Detail {
                    dataset: ds.name.clone(),
                    trial: t,
                    seed: *seed,
                    method: name,
                    misclustered: *c,
                });
            }
        }
        let column = |m: usize| -> Vec<f64> { per_trial.iter().map(|(_, c)| c[m] as f64).collect() };
        for statistic in ["min", "median"] {
            let v: Vec<f64> = (0..6)
                .map(|m| {
                    let col = column(m);
                    if statistic == "min" {
                        col.iter().copied().fold(f64::INFINITY, f64::min)
                    } else {
                        median(&col)
                    }
                })
                .collect();
            summary.push(Table1Row {
                dataset: ds.name.clone(),
                n: ds.n(),
                statistic,
                sp_a: v[0],
                hosp_a: v[1],
                sp_l: v[2],
                hosp_l: v[3],
                rsp_l: v[4],
                horsp_l: v[5],
                master_seed,
                trials,
                restarts,
            });
        }
    }
    Ok(Table1Report { summary, detail })
}
