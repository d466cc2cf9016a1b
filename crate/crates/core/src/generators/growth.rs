use serde::Serialize;

use crate::graph_model::BlockParams;

/// Largest edge and hyperedge probabilities together with the slack `epsilon`
/// used in the sparsity window.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GrowthWindow {
    pub p_e_max: f64,
    pub p_t_max: f64,
    pub epsilon: f64,
}

/// Outcome of each sparsity condition, all constants set to 1:
///
/// * `edge_lower`:     `log n / n <= p_e_max`
/// * `edge_upper`:     `p_e_max < n^(2/5 - eps) / n`
/// * `triangle_lower`: `(log n)^8 / n^2 < p_t_max`
/// * `triangle_upper`: `p_t_max < n^(2/5 - eps) / n^2`
/// * `coupling`:       `p_t_max > p_e_max * log n / n`
///
/// The report is advisory; generators never refuse parameters outside it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GrowthReport {
    pub n: usize,
    pub p_e_max: f64,
    pub p_t_max: f64,
    pub epsilon: f64,
    pub edge_lower: bool,
    pub edge_upper: bool,
    pub triangle_lower: bool,
    pub triangle_upper: bool,
    pub coupling: bool,
}

impl GrowthReport {
    pub fn within_window(&self) -> bool {
        self.edge_lower && self.edge_upper && self.triangle_lower && self.triangle_upper && self.coupling
    }
}

pub fn growth_window(n: usize, window: GrowthWindow) -> GrowthReport {
    let nf = n as f64;
    let log_n = nf.ln();
    let upper = nf.powf(0.4 - window.epsilon);
    let GrowthWindow {
        p_e_max,
        p_t_max,
        epsilon,
    } = window;
    GrowthReport {
        n,
        p_e_max,
        p_t_max,
        epsilon,
        edge_lower: log_n / nf <= p_e_max,
        edge_upper: p_e_max < upper / nf,
        triangle_lower: log_n.powi(8) / (nf * nf) < p_t_max,
        triangle_upper: p_t_max < upper / (nf * nf),
        coupling: p_t_max > p_e_max * log_n / nf,
    }
}

pub fn check_growth_window(p: &BlockParams, epsilon: f64) -> GrowthReport {
    growth_window(
        p.n,
        GrowthWindow {
            p_e_max: p.p_e_max(),
            p_t_max: p.p_t_max(),
            epsilon,
        },
    )
}
