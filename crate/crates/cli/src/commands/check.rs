use catgame_core::{feasible, omega, ClassFilter, ConditionalProbs, Frequencies, Model};
use serde::Serialize;

use crate::config::{parse_frequencies, RunConfig};
use crate::error::CliError;

#[derive(Debug, Serialize)]
pub struct Witness {
    /// Free conditional probabilities (cube coordinates).
    pub cube: ConditionalProbs,
    /// Bloch coordinates `(x1, x2, x3)`.
    pub bloch: [f64; 3],
    pub class: String,
    pub max_deviation: f64,
    pub verified: bool,
}

#[derive(Debug, Serialize)]
pub struct CheckEntry {
    pub model: Model,
    pub filter: ClassFilter,
    pub feasible: bool,
    pub witness: Option<Witness>,
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub q: Frequencies,
    pub results: Vec<CheckEntry>,
}

pub fn check(q: Frequencies, models: &[Model], filters: &[ClassFilter], eps: f64) -> CheckReport {
    let mut results = Vec::new();
    for &model in models {
        for &filter in filters {
            let r = feasible(&q, model, filter);
            let witness = r.witness.map(|w| {
                let dev = omega(&w, &q).max_deviation();
                Witness {
                    cube: w,
                    bloch: w.bloch(),
                    class: catgame_core::classify(&w).to_string(),
                    max_deviation: dev,
                    verified: dev <= eps,
                }
            });
            results.push(CheckEntry { model, filter, feasible: r.feasible, witness });
        }
    }
    CheckReport { q, results }
}

pub fn render(config: &RunConfig, q: &str) -> Result<Vec<u8>, CliError> {
    let q = parse_frequencies(q)?;
    let models = config.model.map_or(Model::ALL.to_vec(), |m| vec![m]);
    let filters = config.filter.map_or(ClassFilter::ALL.to_vec(), |f| vec![f]);
    let mut out = serde_json::to_vec_pretty(&check(q, &models, &filters, config.eps))?;
    out.push(b'\n');
    Ok(out)
}
