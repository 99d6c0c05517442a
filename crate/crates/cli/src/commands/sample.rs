use catgame_core::atlas::draw_strategy;
use catgame_core::{classify, optimal_frequencies, Classification, ComplexParam, Model};
use rayon::prelude::*;
use serde::Serialize;

use super::class_label;
use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub const HEADER: &str = "z_re,z_im,x1,x2,x3,p02,p01,p10,q0,q1,q2,class";

#[derive(Debug, Clone, Serialize)]
pub struct SampleRow {
    pub z_re: Option<f64>,
    pub z_im: Option<f64>,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
    pub p02: f64,
    pub p01: f64,
    pub p10: f64,
    pub q0: Option<f64>,
    pub q1: Option<f64>,
    pub q2: Option<f64>,
    pub class: String,
}

/// Row for draw `index`, with the strategy's class.
pub fn row(model: Model, seed: u64, index: u64) -> (SampleRow, Classification) {
    let s = draw_strategy(model, seed, index);
    let class = classify(&s.probs);
    let (z_re, z_im) = match s.z {
        None => (None, None),
        Some(ComplexParam::Finite(z)) => (Some(z.re), Some(z.im)),
        Some(ComplexParam::Infinity) => (Some(f64::INFINITY), Some(f64::INFINITY)),
    };
    let map = optimal_frequencies(&s.probs);
    let q = map.frequencies();
    let row = SampleRow {
        z_re,
        z_im,
        x1: s.x[0],
        x2: s.x[1],
        x3: s.x[2],
        p02: s.probs.p02,
        p01: s.probs.p01,
        p10: s.probs.p10,
        q0: q.map(|q| q.q0),
        q1: q.map(|q| q.q1),
        q2: q.map(|q| q.q2),
        class: class_label(&map, class),
    };
    (row, class)
}

pub fn rows(config: &RunConfig) -> Vec<SampleRow> {
    let model = config.model.unwrap_or(Model::QuantumPure);
    let filter = config.filter;
    (0..config.n_samples)
        .into_par_iter()
        .map(|i| row(model, config.seed, i))
        .filter(|(r, c)| filter.is_none_or(|f| r.q0.is_some() && f.accepts(*c)))
        .map(|(r, _)| r)
        .collect()
}

pub fn render(config: &RunConfig) -> Result<Vec<u8>, CliError> {
    let rows = rows(config);
    match config.format {
        Format::Json => Ok(serde_json::to_vec_pretty(&rows)?),
        _ => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            w.write_record(HEADER.split(','))?;
            for r in &rows {
                w.serialize(r)?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
    }
}
