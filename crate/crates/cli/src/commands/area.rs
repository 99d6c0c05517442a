use catgame_core::{measure_forward, measure_oracle, AreaReport, Method, Model, Rng, SimplexGrid};

use crate::config::{Format, RunConfig};
use crate::error::CliError;

pub fn report(config: &RunConfig, method: Method) -> AreaReport {
    let model = config.model.unwrap_or(Model::QuantumPure);
    let grid = SimplexGrid::new(config.grid);
    match method {
        Method::Oracle => measure_oracle(model, &grid),
        Method::Forward => measure_forward(model, &grid, config.n_samples, &Rng::new(config.seed)),
    }
}

pub fn render(config: &RunConfig, method: Method) -> Result<Vec<u8>, CliError> {
    let report = report(config, method);
    match config.format {
        Format::Csv => {
            let opt = |v: Option<f64>| v.map_or(String::new(), |v| v.to_string());
            let mut rows = vec![
                ("model", report.model.name().to_owned()),
                ("method", report.method.name().to_owned()),
                ("grid_n", report.grid_n.to_string()),
                ("n_samples", report.n_samples.map_or(String::new(), |v| v.to_string())),
                ("seed", report.seed.map_or(String::new(), |v| v.to_string())),
            ];
            for (name, value) in report.fractions() {
                rows.push((name, value.to_string()));
            }
            rows.push(("lens_estimate", opt(report.lens_estimate)));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["key", "value"])?;
            for (k, v) in rows {
                w.write_record([k, v.as_str()])?;
            }
            w.into_inner().map_err(|e| CliError::Io(e.into_error()))
        }
        _ => {
            let mut out = serde_json::to_vec_pretty(&report)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}
