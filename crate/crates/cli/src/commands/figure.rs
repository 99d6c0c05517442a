//! Simplex scatter plots of the frequencies reached by sampled strategies.

use catgame_core::atlas::draw_strategy;
use catgame_core::{classify, optimal_frequencies, simplex_to_cartesian, Classification, Frequencies, Model};
use rayon::prelude::*;

use crate::config::{FigureKind, RunConfig};
use crate::error::CliError;
use crate::svg::Svg;

const PANEL: f64 = 420.0;
const SIDE: f64 = 380.0;
const MARGIN: f64 = 20.0;
const TOP: f64 = 50.0;

struct Series {
    label: &'static str,
    color: &'static str,
    points: Vec<Frequencies>,
}

fn series(model: Model, kind: FigureKind, config: &RunConfig) -> Vec<Series> {
    let mapped: Vec<(Frequencies, Classification)> = (0..config.n_samples)
        .into_par_iter()
        .filter_map(|i| {
            let p = draw_strategy(model, config.seed, i).probs;
            optimal_frequencies(&p).frequencies().map(|q| (q, classify(&p)))
        })
        .collect();
    let pick = |pred: &dyn Fn(Classification) -> bool| -> Vec<Frequencies> {
        mapped.iter().filter(|(_, c)| pred(*c)).map(|(q, _)| *q).collect()
    };
    match kind {
        FigureKind::Optimal => vec![Series { label: "optimal", color: "#1f77b4", points: pick(&|_| true) }],
        FigureKind::Intransitive => vec![
            Series { label: "cycle 0>2>1>0", color: "#d62728", points: pick(&|c| c == Classification::IntransitiveI) },
            Series { label: "cycle 0>1>2>0", color: "#2ca02c", points: pick(&|c| c == Classification::IntransitiveII) },
        ],
        FigureKind::Transitive => {
            vec![Series { label: "transitive", color: "#9467bd", points: pick(&|c| c.is_transitive()) }]
        }
    }
}

fn to_px(q: &Frequencies, x0: f64) -> (f64, f64) {
    let (u, v) = simplex_to_cartesian(*q);
    let h = 3f64.sqrt() / 2.0;
    (x0 + MARGIN + u * SIDE, TOP + (h - v) * SIDE)
}

fn panel(svg: &mut Svg, x0: f64, model: Model, kind: FigureKind, config: &RunConfig) {
    let corners = [
        Frequencies { q0: 1.0, q1: 0.0, q2: 0.0 },
        Frequencies { q0: 0.0, q1: 1.0, q2: 0.0 },
        Frequencies { q0: 0.0, q1: 0.0, q2: 1.0 },
    ];
    let outline: Vec<(f64, f64)> = corners.iter().map(|c| to_px(c, x0)).collect();
    svg.polygon(&outline, "#444", false);
    let hexagon: Vec<(f64, f64)> = [
        [2.0, 1.0, 0.0],
        [1.0, 2.0, 0.0],
        [0.0, 2.0, 1.0],
        [0.0, 1.0, 2.0],
        [1.0, 0.0, 2.0],
        [2.0, 0.0, 1.0],
    ]
    .iter()
    .map(|[a, b, c]| to_px(&Frequencies { q0: a / 3.0, q1: b / 3.0, q2: c / 3.0 }, x0))
    .collect();
    svg.polygon(&hexagon, "#999", true);
    svg.text(x0 + PANEL / 2.0, 24.0, 16.0, "middle", model.name());
    svg.text(outline[0].0 - 4.0, outline[0].1 + 16.0, 12.0, "start", "q0");
    svg.text(outline[1].0 + 4.0, outline[1].1 + 16.0, 12.0, "end", "q1");
    svg.text(outline[2].0, outline[2].1 - 6.0, 12.0, "middle", "q2");
    let all = series(model, kind, config);
    let mut legend_y = TOP + SIDE * 3f64.sqrt() / 2.0 + 36.0;
    for s in all {
        svg.begin_group(s.color, 0.5);
        for q in &s.points {
            let (x, y) = to_px(q, x0);
            svg.dot(x, y, 0.9);
        }
        svg.end_group();
        svg.text(x0 + MARGIN, legend_y, 12.0, "start", &format!("{} ({} points)", s.label, s.points.len()));
        legend_y += 16.0;
    }
}

pub fn render(config: &RunConfig, kind: FigureKind) -> Result<Vec<u8>, CliError> {
    let models = match config.model {
        Some(m) => vec![m],
        None => vec![Model::Classical, Model::QuantumPure],
    };
    let height = TOP + SIDE * 3f64.sqrt() / 2.0 + 80.0;
    let mut svg = Svg::new(PANEL * models.len() as f64, height);
    for (k, model) in models.into_iter().enumerate() {
        panel(&mut svg, PANEL * k as f64, model, kind, config);
    }
    Ok(svg.finish().into_bytes())
}
