//! Areas of the strategy regions of the frequency simplex.
//!
//! The simplex is cut into `n^2` congruent triangles (`n` steps per side).
//! The oracle method runs [`feasible`] at each cell centroid; the forward
//! method samples strategies, maps each to the frequencies it balances and
//! marks the cell it lands in. Fractions are covered cells over all cells.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::feasibility::{feasible, ClassFilter, Model};
use crate::game::{classify, optimal_frequencies, Classification, ConditionalProbs};
use crate::geometry::{sphere_to_stereographic, ComplexParam, Frequencies};
use crate::quantum::probs_from_sphere;
use crate::sampling::{sample_ball, sample_cube, sample_sphere, Rng};

/// Per-cell region flags.
pub mod flag {
    pub const ALL: u8 = 1;
    pub const INTRANSITIVE_I: u8 = 2;
    pub const INTRANSITIVE_II: u8 = 4;
    pub const TRANSITIVE: u8 = 8;
}

const FORWARD_CHUNK: u64 = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Forward,
    Oracle,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Forward => "forward",
            Method::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "forward" => Ok(Method::Forward),
            "oracle" => Ok(Method::Oracle),
            _ => Err(crate::Error::UnknownName(s.to_owned())),
        }
    }
}

/// Triangular grid with `n` steps per side. Cell `(i, j)` sits at the
/// lattice point `(q1, q2) = (i, j) / n`; the upward cell exists when
/// `i + j <= n - 1`, the downward one when `i + j <= n - 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimplexGrid {
    pub n: usize,
}

impl SimplexGrid {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "grid needs at least one step per side");
        SimplexGrid { n }
    }

    pub fn cell_count(&self) -> usize {
        self.n * self.n
    }

    /// Length of the dense index space (`2 n^2`, half of it unused).
    pub fn slots(&self) -> usize {
        2 * self.n * self.n
    }

    fn slot(&self, i: usize, j: usize, down: bool) -> usize {
        2 * (i * self.n + j) + down as usize
    }

    pub fn is_cell(&self, slot: usize) -> bool {
        let (i, j, down) = self.unslot(slot);
        i + j + (down as usize) < self.n
    }

    fn unslot(&self, slot: usize) -> (usize, usize, bool) {
        let down = slot % 2 == 1;
        let ij = slot / 2;
        (ij / self.n, ij % self.n, down)
    }

    /// Slots of the valid cells in index order.
    pub fn cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.slots()).filter(|&s| self.is_cell(s))
    }

    pub fn centroid(&self, slot: usize) -> Frequencies {
        let (i, j, down) = self.unslot(slot);
        let off = if down { 2.0 / 3.0 } else { 1.0 / 3.0 };
        let n = self.n as f64;
        let q1 = (i as f64 + off) / n;
        let q2 = (j as f64 + off) / n;
        Frequencies { q0: (1.0 - q1 - q2).max(0.0), q1, q2 }
    }

    /// Cell containing `q`; points on shared edges go to either neighbor.
    pub fn locate(&self, q: &Frequencies) -> usize {
        let n = self.n as f64;
        let a = (q.q1 * n).clamp(0.0, n);
        let b = (q.q2 * n).clamp(0.0, n);
        let mut i = (a.floor() as usize).min(self.n - 1);
        let mut j = (b.floor() as usize).min(self.n - 1);
        if i + j > self.n - 1 {
            // Past the outer edge by rounding: pull back to the last row.
            let excess = i + j - (self.n - 1);
            if i >= excess {
                i -= excess;
            } else {
                j -= excess - i;
                i = 0;
            }
            return self.slot(i, j, false);
        }
        let down = (a - i as f64) + (b - j as f64) > 1.0 && i + j < self.n - 1;
        self.slot(i, j, down)
    }

    /// Slots sharing at least a vertex with `slot`.
    pub fn neighbors(&self, slot: usize) -> Vec<usize> {
        let (i, j, _) = self.unslot(slot);
        let mut out = Vec::with_capacity(17);
        for di in -1i64..=1 {
            for dj in -1i64..=1 {
                let (ni, nj) = (i as i64 + di, j as i64 + dj);
                if ni < 0 || nj < 0 || ni as usize >= self.n || nj as usize >= self.n {
                    continue;
                }
                for down in [false, true] {
                    let s = self.slot(ni as usize, nj as usize, down);
                    if s != slot && self.is_cell(s) {
                        out.push(s);
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AreaReport {
    pub model: Model,
    pub method: Method,
    pub grid_n: usize,
    pub n_samples: Option<u64>,
    pub seed: Option<u64>,
    pub fraction_all: f64,
    pub fraction_intransitive_any: f64,
    pub fraction_intransitive_i: f64,
    pub fraction_intransitive_ii: f64,
    pub fraction_transitive: f64,
    pub fraction_overlap: f64,
    /// `(classical all - quantum pure all) / 3`; oracle reports only.
    pub lens_estimate: Option<f64>,
}

impl AreaReport {
    fn from_flags(model: Model, method: Method, grid: &SimplexGrid, flags: &[u8]) -> Self {
        let total = grid.cell_count() as f64;
        let frac = |pred: &dyn Fn(u8) -> bool| {
            grid.cells().filter(|&s| pred(flags[s])).count() as f64 / total
        };
        let i = flag::INTRANSITIVE_I;
        let ii = flag::INTRANSITIVE_II;
        AreaReport {
            model,
            method,
            grid_n: grid.n,
            n_samples: None,
            seed: None,
            fraction_all: frac(&|f| f & flag::ALL != 0),
            fraction_intransitive_any: frac(&|f| f & (i | ii) != 0),
            fraction_intransitive_i: frac(&|f| f & i != 0),
            fraction_intransitive_ii: frac(&|f| f & ii != 0),
            fraction_transitive: frac(&|f| f & flag::TRANSITIVE != 0),
            fraction_overlap: frac(&|f| f & (i | ii) == i | ii),
            lens_estimate: None,
        }
    }

    pub fn fractions(&self) -> [(&'static str, f64); 6] {
        [
            ("fraction_all", self.fraction_all),
            ("fraction_intransitive_any", self.fraction_intransitive_any),
            ("fraction_intransitive_i", self.fraction_intransitive_i),
            ("fraction_intransitive_ii", self.fraction_intransitive_ii),
            ("fraction_transitive", self.fraction_transitive),
            ("fraction_overlap", self.fraction_overlap),
        ]
    }

    /// Structural invariants: fractions in `[0, 1]` and region inclusions.
    pub fn is_consistent(&self) -> bool {
        self.fractions().iter().all(|(_, f)| (0.0..=1.0).contains(f))
            && self.fraction_intransitive_any <= self.fraction_all
            && self.fraction_transitive <= self.fraction_all
            && self.fraction_overlap <= self.fraction_intransitive_i
            && self.fraction_overlap <= self.fraction_intransitive_ii
    }
}

/// Oracle flags of one frequency point.
pub fn oracle_flags(q: &Frequencies, model: Model) -> u8 {
    if !feasible(q, model, ClassFilter::Any).feasible {
        return 0;
    }
    let mut f = flag::ALL;
    if feasible(q, model, ClassFilter::IntransitiveI).feasible {
        f |= flag::INTRANSITIVE_I;
    }
    if feasible(q, model, ClassFilter::IntransitiveII).feasible {
        f |= flag::INTRANSITIVE_II;
    }
    if feasible(q, model, ClassFilter::TransitiveAny).feasible {
        f |= flag::TRANSITIVE;
    }
    f
}

/// Oracle flags for every slot (zero on unused slots).
pub fn oracle_membership(model: Model, grid: &SimplexGrid) -> Vec<u8> {
    (0..grid.slots())
        .into_par_iter()
        .map(|s| if grid.is_cell(s) { oracle_flags(&grid.centroid(s), model) } else { 0 })
        .collect()
}

fn all_fraction(model: Model, grid: &SimplexGrid) -> f64 {
    let covered: usize = (0..grid.slots())
        .into_par_iter()
        .filter(|&s| grid.is_cell(s) && feasible(&grid.centroid(s), model, ClassFilter::Any).feasible)
        .count();
    covered as f64 / grid.cell_count() as f64
}

/// Region fractions from exact feasibility at cell centroids.
pub fn measure_oracle(model: Model, grid: &SimplexGrid) -> AreaReport {
    let flags = oracle_membership(model, grid);
    let mut report = AreaReport::from_flags(model, Method::Oracle, grid, &flags);
    let classical = match model {
        Model::Classical => report.fraction_all,
        _ => all_fraction(Model::Classical, grid),
    };
    let quantum = match model {
        Model::QuantumPure => report.fraction_all,
        _ => all_fraction(Model::QuantumPure, grid),
    };
    report.lens_estimate = Some((classical - quantum) / 3.0);
    report
}

/// One sampled strategy in all of its coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrategySample {
    /// Stereographic label; pure quantum strategies only.
    pub z: Option<ComplexParam>,
    /// Bloch coordinates (the cube `[-1, 1]^3` for classical strategies).
    pub x: [f64; 3],
    pub probs: ConditionalProbs,
}

/// Draw `index` of the model's strategy measure: uniform cube, sphere or ball.
pub fn draw_strategy(model: Model, seed: u64, index: u64) -> StrategySample {
    let mut rng = Rng::at(seed, index);
    match model {
        Model::Classical => {
            let probs: ConditionalProbs = sample_cube(&mut rng).into();
            StrategySample { z: None, x: probs.bloch(), probs }
        }
        Model::QuantumPure => {
            let s = sample_sphere(&mut rng);
            StrategySample { z: Some(sphere_to_stereographic(s)), x: s.to_array(), probs: probs_from_sphere(s) }
        }
        Model::QuantumMixed => {
            let b = sample_ball(&mut rng);
            StrategySample { z: None, x: b.to_array(), probs: probs_from_sphere(b) }
        }
    }
}

pub fn sample_strategy(model: Model, seed: u64, index: u64) -> ConditionalProbs {
    draw_strategy(model, seed, index).probs
}

fn class_flag(c: Classification) -> u8 {
    match c {
        Classification::IntransitiveI => flag::ALL | flag::INTRANSITIVE_I,
        Classification::IntransitiveII => flag::ALL | flag::INTRANSITIVE_II,
        Classification::Transitive(_) => flag::ALL | flag::TRANSITIVE,
        Classification::Boundary => flag::ALL,
    }
}

/// Cells hit by the images of `m` sampled strategies, tagged by class.
/// Depends only on `(model, grid, m, seed)`, not on the thread count.
pub fn forward_coverage(model: Model, grid: &SimplexGrid, m: u64, seed: u64) -> Vec<u8> {
    let chunks = m.div_ceil(FORWARD_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut flags = vec![0u8; grid.slots()];
            for index in c * FORWARD_CHUNK..((c + 1) * FORWARD_CHUNK).min(m) {
                let p = sample_strategy(model, seed, index);
                if let Some(q) = optimal_frequencies(&p).frequencies() {
                    flags[grid.locate(&q)] |= class_flag(classify(&p));
                }
            }
            flags
        })
        .reduce(
            || vec![0u8; grid.slots()],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x |= y);
                a
            },
        )
}

/// Region fractions from the images of `m` sampled strategies.
pub fn measure_forward(model: Model, grid: &SimplexGrid, m: u64, rng: &Rng) -> AreaReport {
    let flags = forward_coverage(model, grid, m, rng.seed());
    let mut report = AreaReport::from_flags(model, Method::Forward, grid, &flags);
    report.n_samples = Some(m);
    report.seed = Some(rng.seed());
    report
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CategoryDisagreement {
    pub category: String,
    pub interior_cells: usize,
    pub interior_disagreements: usize,
    pub boundary_cells: usize,
    pub boundary_disagreements: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossValidation {
    pub model: Model,
    pub grid_n: usize,
    pub n_samples: u64,
    pub seed: u64,
    pub categories: Vec<CategoryDisagreement>,
    /// Disagreeing interior cells over interior cells, all categories pooled.
    pub interior_disagreement: f64,
    pub boundary_disagreement: f64,
    /// Forward hits in cells whose centroid the oracle rejects, away from
    /// region boundaries. Should be zero.
    pub interior_false_hits: usize,
}

/// Cell-by-cell comparison of forward coverage against oracle membership.
/// A cell is boundary-adjacent for a category when it or a vertex neighbor
/// has a different oracle verdict.
pub fn cross_validate(model: Model, grid: &SimplexGrid, m: u64, rng: &Rng) -> CrossValidation {
    let oracle = oracle_membership(model, grid);
    let forward = forward_coverage(model, grid, m, rng.seed());
    let categories = [
        ("all", flag::ALL),
        ("intransitive_i", flag::INTRANSITIVE_I),
        ("intransitive_ii", flag::INTRANSITIVE_II),
        ("transitive", flag::TRANSITIVE),
    ];
    let mut out = Vec::new();
    let mut false_hits = 0;
    for (name, bit) in categories {
        let mut c = CategoryDisagreement {
            category: name.to_owned(),
            interior_cells: 0,
            interior_disagreements: 0,
            boundary_cells: 0,
            boundary_disagreements: 0,
        };
        for s in grid.cells() {
            let want = oracle[s] & bit != 0;
            let got = forward[s] & bit != 0;
            let boundary = grid.neighbors(s).iter().any(|&t| (oracle[t] & bit != 0) != want);
            if boundary {
                c.boundary_cells += 1;
                c.boundary_disagreements += (want != got) as usize;
            } else {
                c.interior_cells += 1;
                c.interior_disagreements += (want != got) as usize;
                false_hits += (got && !want) as usize;
            }
        }
        out.push(c);
    }
    let ratio = |num: usize, den: usize| if den == 0 { 0.0 } else { num as f64 / den as f64 };
    let interior_disagreement = ratio(
        out.iter().map(|c| c.interior_disagreements).sum(),
        out.iter().map(|c| c.interior_cells).sum(),
    );
    let boundary_disagreement = ratio(
        out.iter().map(|c| c.boundary_disagreements).sum(),
        out.iter().map(|c| c.boundary_cells).sum(),
    );
    CrossValidation {
        model,
        grid_n: grid.n,
        n_samples: m,
        seed: rng.seed(),
        categories: out,
        interior_disagreement,
        boundary_disagreement,
        interior_false_hits: false_hits,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_partitions_simplex() {
        for n in [1, 2, 5, 64] {
            let g = SimplexGrid::new(n);
            assert_eq!(g.cells().count(), n * n);
            for s in g.cells() {
                let c = g.centroid(s);
                assert!(c.q0 > 0.0 && c.q1 > 0.0 && c.q2 > 0.0);
                assert_eq!(g.locate(&c), s, "n={n} slot={s}");
            }
        }
    }

    #[test]
    fn locate_handles_vertices_and_edges() {
        let g = SimplexGrid::new(8);
        for q in [
            Frequencies { q0: 1.0, q1: 0.0, q2: 0.0 },
            Frequencies { q0: 0.0, q1: 1.0, q2: 0.0 },
            Frequencies { q0: 0.0, q1: 0.0, q2: 1.0 },
            Frequencies { q0: 0.0, q1: 0.5, q2: 0.5 },
        ] {
            assert!(g.is_cell(g.locate(&q)));
        }
    }

    #[test]
    fn neighbors_are_symmetric() {
        let g = SimplexGrid::new(6);
        for s in g.cells() {
            for t in g.neighbors(s) {
                assert!(g.neighbors(t).contains(&s));
            }
        }
    }

    #[test]
    fn coarse_oracle_report_is_consistent() {
        for model in Model::ALL {
            let r = measure_oracle(model, &SimplexGrid::new(64));
            assert!(r.is_consistent(), "{r:?}");
        }
    }

    #[test]
    fn forward_coverage_grows_with_samples() {
        let g = SimplexGrid::new(32);
        let small = forward_coverage(Model::QuantumPure, &g, 2_000, 5);
        let large = forward_coverage(Model::QuantumPure, &g, 20_000, 5);
        for (a, b) in small.iter().zip(&large) {
            assert_eq!(a & b, *a);
        }
    }
}
