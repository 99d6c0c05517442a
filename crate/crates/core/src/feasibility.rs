//! Exact inverse problem: for given offering frequencies, does a model admit
//! an optimal strategy of a given preference type?
//!
//! The balance conditions are two linear equations in the three free
//! probabilities `(p02, p01, p10)`, so the optimal strategies for `q` form a
//! line segment in the cube. Every constraint (cube, preference sign pattern)
//! cuts that line to an interval; the quantum models additionally intersect
//! it with the Bloch sphere (two points at most) or ball (a sub-segment).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::game::{classify, is_optimal, Classification, ConditionalProbs};
use crate::geometry::Frequencies;
use crate::roots::solve_quadratic;

/// Slack on the closed constraints (cube faces, sphere, ball).
pub const MEMBERSHIP_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Classical,
    QuantumPure,
    QuantumMixed,
}

impl Model {
    pub const ALL: [Model; 3] = [Model::Classical, Model::QuantumPure, Model::QuantumMixed];

    pub fn name(&self) -> &'static str {
        match self {
            Model::Classical => "classical",
            Model::QuantumPure => "quantum-pure",
            Model::QuantumMixed => "quantum-mixed",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Model {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Model::ALL.into_iter().find(|m| m.name() == s).ok_or_else(|| crate::Error::UnknownName(s.to_owned()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassFilter {
    Any,
    #[serde(rename = "intransitive-i")]
    IntransitiveI,
    #[serde(rename = "intransitive-ii")]
    IntransitiveII,
    #[serde(rename = "intransitive")]
    IntransitiveAny,
    #[serde(rename = "transitive")]
    TransitiveAny,
}

impl ClassFilter {
    pub const ALL: [ClassFilter; 5] = [
        ClassFilter::Any,
        ClassFilter::IntransitiveI,
        ClassFilter::IntransitiveII,
        ClassFilter::IntransitiveAny,
        ClassFilter::TransitiveAny,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ClassFilter::Any => "any",
            ClassFilter::IntransitiveI => "intransitive-i",
            ClassFilter::IntransitiveII => "intransitive-ii",
            ClassFilter::IntransitiveAny => "intransitive",
            ClassFilter::TransitiveAny => "transitive",
        }
    }

    pub fn accepts(&self, c: Classification) -> bool {
        match self {
            ClassFilter::Any => true,
            ClassFilter::IntransitiveI => c == Classification::IntransitiveI,
            ClassFilter::IntransitiveII => c == Classification::IntransitiveII,
            ClassFilter::IntransitiveAny => c.is_intransitive(),
            ClassFilter::TransitiveAny => c.is_transitive(),
        }
    }

    /// Strict sign patterns `(p02 > 1/2, p01 > 1/2, p10 > 1/2)` covered by the
    /// filter; `None` means no sign restriction.
    fn patterns(&self) -> Vec<Option<[bool; 3]>> {
        const CYCLE_I: [bool; 3] = [false, true, false];
        const CYCLE_II: [bool; 3] = [true, false, true];
        match self {
            ClassFilter::Any => vec![None],
            ClassFilter::IntransitiveI => vec![Some(CYCLE_I)],
            ClassFilter::IntransitiveII => vec![Some(CYCLE_II)],
            ClassFilter::IntransitiveAny => vec![Some(CYCLE_I), Some(CYCLE_II)],
            ClassFilter::TransitiveAny => (0..8u8)
                .map(|b| [b & 1 != 0, b & 2 != 0, b & 4 != 0])
                .filter(|p| *p != CYCLE_I && *p != CYCLE_II)
                .map(Some)
                .collect(),
        }
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassFilter {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ClassFilter::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| crate::Error::UnknownName(s.to_owned()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityResult {
    pub feasible: bool,
    pub witness: Option<ConditionalProbs>,
}

impl FeasibilityResult {
    pub const INFEASIBLE: FeasibilityResult = FeasibilityResult { feasible: false, witness: None };

    fn found(w: ConditionalProbs) -> Self {
        FeasibilityResult { feasible: true, witness: Some(w) }
    }
}

/// The optimal strategies for fixed `q`: `base + s * dir` in
/// `(p02, p01, p10)` coordinates.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolutionLine {
    pub base: [f64; 3],
    pub dir: [f64; 3],
}

impl SolutionLine {
    /// `None` when the balance equations have no solution (simplex vertices
    /// and the degenerate edges they force).
    pub fn for_frequencies(q: &Frequencies) -> Option<Self> {
        const THIRD: f64 = 1.0 / 3.0;
        let Frequencies { q0, q1, q2 } = *q;
        if q0 > 0.0 && q1 > 0.0 {
            // Parameter is p02 itself.
            Some(SolutionLine { base: [0.0, THIRD / q1, (THIRD - q2) / q0], dir: [1.0, -q2 / q1, q2 / q0] })
        } else if q1 == 0.0 && q0 > 0.0 && q2 > 0.0 {
            // Pair B1 never offered: p01 is free, food 0 only comes from B2.
            Some(SolutionLine { base: [THIRD / q2, 0.0, (2.0 * THIRD - q2) / q0], dir: [0.0, 1.0, 0.0] })
        } else if q0 == 0.0 && q1 > 0.0 && q2 > 0.0 {
            // Pair B0 never offered: p10 is free, food 1 only comes from B2.
            Some(SolutionLine { base: [1.0 - THIRD / q2, (2.0 * THIRD - q2) / q1, 0.0], dir: [0.0, 0.0, 1.0] })
        } else {
            None
        }
    }

    pub fn point(&self, s: f64) -> [f64; 3] {
        [0, 1, 2].map(|i| self.base[i] + s * self.dir[i])
    }

    fn probs(&self, s: f64) -> ConditionalProbs {
        let [p02, p01, p10] = self.point(s).map(|p| p.clamp(0.0, 1.0));
        ConditionalProbs::new(p02, p01, p10)
    }

    /// Coefficients `(a, b, c)` of `|x(s)|^2 - 1` for the Bloch image `x(s)`.
    fn bloch_quadratic(&self) -> (f64, f64, f64) {
        let (mut a, mut b, mut c) = (0.0, 0.0, -1.0);
        for i in 0..3 {
            let u = 2.0 * self.base[i] - 1.0;
            let v = 2.0 * self.dir[i];
            a += v * v;
            b += 2.0 * u * v;
            c += u * u;
        }
        (a, b, c)
    }
}

/// Interval on the real line with independently open or closed ends.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Interval {
    lo: f64,
    lo_open: bool,
    hi: f64,
    hi_open: bool,
}

impl Interval {
    const REAL_LINE: Interval = Interval { lo: f64::NEG_INFINITY, lo_open: true, hi: f64::INFINITY, hi_open: true };
    const EMPTY: Interval = Interval { lo: 1.0, lo_open: true, hi: 0.0, hi_open: true };

    fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && (self.lo_open || self.hi_open)) || self.lo.is_nan()
    }

    fn contains(&self, s: f64) -> bool {
        let above = if self.lo_open { s > self.lo } else { s >= self.lo };
        let below = if self.hi_open { s < self.hi } else { s <= self.hi };
        above && below
    }

    fn raise_lo(&mut self, v: f64, open: bool) {
        if v > self.lo || (v == self.lo && open) {
            self.lo = v;
            self.lo_open = open;
        }
    }

    fn lower_hi(&mut self, v: f64, open: bool) {
        if v < self.hi || (v == self.hi && open) {
            self.hi = v;
            self.hi_open = open;
        }
    }

    /// Restricts to `{s : a + b s > 0}` (strict) or `{s : a + b s >= 0}`.
    fn restrict(&mut self, a: f64, b: f64, strict: bool) {
        if b == 0.0 {
            let ok = if strict { a > 0.0 } else { a >= 0.0 };
            if !ok {
                *self = Interval::EMPTY;
            }
            return;
        }
        let s = -a / b;
        if b > 0.0 {
            self.raise_lo(s, strict);
        } else {
            self.lower_hi(s, strict);
        }
    }

    fn midpoint(&self) -> f64 {
        if self.lo == self.hi {
            self.lo
        } else {
            0.5 * (self.lo + self.hi)
        }
    }
}

/// Parameter interval of the line points inside the cube (with slack) and
/// strictly inside the sign pattern.
fn admissible(line: &SolutionLine, pattern: Option<[bool; 3]>) -> Interval {
    let mut iv = Interval::REAL_LINE;
    for i in 0..3 {
        let (p, d) = (line.base[i], line.dir[i]);
        iv.restrict(p + MEMBERSHIP_TOL, d, false);
        iv.restrict(1.0 - p + MEMBERSHIP_TOL, -d, false);
        if let Some(signs) = pattern {
            if signs[i] {
                iv.restrict(p - 0.5, d, true);
            } else {
                iv.restrict(0.5 - p, -d, true);
            }
        }
    }
    iv
}

fn candidate_parameters(line: &SolutionLine, iv: &Interval, model: Model) -> Vec<f64> {
    if iv.is_empty() {
        return vec![];
    }
    match model {
        Model::Classical => vec![iv.midpoint()],
        Model::QuantumPure => {
            let (a, b, c) = line.bloch_quadratic();
            solve_quadratic(a, b, c).as_vec().into_iter().filter(|s| iv.contains(*s)).collect()
        }
        Model::QuantumMixed => {
            let (a, b, c) = line.bloch_quadratic();
            let roots = solve_quadratic(a, b, c).as_vec();
            let (Some(&r1), Some(&r2)) = (roots.first(), roots.last()) else {
                return vec![];
            };
            let mut sub = *iv;
            sub.raise_lo(r1, false);
            sub.lower_hi(r2, false);
            if sub.is_empty() {
                vec![]
            } else {
                vec![sub.midpoint()]
            }
        }
    }
}

/// Decides whether `model` has an optimal strategy for `q` passing `filter`,
/// returning a witness when it does.
pub fn feasible(q: &Frequencies, model: Model, filter: ClassFilter) -> FeasibilityResult {
    let Some(line) = SolutionLine::for_frequencies(q) else {
        return FeasibilityResult::INFEASIBLE;
    };
    for pattern in filter.patterns() {
        let iv = admissible(&line, pattern);
        for s in candidate_parameters(&line, &iv, model) {
            let w = line.probs(s);
            // Rounding can land a sliver-interval witness on a tie; skip it.
            if filter.accepts(classify(&w)) && is_optimal(&w, q, MEMBERSHIP_TOL) {
                return FeasibilityResult::found(w);
            }
        }
    }
    FeasibilityResult::INFEASIBLE
}

/// Grid-search oracle for [`feasible`], independent of the line
/// parameterization. Accepts grid strategies with `max_k |w_k - 1/3| <=
/// 2 / resolution`.
///
/// Classical and mixed models scan the probability grid `k / resolution`
/// (the mixed model keeps points inside the Bloch ball); the pure model scans
/// a latitude/longitude grid with `resolution` polar and `2 * resolution`
/// azimuthal steps.
pub fn brute_force_feasible(q: &Frequencies, model: Model, filter: ClassFilter, resolution: usize) -> FeasibilityResult {
    assert!(resolution >= 100, "resolution must be at least 100");
    let tol = 2.0 / resolution as f64;
    let accept = |p: ConditionalProbs| {
        crate::game::omega(&p, q).max_deviation() <= tol && filter.accepts(classify(&p))
    };
    match model {
        Model::Classical | Model::QuantumMixed => {
            let grid: Vec<f64> = (0..=resolution).map(|k| k as f64 / resolution as f64).collect();
            let third = 1.0 / 3.0;
            for &p02 in &grid {
                let w0_ok: Vec<f64> =
                    grid.iter().copied().filter(|&p01| (p02 * q.q2 + p01 * q.q1 - third).abs() <= tol).collect();
                if w0_ok.is_empty() {
                    continue;
                }
                let w1_ok: Vec<f64> = grid
                    .iter()
                    .copied()
                    .filter(|&p10| ((1.0 - p02) * q.q2 + p10 * q.q0 - third).abs() <= tol)
                    .collect();
                for &p01 in &w0_ok {
                    for &p10 in &w1_ok {
                        let p = ConditionalProbs::new(p02, p01, p10);
                        if model == Model::QuantumMixed && p.bloch().iter().map(|x| x * x).sum::<f64>() > 1.0 {
                            continue;
                        }
                        if accept(p) {
                            return FeasibilityResult::found(p);
                        }
                    }
                }
            }
        }
        Model::QuantumPure => {
            let polar = resolution;
            let azimuthal = 2 * resolution;
            for i in 0..=polar {
                let theta = std::f64::consts::PI * i as f64 / polar as f64;
                let (st, ct) = theta.sin_cos();
                for j in 0..azimuthal {
                    let phi = std::f64::consts::TAU * j as f64 / azimuthal as f64;
                    let (sp, cp) = phi.sin_cos();
                    let x = crate::BallPoint { x1: st * cp, x2: st * sp, x3: ct };
                    let p = crate::quantum::probs_from_sphere(x);
                    if accept(p) {
                        return FeasibilityResult::found(p);
                    }
                }
            }
        }
    }
    FeasibilityResult::INFEASIBLE
}
