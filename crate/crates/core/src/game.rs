//! The three-food choice game: consumption frequencies, the map from a
//! strategy to the offering frequencies for which it is optimal, and
//! preference-order classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::geometry::{BallPoint, CubePoint, Frequencies};

/// Singularity threshold on the determinant of the optimality system.
pub const SINGULAR_DET: f64 = 1e-12;
/// Components of the solved frequency triple down to this value are clamped to zero.
pub const NEGATIVE_TOL: f64 = 1e-12;

/// The six conditional choice probabilities, stored by their three free
/// values. `pKJ` is the probability of choosing food `K` when the offered pair
/// omits food `J`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionalProbs {
    pub p02: f64,
    pub p01: f64,
    pub p10: f64,
}

impl ConditionalProbs {
    pub const fn new(p02: f64, p01: f64, p10: f64) -> Self {
        ConditionalProbs { p02, p01, p10 }
    }

    pub const UNIFORM: ConditionalProbs = ConditionalProbs::new(0.5, 0.5, 0.5);

    /// `P(C1|B2)`.
    pub fn p12(&self) -> f64 {
        1.0 - self.p02
    }

    /// `P(C2|B1)`.
    pub fn p21(&self) -> f64 {
        1.0 - self.p01
    }

    /// `P(C2|B0)`.
    pub fn p20(&self) -> f64 {
        1.0 - self.p10
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.p02, self.p01, self.p10]
    }

    pub fn is_valid(&self) -> bool {
        self.to_array().iter().all(|p| (0.0..=1.0).contains(p))
    }

    /// Bloch coordinates of these probabilities (inverse of the affine
    /// sphere-to-cube map). Lands in `[-1, 1]^3`, on the ball only for
    /// quantum-realizable strategies.
    pub fn bloch(&self) -> [f64; 3] {
        [2.0 * self.p01 - 1.0, 2.0 * self.p10 - 1.0, 1.0 - 2.0 * self.p02]
    }

    /// Probabilities with every free value replaced by its complement.
    pub fn complement(&self) -> Self {
        ConditionalProbs::new(self.p12(), self.p21(), self.p20())
    }
}

impl From<CubePoint> for ConditionalProbs {
    fn from(c: CubePoint) -> Self {
        ConditionalProbs::new(c.p02, c.p01, c.p10)
    }
}

impl From<ConditionalProbs> for CubePoint {
    fn from(p: ConditionalProbs) -> Self {
        CubePoint { p02: p.p02, p01: p.p01, p10: p.p10 }
    }
}

impl From<BallPoint> for ConditionalProbs {
    fn from(b: BallPoint) -> Self {
        crate::quantum::probs_from_sphere(b)
    }
}

/// Long-run consumption frequency of each food.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Omega {
    pub w0: f64,
    pub w1: f64,
    pub w2: f64,
}

impl Omega {
    pub fn to_array(&self) -> [f64; 3] {
        [self.w0, self.w1, self.w2]
    }

    /// Largest deviation from the balanced diet `1/3`.
    pub fn max_deviation(&self) -> f64 {
        self.to_array().iter().map(|w| (w - 1.0 / 3.0).abs()).fold(0.0, f64::max)
    }
}

/// A strict ranking of the three foods, best first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Order(pub [u8; 3]);

impl Order {
    pub fn reversed(&self) -> Self {
        Order([self.0[2], self.0[1], self.0[0]])
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}>{}>{}", self.0[0], self.0[1], self.0[2])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Classification {
    Transitive(Order),
    /// The cycle 0 over 2, 2 over 1, 1 over 0.
    IntransitiveI,
    /// The reverse cycle 0 over 1, 1 over 2, 2 over 0.
    IntransitiveII,
    /// Some pairwise choice probability is exactly one half.
    Boundary,
}

impl Classification {
    pub fn is_intransitive(&self) -> bool {
        matches!(self, Classification::IntransitiveI | Classification::IntransitiveII)
    }

    pub fn is_transitive(&self) -> bool {
        matches!(self, Classification::Transitive(_))
    }

    /// The classification of the complementary strategy.
    pub fn flipped(&self) -> Self {
        match self {
            Classification::Transitive(o) => Classification::Transitive(o.reversed()),
            Classification::IntransitiveI => Classification::IntransitiveII,
            Classification::IntransitiveII => Classification::IntransitiveI,
            Classification::Boundary => Classification::Boundary,
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Transitive(o) => write!(f, "transitive:{o}"),
            Classification::IntransitiveI => f.write_str("intransitive-I"),
            Classification::IntransitiveII => f.write_str("intransitive-II"),
            Classification::Boundary => f.write_str("boundary"),
        }
    }
}

/// Outcome of solving for the frequencies that make a strategy optimal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MapResult {
    Frequencies(Frequencies),
    /// The unique solution `(q0, q1, q2)` has a negative component.
    NoValidFrequencies([f64; 3]),
    SingularSystem,
}

impl MapResult {
    pub fn frequencies(&self) -> Option<Frequencies> {
        match self {
            MapResult::Frequencies(q) => Some(*q),
            _ => None,
        }
    }
}

/// Consumption frequencies `w_k = sum_j P(C_k|B_j) q_j`.
pub fn omega(probs: &ConditionalProbs, q: &Frequencies) -> Omega {
    Omega {
        w0: probs.p02 * q.q2 + probs.p01 * q.q1,
        w1: probs.p12() * q.q2 + probs.p10 * q.q0,
        w2: probs.p21() * q.q1 + probs.p20() * q.q0,
    }
}

pub fn is_optimal(probs: &ConditionalProbs, q: &Frequencies, eps: f64) -> bool {
    omega(probs, q).max_deviation() <= eps
}

/// Coefficient matrix of the balance system, acting on `(q2, q1, q0)`.
fn system_matrix(p: &ConditionalProbs) -> [[f64; 3]; 3] {
    [[p.p02, p.p01, 0.0], [p.p12(), 0.0, p.p10], [0.0, p.p21(), p.p20()]]
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Determinant of the balance system.
pub fn system_determinant(probs: &ConditionalProbs) -> f64 {
    det3(&system_matrix(probs))
}

/// Gaussian elimination with partial pivoting.
fn solve3(mut m: [[f64; 3]; 3], mut rhs: [f64; 3]) -> [f64; 3] {
    for col in 0..3 {
        let pivot = (col..3)
            .max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))
            .unwrap_or(col);
        m.swap(col, pivot);
        rhs.swap(col, pivot);
        for row in col + 1..3 {
            let f = m[row][col] / m[col][col];
            let pivot_row = m[col];
            for (a, b) in m[row].iter_mut().zip(pivot_row).skip(col) {
                *a -= f * b;
            }
            rhs[row] -= f * rhs[col];
        }
    }
    let mut x = [0.0; 3];
    for row in (0..3).rev() {
        let s: f64 = (row + 1..3).map(|k| m[row][k] * x[k]).sum();
        x[row] = (rhs[row] - s) / m[row][row];
    }
    x
}

/// Offering frequencies for which `probs` yields a balanced diet.
pub fn optimal_frequencies(probs: &ConditionalProbs) -> MapResult {
    let m = system_matrix(probs);
    if det3(&m).abs() < SINGULAR_DET {
        return MapResult::SingularSystem;
    }
    let [q2, q1, q0] = solve3(m, [1.0 / 3.0; 3]);
    let raw = [q0, q1, q2];
    if raw.iter().any(|v| *v < -NEGATIVE_TOL || !v.is_finite()) {
        return MapResult::NoValidFrequencies(raw);
    }
    let [q0, q1, q2] = raw.map(|v| v.max(0.0));
    let sum = q0 + q1 + q2;
    MapResult::Frequencies(Frequencies { q0: q0 / sum, q1: q1 / sum, q2: q2 / sum })
}

/// The printed closed form of the solution, `(q0, q1, q2)`, with the
/// normalizer taken as the negated system determinant. `None` when singular.
pub fn optimal_frequencies_closed_form(probs: &ConditionalProbs) -> Option<[f64; 3]> {
    let d = -system_determinant(probs);
    if d.abs() < SINGULAR_DET {
        return None;
    }
    let term = |a: f64, b: f64| ((a + b) / 3.0 - a * b) / d;
    Some([
        term(probs.p12(), probs.p21()),
        term(probs.p02, probs.p20()),
        term(probs.p01, probs.p10),
    ])
}

/// Preference order implied by the pairwise choice probabilities.
pub fn classify(probs: &ConditionalProbs) -> Classification {
    // Pair {0,1}: p02; pair {0,2}: p01; pair {1,2}: p10.
    let [p02, p01, p10] = probs.to_array();
    if p02 == 0.5 || p01 == 0.5 || p10 == 0.5 {
        return Classification::Boundary;
    }
    let zero_over_one = p02 > 0.5;
    let zero_over_two = p01 > 0.5;
    let one_over_two = p10 > 0.5;
    match (zero_over_one, zero_over_two, one_over_two) {
        (false, true, false) => Classification::IntransitiveI,
        (true, false, true) => Classification::IntransitiveII,
        _ => {
            let mut wins = [0u8; 3];
            wins[if zero_over_one { 0 } else { 1 }] += 1;
            wins[if zero_over_two { 0 } else { 2 }] += 1;
            wins[if one_over_two { 1 } else { 2 }] += 1;
            let mut order = [0u8, 1, 2];
            order.sort_by_key(|&f| std::cmp::Reverse(wins[f as usize]));
            Classification::Transitive(Order(order))
        }
    }
}
