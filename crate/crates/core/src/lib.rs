//! Classical and quantum versions of a three-food choice game against Nature.
//!
//! A player is offered two of three foods at a time, pair `B_j` (the pair
//! without food `j`) with frequency `q_j`, and wants each food eaten a third
//! of the time. This crate maps strategies to the offering frequencies they
//! balance, decides for given frequencies whether a classical, pure quantum
//! or mixed quantum strategy of a given preference type exists, and measures
//! the corresponding regions of the frequency simplex.

pub mod atlas;
pub mod feasibility;
pub mod game;
pub mod geometry;
pub mod quantum;
pub mod roots;
pub mod sampling;

pub use atlas::{cross_validate, measure_forward, measure_oracle, AreaReport, CrossValidation, Method, SimplexGrid};


pub use feasibility::{brute_force_feasible, feasible, ClassFilter, FeasibilityResult, Model};
pub use game::{
    classify, is_optimal, omega, optimal_frequencies, Classification, ConditionalProbs, MapResult, Omega, Order,
};
pub use geometry::{
    simplex_to_cartesian, sphere_to_stereographic, stereographic_to_sphere, BallPoint, ComplexParam, CubePoint,
    Frequencies, SpherePoint,
};
pub use quantum::{decompose_mixed, express_in_basis, probs_from_sphere, probs_from_z, MixedDecomposition};
pub use sampling::{sample_ball, sample_cube, sample_sphere, Rng};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum Error {
    #[error("point is not on the unit sphere (norm {0})")]
    NotOnSphere(f64),
    #[error("point is outside the unit ball (norm {0})")]
    OutsideBall(f64),
    #[error("probability {0} is outside [0, 1]")]
    ProbabilityOutOfRange(f64),
    #[error("{0:?} is not a point of the frequency simplex")]
    InvalidFrequencies([f64; 3]),
    #[error("unknown name `{0}`")]
    UnknownName(String),
}
