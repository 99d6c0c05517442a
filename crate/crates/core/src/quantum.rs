//! Quantum strategies of the choosing player.
//!
//! A pure strategy is a ray `|z> = |0>_2 + z |1>_2` of a qubit. Each offered
//! pair is a measurement in one of three conjugated bases: the computational
//! basis (pair omitting food 2), its Hadamard image (pair omitting food 1),
//! and its `K` image (pair omitting food 0). Amplitudes are kept projective so
//! that `z = -1`, `z = ±i` and `z = ∞` need no special cases.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::game::ConditionalProbs;
use crate::geometry::{BallPoint, ComplexParam, SpherePoint};

type C = Complex64;
pub type Matrix2 = [[C; 2]; 2];

const fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// The basis changes relating the three measurement bases.
pub struct BasisSet;

impl BasisSet {
    /// Hadamard matrix.
    pub const H: Matrix2 =
        [[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], [c(FRAC_1_SQRT_2, 0.0), c(-FRAC_1_SQRT_2, 0.0)]];
    pub const K: Matrix2 =
        [[c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)], [c(0.0, FRAC_1_SQRT_2), c(0.0, -FRAC_1_SQRT_2)]];

    /// Change-of-basis matrix whose columns are the basis vectors of
    /// measurement basis `index` (0, 1 or 2) in computational coordinates.
    pub fn columns(index: u8) -> Matrix2 {
        match index {
            0 => Self::K,
            1 => Self::H,
            2 => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]],
            _ => panic!("basis index must be 0, 1 or 2, got {index}"),
        }
    }
}

pub fn adjoint(m: &Matrix2) -> Matrix2 {
    [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
}

pub fn matmul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = [[c(0.0, 0.0); 2]; 2];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, v) in row.iter_mut().enumerate() {
            *v = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

/// Amplitudes of a pure strategy in the computational basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StrategyVector {
    pub a0: C,
    pub a1: C,
}

impl StrategyVector {
    pub fn from_param(z: ComplexParam) -> Self {
        let (a0, a1) = z.homogeneous();
        StrategyVector { a0, a1 }
    }

    /// The amplitudes read in measurement basis `index`.
    pub fn in_basis(&self, index: u8) -> (C, C) {
        let u = adjoint(&BasisSet::columns(index));
        (u[0][0] * self.a0 + u[0][1] * self.a1, u[1][0] * self.a0 + u[1][1] * self.a1)
    }
}

/// Coefficients of `|z>` in measurement basis `index`, as a projective pair.
pub fn express_in_basis(z: ComplexParam, basis_index: u8) -> (C, C) {
    StrategyVector::from_param(z).in_basis(basis_index)
}

fn first_outcome(pair: (C, C)) -> f64 {
    let (n0, n1) = (pair.0.norm_sqr(), pair.1.norm_sqr());
    n0 / (n0 + n1)
}

/// Conditional choice probabilities of the pure strategy `|z>`: squared
/// moduli of its coefficients in each measurement basis, normalized.
pub fn probs_from_z(z: ComplexParam) -> ConditionalProbs {
    let v = StrategyVector::from_param(z);
    ConditionalProbs {
        p02: first_outcome(v.in_basis(2)),
        p01: first_outcome(v.in_basis(1)),
        p10: first_outcome(v.in_basis(0)),
    }
}

/// Conditional choice probabilities of a Bloch-ball point. The map is affine,
/// so sphere points (pure) and interior points (mixed) share it.
pub fn probs_from_sphere(x: impl Into<BallPoint>) -> ConditionalProbs {
    let x = x.into();
    ConditionalProbs { p02: (1.0 - x.x3) / 2.0, p01: (1.0 + x.x1) / 2.0, p10: (1.0 + x.x2) / 2.0 }
}

/// A mixed strategy written as a mixture of two antipodal pure strategies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MixedDecomposition {
    pub v: SpherePoint,
    pub w_plus: f64,
    pub w_minus: f64,
    /// False only at the ball center, where every axis works.
    pub unique: bool,
}

/// Splits `p = w_plus * v + w_minus * (-v)` along the chord through the center.
pub fn decompose_mixed(p: BallPoint) -> MixedDecomposition {
    let r = p.norm().min(1.0);
    match SpherePoint::normalized(p.x1, p.x2, p.x3) {
        Some(v) => MixedDecomposition { v, w_plus: (1.0 + r) / 2.0, w_minus: (1.0 - r) / 2.0, unique: true },
        None => MixedDecomposition { v: SpherePoint::NORTH, w_plus: 0.5, w_minus: 0.5, unique: false },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::stereographic_to_sphere;

    fn ratio_is_zero(pair: (C, C)) -> bool {
        pair.1.norm() < 1e-15 && pair.0.norm() > 0.5
    }

    #[test]
    fn bases_are_unitary_images() {
        for m in [BasisSet::H, BasisSet::K] {
            let id = matmul(&adjoint(&m), &m);
            for (i, row) in id.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    assert!((v - c(want, 0.0)).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn basis_examples() {
        let e = express_in_basis(ComplexParam::new(0.0, 0.0), 2);
        assert_eq!(e, (c(1.0, 0.0), c(0.0, 0.0)));
        assert!(ratio_is_zero(express_in_basis(ComplexParam::new(1.0, 0.0), 1)));
        assert!(ratio_is_zero(express_in_basis(ComplexParam::new(0.0, 1.0), 0)));
    }

    #[test]
    fn basis_ratios_match_family() {
        let z = c(0.3, -1.7);
        let (a, b) = express_in_basis(z.into(), 1);
        assert!((b / a - (1.0 - z) / (1.0 + z)).norm() < 1e-14);
        let (a, b) = express_in_basis(z.into(), 0);
        let i = c(0.0, 1.0);
        assert!((b / a - (1.0 + i * z) / (1.0 - i * z)).norm() < 1e-14);
    }

    #[test]
    fn pole_parameters_are_regular() {
        // 1 + z = 0 and 1 - iz = 0 would divide by zero in ratio form.
        let p = probs_from_z(ComplexParam::new(-1.0, 0.0));
        assert_eq!(p.p01, 0.0);
        let p = probs_from_z(ComplexParam::new(0.0, -1.0));
        assert!(p.p10.abs() < 1e-16);
        let p = probs_from_z(ComplexParam::Infinity);
        assert_eq!(p.p02, 0.0);
        assert!((p.p01 - 0.5).abs() < 1e-15 && (p.p10 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn probs_examples() {
        let close = |p: ConditionalProbs, want: [f64; 3]| {
            p.to_array().iter().zip(want).all(|(a, b)| (a - b).abs() < 1e-15)
        };
        assert!(close(probs_from_z(ComplexParam::new(0.0, 0.0)), [1.0, 0.5, 0.5]));
        assert!(close(probs_from_z(ComplexParam::new(1.0, 0.0)), [0.5, 1.0, 0.5]));
        assert!(close(probs_from_z(ComplexParam::new(0.0, 1.0)), [0.5, 0.5, 1.0]));
        assert!(close(probs_from_sphere(SpherePoint::SOUTH), [1.0, 0.5, 0.5]));
        assert!(close(probs_from_sphere(BallPoint::CENTER), [0.5, 0.5, 0.5]));
        let s = stereographic_to_sphere(ComplexParam::new(1.0, 0.0));
        assert!(close(probs_from_sphere(s), [0.5, 1.0, 0.5]));
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_mixed(SpherePoint::normalized(1.0, 2.0, -2.0).unwrap().into());
        assert!(d.unique && (d.w_plus - 1.0).abs() < 1e-15 && d.w_minus.abs() < 1e-15);
        let d = decompose_mixed(BallPoint::CENTER);
        assert_eq!((d.v, d.w_plus, d.w_minus, d.unique), (SpherePoint::NORTH, 0.5, 0.5, false));
        let d = decompose_mixed(BallPoint { x1: 0.0, x2: 0.0, x3: 0.5 });
        assert_eq!((d.v, d.w_plus, d.w_minus), (SpherePoint::NORTH, 0.75, 0.25));
        assert_eq!((d.w_plus - d.w_minus) * d.v.x3, 0.5);
    }
}
