//! Coordinate systems shared by the classical and quantum models.
//!
//! Pure quantum strategies live on the unit sphere, mixed strategies in the
//! unit ball, classical strategies in the unit cube of free conditional
//! probabilities, and pair-offering frequencies in the 2-simplex.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::Error;

/// Tolerance on the unit-norm and simplex-sum invariants.
pub const NORM_TOL: f64 = 1e-12;

/// A strategy label on the extended complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ComplexParam {
    Finite(Complex64),
    Infinity,
}

impl ComplexParam {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexParam::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ComplexParam::Infinity)
    }

    /// Homogeneous coordinates `(a, b)` with `z = b / a`, scaled so the larger
    /// component has modulus one. Infinity is `(0, 1)`.
    pub fn homogeneous(&self) -> (Complex64, Complex64) {
        match *self {
            ComplexParam::Infinity => (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
            ComplexParam::Finite(z) if z.norm() <= 1.0 => (Complex64::new(1.0, 0.0), z),
            ComplexParam::Finite(z) => (z.inv(), Complex64::new(1.0, 0.0)),
        }
    }
}

impl From<Complex64> for ComplexParam {
    fn from(z: Complex64) -> Self {
        ComplexParam::Finite(z)
    }
}

/// A point of the unit sphere (pure strategy in Bloch coordinates).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpherePoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl SpherePoint {
    pub const NORTH: SpherePoint = SpherePoint { x1: 0.0, x2: 0.0, x3: 1.0 };
    pub const SOUTH: SpherePoint = SpherePoint { x1: 0.0, x2: 0.0, x3: -1.0 };

    /// Checked constructor; the norm must be one within [`NORM_TOL`].
    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self, Error> {
        let n2 = x1 * x1 + x2 * x2 + x3 * x3;
        if (n2 - 1.0).abs() > NORM_TOL || !n2.is_finite() {
            return Err(Error::NotOnSphere(n2.sqrt()));
        }
        Ok(SpherePoint { x1, x2, x3 })
    }

    /// Projects a nonzero vector radially onto the sphere.
    pub fn normalized(x1: f64, x2: f64, x3: f64) -> Option<Self> {
        let n = (x1 * x1 + x2 * x2 + x3 * x3).sqrt();
        if n == 0.0 || !n.is_finite() {
            return None;
        }
        Some(SpherePoint { x1: x1 / n, x2: x2 / n, x3: x3 / n })
    }

    pub fn antipode(&self) -> Self {
        SpherePoint { x1: -self.x1, x2: -self.x2, x3: -self.x3 }
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }
}

/// A point of the closed unit ball (mixed strategy).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BallPoint {
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl BallPoint {
    pub const CENTER: BallPoint = BallPoint { x1: 0.0, x2: 0.0, x3: 0.0 };

    pub fn new(x1: f64, x2: f64, x3: f64) -> Result<Self, Error> {
        let n2 = x1 * x1 + x2 * x2 + x3 * x3;
        if n2 > 1.0 + NORM_TOL || !n2.is_finite() {
            return Err(Error::OutsideBall(n2.sqrt()));
        }
        Ok(BallPoint { x1, x2, x3 })
    }

    pub fn norm(&self) -> f64 {
        (self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3).sqrt()
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.x1, self.x2, self.x3]
    }
}

impl From<SpherePoint> for BallPoint {
    fn from(p: SpherePoint) -> Self {
        BallPoint { x1: p.x1, x2: p.x2, x3: p.x3 }
    }
}

/// The three free conditional probabilities `P(C0|B2)`, `P(C0|B1)`, `P(C1|B0)`
/// as a point of the unit cube.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CubePoint {
    pub p02: f64,
    pub p01: f64,
    pub p10: f64,
}

impl CubePoint {
    pub fn new(p02: f64, p01: f64, p10: f64) -> Result<Self, Error> {
        for p in [p02, p01, p10] {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::ProbabilityOutOfRange(p));
            }
        }
        Ok(CubePoint { p02, p01, p10 })
    }
}

/// Pair-offering frequencies: `q_j` is the frequency of the pair that omits
/// food `j`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frequencies {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
}

impl Frequencies {
    pub const CENTER: Frequencies = Frequencies { q0: 1.0 / 3.0, q1: 1.0 / 3.0, q2: 1.0 / 3.0 };

    /// Strict constructor: nonnegative components summing to one within
    /// [`NORM_TOL`].
    pub fn new(q0: f64, q1: f64, q2: f64) -> Result<Self, Error> {
        Self::with_tolerance(q0, q1, q2, NORM_TOL)
    }

    /// Accepts a triple whose sum is within `tol` of one and renormalizes it.
    pub fn with_tolerance(q0: f64, q1: f64, q2: f64, tol: f64) -> Result<Self, Error> {
        let q = [q0, q1, q2];
        if q.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidFrequencies(q));
        }
        let sum = q0 + q1 + q2;
        if (sum - 1.0).abs() > tol {
            return Err(Error::InvalidFrequencies(q));
        }
        Ok(Frequencies { q0: q0 / sum, q1: q1 / sum, q2: q2 / sum })
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.q0, self.q1, self.q2]
    }

    pub fn max_component(&self) -> f64 {
        self.q0.max(self.q1).max(self.q2)
    }
}

/// Stereographic projection from the extended plane onto the sphere, with
/// infinity at the north pole and zero at the south pole.
pub fn stereographic_to_sphere(z: ComplexParam) -> SpherePoint {
    let (a, b) = z.homogeneous();
    let na = a.norm_sqr();
    let nb = b.norm_sqr();
    let cross = a.conj() * b;
    let n = na + nb;
    SpherePoint { x1: 2.0 * cross.re / n, x2: 2.0 * cross.im / n, x3: (nb - na) / n }
}

/// Inverse of [`stereographic_to_sphere`].
pub fn sphere_to_stereographic(x: SpherePoint) -> ComplexParam {
    if x.x3 >= 1.0 || (x.x1 == 0.0 && x.x2 == 0.0 && x.x3 > 0.0) {
        return ComplexParam::Infinity;
    }
    if x.x3 <= 0.0 {
        ComplexParam::Finite(Complex64::new(x.x1, x.x2) / (1.0 - x.x3))
    } else {
        // (x1 + i x2)(x1 - i x2) = 1 - x3^2 avoids cancellation near the pole.
        ComplexParam::Finite((1.0 + x.x3) / Complex64::new(x.x1, -x.x2))
    }
}

/// Embeds a barycentric point in the plane: `q0 = 1` at `(0, 0)`, `q1 = 1` at
/// `(1, 0)`, `q2 = 1` at `(1/2, sqrt(3)/2)`.
pub fn simplex_to_cartesian(q: Frequencies) -> (f64, f64) {
    let h = 3f64.sqrt() / 2.0;
    (q.q1 + 0.5 * q.q2, h * q.q2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-14
    }

    #[test]
    fn poles_and_unit_point() {
        let s = stereographic_to_sphere(ComplexParam::new(0.0, 0.0));
        assert_eq!(s.to_array(), [0.0, 0.0, -1.0]);
        assert_eq!(stereographic_to_sphere(ComplexParam::Infinity), SpherePoint::NORTH);
        let one = stereographic_to_sphere(ComplexParam::new(1.0, 0.0));
        assert!(close(one.x1, 1.0) && close(one.x2, 0.0) && close(one.x3, 0.0));
        let i = stereographic_to_sphere(ComplexParam::new(0.0, 1.0));
        assert!(close(i.x2, 1.0));
    }

    #[test]
    fn inverse_at_poles() {
        assert_eq!(sphere_to_stereographic(SpherePoint::SOUTH), ComplexParam::new(0.0, 0.0));
        assert_eq!(sphere_to_stereographic(SpherePoint::NORTH), ComplexParam::Infinity);
    }

    #[test]
    fn huge_modulus_goes_near_north_pole() {
        let s = stereographic_to_sphere(ComplexParam::new(1e200, -1e200));
        assert!((s.x3 - 1.0).abs() < 1e-15);
        assert!(s.x1.is_finite() && s.x2.is_finite());
    }

    #[test]
    fn simplex_embedding() {
        let h = 3f64.sqrt() / 2.0;
        assert_eq!(simplex_to_cartesian(Frequencies::new(1.0, 0.0, 0.0).unwrap()), (0.0, 0.0));
        assert_eq!(simplex_to_cartesian(Frequencies::new(0.0, 1.0, 0.0).unwrap()), (1.0, 0.0));
        assert_eq!(simplex_to_cartesian(Frequencies::new(0.0, 0.0, 1.0).unwrap()), (0.5, h));
        let (u, v) = simplex_to_cartesian(Frequencies::CENTER);
        assert!(close(u, 0.5) && close(v, 3f64.sqrt() / 6.0));
    }

    #[test]
    fn constructors_reject_bad_input() {
        assert!(SpherePoint::new(1.0, 1.0, 0.0).is_err());
        assert!(BallPoint::new(0.8, 0.8, 0.0).is_err());
        assert!(CubePoint::new(0.5, 1.2, 0.0).is_err());
        assert!(Frequencies::new(0.5, 0.5, 0.1).is_err());
        assert!(Frequencies::new(1.2, -0.2, 0.0).is_err());
        assert!(Frequencies::with_tolerance(0.3333, 0.3333, 0.3334, 1e-9).is_ok());
    }
}
