//! Real roots of `a x^2 + b x + c`.

/// Real roots in ascending order. A double root is reported twice.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum QuadraticRoots {
    None,
    One(f64),
    Two(f64, f64),
}

impl QuadraticRoots {
    pub fn as_vec(&self) -> Vec<f64> {
        match *self {
            QuadraticRoots::None => vec![],
            QuadraticRoots::One(x) => vec![x],
            QuadraticRoots::Two(x, y) => vec![x, y],
        }
    }
}

/// Solves with the cancellation-free pairing `q = -(b + sign(b) sqrt(D)) / 2`,
/// `x1 = q / a`, `x2 = c / q`. Discriminants within a relative `1e-14` of zero
/// count as a double root.
pub fn solve_quadratic(a: f64, b: f64, c: f64) -> QuadraticRoots {
    if a == 0.0 {
        if b == 0.0 {
            return QuadraticRoots::None;
        }
        return QuadraticRoots::One(-c / b);
    }
    let disc = b * b - 4.0 * a * c;
    let scale = (b * b).max((4.0 * a * c).abs());
    if disc < 0.0 {
        if disc >= -1e-14 * scale {
            let x = -b / (2.0 * a);
            return QuadraticRoots::Two(x, x);
        }
        return QuadraticRoots::None;
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        // b = 0 and c = 0.
        return QuadraticRoots::Two(0.0, 0.0);
    }
    let (x1, x2) = (q / a, c / q);
    if x1 <= x2 {
        QuadraticRoots::Two(x1, x2)
    } else {
        QuadraticRoots::Two(x2, x1)
    }
}
