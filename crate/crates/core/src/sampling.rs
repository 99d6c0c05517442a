//! Seeded, index-addressable sampling of strategy spaces.
//!
//! Every draw `i` of a stream reads from its own ChaCha stream `i`, so the
//! `i`-th sample depends only on `(seed, i)`. Splitting a run into chunks and
//! evaluating them on any number of threads reproduces the serial stream.

use rand::distr::{Distribution, Uniform};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{UnitBall, UnitSphere};

use crate::geometry::{BallPoint, CubePoint, SpherePoint};

/// Counter-based random source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rng {
    seed: u64,
    counter: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { seed, counter: 0 }
    }

    /// Stream positioned at draw `index`.
    pub fn at(seed: u64, index: u64) -> Self {
        Rng { seed, counter: index }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn position(&self) -> u64 {
        self.counter
    }

    /// Generator for the next draw; advances the counter by one.
    pub fn next_draw(&mut self) -> ChaCha8Rng {
        let mut g = ChaCha8Rng::seed_from_u64(self.seed);
        g.set_stream(self.counter);
        self.counter += 1;
        g
    }
}

/// Uniform surface measure on the unit sphere.
pub fn sample_sphere(rng: &mut Rng) -> SpherePoint {
    let [x1, x2, x3]: [f64; 3] = UnitSphere.sample(&mut rng.next_draw());
    // Marsaglia's construction is already unit-norm to rounding; renormalize
    // so the 1e-12 invariant never depends on it.
    SpherePoint::normalized(x1, x2, x3).unwrap_or(SpherePoint::NORTH)
}

/// Uniform volume measure on the closed unit ball.
pub fn sample_ball(rng: &mut Rng) -> BallPoint {
    let [x1, x2, x3]: [f64; 3] = UnitBall.sample(&mut rng.next_draw());
    BallPoint { x1, x2, x3 }
}

/// Three independent uniform `[0, 1]` probabilities.
pub fn sample_cube(rng: &mut Rng) -> CubePoint {
    let mut g = rng.next_draw();
    let u = Uniform::new_inclusive(0.0, 1.0).expect("valid range");
    CubePoint { p02: u.sample(&mut g), p01: u.sample(&mut g), p10: u.sample(&mut g) }
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: u64 = 100_000;

    #[test]
    fn sphere_moments_and_octant() {
        let mut rng = Rng::new(11);
        let (mut mean_x3, mut upper, mut octant) = (0.0, 0u64, 0u64);
        for _ in 0..N {
            let p = sample_sphere(&mut rng);
            assert!((p.x1 * p.x1 + p.x2 * p.x2 + p.x3 * p.x3 - 1.0).abs() <= 1e-12);
            mean_x3 += p.x3;
            upper += (p.x3 > 0.0) as u64;
            octant += (p.x1 > 0.0 && p.x2 < 0.0 && p.x3 > 0.0) as u64;
        }
        assert!((mean_x3 / N as f64).abs() < 0.01);
        assert!((upper as f64 / N as f64 - 0.5).abs() < 0.01);
        assert!((octant as f64 / N as f64 - 0.125).abs() < 0.005);
    }

    #[test]
    fn ball_radius_law() {
        let mut rng = Rng::new(12);
        let (mut mean_r, mut inner) = (0.0, 0u64);
        for _ in 0..N {
            let p = sample_ball(&mut rng);
            let r = p.norm();
            assert!(r <= 1.0 + 1e-12);
            mean_r += r;
            inner += (r <= 0.5) as u64;
        }
        assert!((mean_r / N as f64 - 0.75).abs() < 0.01);
        assert!((inner as f64 / N as f64 - 0.125).abs() < 0.005);
    }

    #[test]
    fn cube_moments() {
        let mut rng = Rng::new(13);
        let (mut mean, mut sub, mut inscribed) = ([0.0; 3], 0u64, 0u64);
        for _ in 0..N {
            let c = sample_cube(&mut rng);
            for (m, p) in mean.iter_mut().zip([c.p02, c.p01, c.p10]) {
                assert!((0.0..=1.0).contains(&p));
                *m += p;
            }
            sub += (c.p02 <= 0.5 && c.p01 <= 0.5 && c.p10 <= 0.5) as u64;
            let r2 = [c.p02, c.p01, c.p10].iter().map(|p| (2.0 * p - 1.0).powi(2)).sum::<f64>();
            inscribed += (r2 <= 1.0) as u64;
        }
        for m in mean {
            assert!((m / N as f64 - 0.5).abs() < 0.01);
        }
        assert!((sub as f64 / N as f64 - 0.125).abs() < 0.005);
        assert!((inscribed as f64 / N as f64 - std::f64::consts::PI / 6.0).abs() < 0.005);
    }

    #[test]
    fn draws_are_index_addressable() {
        let mut serial = Rng::new(99);
        let stream: Vec<_> = (0..50).map(|_| sample_sphere(&mut serial)).collect();
        for i in [0u64, 7, 49] {
            let mut jump = Rng::at(99, i);
            assert_eq!(sample_sphere(&mut jump), stream[i as usize]);
        }
        let mut again = Rng::new(99);
        let replay: Vec<_> = (0..50).map(|_| sample_sphere(&mut again)).collect();
        assert_eq!(stream, replay);
    }
}
