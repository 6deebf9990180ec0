//! Seeded sampling of random rational points.
//!
//! All randomized checks draw from a ChaCha8 stream keyed by a single 64-bit
//! seed. Values are drawn as small fractions `n/d` and converted to the
//! requested backend, so the rational and float backends see the same points.

use aristotle_core::{DualElement, GroupElement, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 42;

const NUMERATOR_BOUND: i64 = 30;
const DENOMINATOR_BOUND: i64 = 12;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn scalar<S: Scalar>(&mut self) -> S {
        let n = self.rng.random_range(-NUMERATOR_BOUND..=NUMERATOR_BOUND);
        let d = self.rng.random_range(1..=DENOMINATOR_BOUND);
        S::ratio(n, d)
    }

    pub fn nonzero<S: Scalar>(&mut self) -> S {
        loop {
            let v: S = self.scalar();
            if !v.is_zero() {
                return v;
            }
        }
    }

    pub fn small_int(&mut self, bound: i64) -> i64 {
        self.rng.random_range(-bound..=bound)
    }

    pub fn group<S: Scalar>(&mut self) -> GroupElement<S> {
        GroupElement::from_array(std::array::from_fn(|_| self.scalar()))
    }

    pub fn first_extension<S: Scalar>(&mut self) -> [S; 3] {
        std::array::from_fn(|_| self.scalar())
    }

    pub fn dual<S: Scalar>(&mut self) -> DualElement<S> {
        DualElement::from_array(std::array::from_fn(|_| self.scalar()))
    }

    /// Dual point with `k ≠ 0` and `y ≠ 0`.
    pub fn generic_dual<S: Scalar>(&mut self) -> DualElement<S> {
        let (p, e, f) = (self.scalar(), self.scalar(), self.scalar());
        DualElement::new(p, e, f, self.nonzero(), self.nonzero())
    }
}
