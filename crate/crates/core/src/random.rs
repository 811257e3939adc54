//! Seeded pseudo-random rational test data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{rat, Rational};

/// Deterministic generator for one verification case.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ case.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Numerator in `-9..=9`, denominator in `1..=6`.
pub fn rational<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

/// Numerator in `0..=9`, denominator in `1..=6`.
pub fn nonnegative<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(0..=9), rng.gen_range(1..=6))
}

/// Numerator in `1..=9`, denominator in `1..=6`.
pub fn positive<R: Rng>(rng: &mut R) -> Rational {
    rat(rng.gen_range(1..=9), rng.gen_range(1..=6))
}

pub fn vector<R: Rng>(rng: &mut R, len: usize) -> Vec<Rational> {
    (0..len).map(|_| rational(rng)).collect()
}
