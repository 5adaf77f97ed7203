//! Test-suite construction: the W-method, expert test suites, the reach
//! languages behind their completeness conditions, and the randomized
//! expert-suite sampler.

mod membership;
mod sample;
mod wmethod;

pub use membership::{class_membership, reach_condition};
pub use sample::{mu_default, GeometricTail, LengthDistribution, SampledTest, Sampler};
pub use wmethod::{ets, reach_language, subalphabet_w_method, w_method};

use rand::Rng;

use crate::automata::MealyMachine;
use crate::experts::Expert;

/// Draws one test from the randomized expert suite of `h`.
///
/// Builds a fresh [`Sampler`]; callers drawing many tests against the same
/// hypothesis should build one sampler and reuse it.
pub fn sample_test<R: Rng + ?Sized>(
    h: &MealyMachine,
    expert: Expert,
    mu: &LengthDistribution,
    rng: &mut R,
) -> SampledTest {
    Sampler::new(h, &[expert]).sample(0, mu, rng)
}
