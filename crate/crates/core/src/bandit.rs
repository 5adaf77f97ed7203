//! EXP3 mixture of experts: selection probabilities, weight updates and the
//! test-until-counterexample loop.

use rand::Rng;

use crate::automata::MealyMachine;
use crate::error::{Error, Result};
use crate::experts::Expert;
use crate::learn::{Counterexample, EqResult, Phase, Teacher};
use crate::suite::{LengthDistribution, Sampler};

/// Expert weights (stored as logarithms) and the exploration rate.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditState {
    experts: Vec<Expert>,
    log_weights: Vec<f64>,
    gamma: f64,
}

impl BanditState {
    /// Every weight starts at one.
    pub fn new(experts: Vec<Expert>, gamma: f64) -> Result<Self> {
        let n = experts.len();
        Self::with_weights(experts, &vec![1.0; n], gamma)
    }

    pub fn with_weights(experts: Vec<Expert>, weights: &[f64], gamma: f64) -> Result<Self> {
        if experts.is_empty() {
            return Err(Error::InvalidParameter("at least one expert is required".into()));
        }
        if experts.len() != weights.len() {
            return Err(Error::InvalidParameter("one weight per expert is required".into()));
        }
        if !(gamma > 0.0 && gamma <= 1.0) {
            return Err(Error::InvalidParameter(format!("gamma must lie in (0, 1], got {gamma}")));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidParameter("weights must be positive".into()));
        }
        let log_weights = weights.iter().map(|w| w.ln()).collect();
        Ok(BanditState { experts, log_weights, gamma })
    }

    pub fn experts(&self) -> &[Expert] {
        &self.experts
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn log_weights(&self) -> &[f64] {
        &self.log_weights
    }

    pub fn weights(&self) -> Vec<f64> {
        self.log_weights.iter().map(|l| l.exp()).collect()
    }

    /// `p_i = (1 - γ) · w_i / Σ_j w_j + γ / |E|`.
    pub fn probs(&self) -> Vec<f64> {
        let max = self.log_weights.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let scaled: Vec<f64> = self.log_weights.iter().map(|l| (l - max).exp()).collect();
        let total: f64 = scaled.iter().sum();
        let n = self.experts.len() as f64;
        scaled.iter().map(|w| (1.0 - self.gamma) * w / total + self.gamma / n).collect()
    }

    /// Multiplies the weight of `expert` by `exp(γ / (p_e · |E|))` when a
    /// counterexample was found; otherwise leaves the state unchanged.
    pub fn update(&mut self, probs: &[f64], expert: usize, found: bool) {
        if found {
            self.log_weights[expert] += self.gamma / (probs[expert] * self.experts.len() as f64);
        }
    }

    /// Draws an expert index from `probs`. Consumes no randomness when only
    /// one expert is enabled.
    pub fn select<R: Rng + ?Sized>(&self, probs: &[f64], rng: &mut R) -> usize {
        if probs.len() == 1 {
            return 0;
        }
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                return i;
            }
        }
        probs.len() - 1
    }
}

/// Settings of one mixture-of-experts equivalence query.
#[derive(Debug, Clone)]
pub struct MabOptions {
    pub mu: LengthDistribution,
    /// Maximum number of tests per call; `None` tests until the teacher's
    /// budget runs out.
    pub test_budget: Option<u64>,
    /// Hypotheses with fewer states are tested with the trivial expert alone
    /// and leave the weights untouched.
    pub warmup_states: usize,
}

/// Tests `h` against the teacher with experts drawn by EXP3 until a test
/// fails or a budget runs out.
pub fn mab_eq<T, R>(
    h: &MealyMachine,
    state: &mut BanditState,
    teacher: &mut T,
    opts: &MabOptions,
    rng: &mut R,
) -> EqResult
where
    T: Teacher + ?Sized,
    R: Rng + ?Sized,
{
    let warmup = h.num_states() < opts.warmup_states;
    let sampler = if warmup {
        Sampler::new(h, &[Expert::Trivial])
    } else {
        Sampler::new(h, state.experts())
    };
    let mut tests = 0u64;
    loop {
        if opts.test_budget.is_some_and(|b| tests >= b) {
            return EqResult::TestBudgetExhausted;
        }
        let (e, probs) = if warmup {
            (0, Vec::new())
        } else {
            let probs = state.probs();
            (state.select(&probs, rng), probs)
        };
        let sigma = sampler.sample(e, &opts.mu, rng).word();
        let expected = h.outputs_of(&sigma);
        let Ok(observed) = teacher.output_query(&sigma, Phase::Test) else {
            return EqResult::BudgetExhausted;
        };
        tests += 1;
        let found = observed != expected;
        if !warmup {
            state.update(&probs, e, found);
        }
        if found {
            return EqResult::Counterexample(Counterexample {
                word: sigma,
                observed,
                expert: Some(sampler.experts()[e]),
            });
        }
    }
}
