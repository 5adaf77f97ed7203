//! Minimally adequate teacher learning: a simulated teacher with query
//! accounting, an observation-table learner and pluggable equivalence
//! strategies.

mod table;
mod teacher;

use std::fmt;

use rand::Rng;

pub use table::ObservationTable;
pub use teacher::{Phase, QueryStats, Rejected, SimulatedTeacher, Teacher};

use crate::automata::{equivalence, MealyMachine, TestSuite, Word};
use crate::bandit::{mab_eq, BanditState, MabOptions};
use crate::error::{Error, Result};
use crate::experts::Expert;
use crate::suite::{ets, w_method, LengthDistribution, Sampler};

/// How equivalence queries are answered.
#[derive(Debug, Clone)]
pub enum EqStrategy {
    /// Run the expert test suite with parameter `k` in shortlex order.
    Deterministic { expert: Expert, k: usize },
    /// Sample tests from one expert's randomized suite.
    Randomized { expert: Expert, mu: LengthDistribution },
    /// Sample tests from experts chosen by EXP3.
    MoE { experts: Vec<Expert>, gamma: f64, mu: LengthDistribution },
}

impl EqStrategy {
    /// Randomized testing with the trivial expert.
    pub fn baseline(mu: LengthDistribution) -> Self {
        EqStrategy::Randomized { expert: Expert::Trivial, mu }
    }

    /// Mixture of all four experts, with future lookahead `k`.
    pub fn moe_all(k: usize, gamma: f64, mu: LengthDistribution) -> Self {
        EqStrategy::MoE { experts: Expert::all(k), gamma, mu }
    }
}

impl fmt::Display for EqStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EqStrategy::Deterministic { expert, k } => write!(f, "ets:{expert}:{k}"),
            EqStrategy::Randomized { expert: Expert::Trivial, .. } => write!(f, "baseline"),
            EqStrategy::Randomized { expert, .. } => write!(f, "expert:{expert}"),
            EqStrategy::MoE { experts, .. } => {
                let names: Vec<String> = experts.iter().map(|e| e.to_string()).collect();
                write!(f, "moe:{}", names.join("+"))
            }
        }
    }
}

/// A failing test: the input word, the teacher's outputs and the expert that
/// proposed it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub word: Word,
    pub observed: Word,
    pub expert: Option<Expert>,
}

/// Outcome of one equivalence query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EqResult {
    Counterexample(Counterexample),
    /// The teacher rejected a query.
    BudgetExhausted,
    /// The per-query test limit was reached.
    TestBudgetExhausted,
    /// A finite suite ran to completion without a mismatch.
    SuiteExhausted,
}

/// Why a learning run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopReason {
    /// The caller's stopping check accepted a hypothesis.
    Accepted,
    BudgetExhausted,
    TestBudgetExhausted,
    SuiteExhausted,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::Accepted => "accepted",
            StopReason::BudgetExhausted => "budget-exhausted",
            StopReason::TestBudgetExhausted => "test-budget-exhausted",
            StopReason::SuiteExhausted => "suite-exhausted",
        })
    }
}

/// Runs `suite` in shortlex order, one test query per word, and returns the
/// first mismatch.
pub fn eq_deterministic<T: Teacher + ?Sized>(
    h: &MealyMachine,
    teacher: &mut T,
    suite: &TestSuite,
    expert: Option<Expert>,
) -> EqResult {
    for w in suite {
        let Ok(observed) = teacher.output_query(w, Phase::Test) else {
            return EqResult::BudgetExhausted;
        };
        if observed != h.outputs_of(w) {
            return EqResult::Counterexample(Counterexample { word: w.clone(), observed, expert });
        }
    }
    EqResult::SuiteExhausted
}

/// Samples tests from `sampler`'s expert `expert` until one fails or a budget
/// runs out.
pub fn eq_randomized<T, R>(
    h: &MealyMachine,
    teacher: &mut T,
    sampler: &Sampler,
    expert: usize,
    mu: &LengthDistribution,
    test_budget: Option<u64>,
    rng: &mut R,
) -> EqResult
where
    T: Teacher + ?Sized,
    R: Rng + ?Sized,
{
    let mut tests = 0u64;
    loop {
        if test_budget.is_some_and(|b| tests >= b) {
            return EqResult::TestBudgetExhausted;
        }
        let sigma = sampler.sample(expert, mu, rng).word();
        let Ok(observed) = teacher.output_query(&sigma, Phase::Test) else {
            return EqResult::BudgetExhausted;
        };
        tests += 1;
        if observed != h.outputs_of(&sigma) {
            return EqResult::Counterexample(Counterexample {
                word: sigma,
                observed,
                expert: Some(sampler.experts()[expert]),
            });
        }
    }
}

/// Learner settings shared by all strategies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LearnConfig {
    /// Maximum number of tests per equivalence query.
    pub test_budget: Option<u64>,
    /// Below this many hypothesis states the mixture uses the trivial expert.
    pub warmup_states: usize,
}

impl Default for LearnConfig {
    fn default() -> Self {
        LearnConfig { test_budget: None, warmup_states: 5 }
    }
}

/// One hypothesis of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEntry {
    pub states: usize,
    /// Symbols spent when the hypothesis was built.
    pub symbols: u64,
    /// Expert whose test refuted the hypothesis, if any.
    pub refuted_by: Option<Expert>,
}

/// Result of a learning run, before ground-truth comparison.
#[derive(Debug, Clone)]
pub struct LearnRun {
    pub hypothesis: Option<MealyMachine>,
    pub stats: QueryStats,
    pub trace: Vec<TraceEntry>,
    pub stop: StopReason,
}

fn since(now: QueryStats, start: QueryStats) -> QueryStats {
    QueryStats {
        learn_symbols: now.learn_symbols - start.learn_symbols,
        learn_resets: now.learn_resets - start.learn_resets,
        test_symbols: now.test_symbols - start.test_symbols,
        test_resets: now.test_resets - start.test_resets,
    }
}

/// Alternates table learning and equivalence queries until an equivalence
/// query finds no counterexample.
pub fn learn<T, R>(teacher: &mut T, strategy: &EqStrategy, rng: &mut R, config: &LearnConfig) -> Result<LearnRun>
where
    T: Teacher + ?Sized,
    R: Rng + ?Sized,
{
    learn_until(teacher, strategy, rng, config, |_| false)
}

/// Like [`learn`], but stops before the equivalence query of any hypothesis
/// for which `accept` returns true. Benchmarks use this with a white-box
/// equivalence check so that costs cover learning only.
pub fn learn_until<T, R, F>(
    teacher: &mut T,
    strategy: &EqStrategy,
    rng: &mut R,
    config: &LearnConfig,
    mut accept: F,
) -> Result<LearnRun>
where
    T: Teacher + ?Sized,
    R: Rng + ?Sized,
    F: FnMut(&MealyMachine) -> bool,
{
    let mut bandit = match strategy {
        EqStrategy::MoE { experts, gamma, .. } => Some(BanditState::new(experts.clone(), *gamma)?),
        EqStrategy::Deterministic { expert, k: 0 } if *expert != Expert::Trivial => {
            return Err(Error::InvalidParameter("k must be at least 1".into()));
        }
        _ => None,
    };
    let start = teacher.stats();
    let mut table = ObservationTable::new(teacher.inputs().clone(), teacher.outputs().clone());
    let mut hypothesis = None;
    let mut trace: Vec<TraceEntry> = Vec::new();
    let stop = loop {
        if table.stabilize(teacher).is_err() {
            break StopReason::BudgetExhausted;
        }
        let h = table.hypothesis();
        trace.push(TraceEntry { states: h.num_states(), symbols: since(teacher.stats(), start).symbols(), refuted_by: None });
        if accept(&h) {
            hypothesis = Some(h);
            break StopReason::Accepted;
        }
        let result = match strategy {
            EqStrategy::Deterministic { expert: Expert::Trivial, k } => {
                eq_deterministic(&h, teacher, &w_method(&h, *k), Some(Expert::Trivial))
            }
            EqStrategy::Deterministic { expert, k } => eq_deterministic(&h, teacher, &ets(&h, *expert, *k)?, Some(*expert)),
            EqStrategy::Randomized { expert, mu } => {
                let sampler = Sampler::new(&h, &[*expert]);
                eq_randomized(&h, teacher, &sampler, 0, mu, config.test_budget, rng)
            }
            EqStrategy::MoE { mu, .. } => {
                let opts = MabOptions { mu: mu.clone(), test_budget: config.test_budget, warmup_states: config.warmup_states };
                mab_eq(&h, bandit.as_mut().expect("bandit state"), teacher, &opts, rng)
            }
        };
        let ce = match result {
            EqResult::Counterexample(ce) => ce,
            EqResult::BudgetExhausted => {
                hypothesis = Some(h);
                break StopReason::BudgetExhausted;
            }
            EqResult::TestBudgetExhausted => {
                hypothesis = Some(h);
                break StopReason::TestBudgetExhausted;
            }
            EqResult::SuiteExhausted => {
                hypothesis = Some(h);
                break StopReason::SuiteExhausted;
            }
        };
        trace.last_mut().expect("entry pushed above").refuted_by = ce.expert;
        table.process_counterexample(&h, &ce.word, &ce.observed)?;
        hypothesis = Some(h);
    };
    Ok(LearnRun { hypothesis, stats: since(teacher.stats(), start), trace, stop })
}

/// A learning run compared against the true system.
#[derive(Debug, Clone)]
pub struct RunRecord {
    pub model: String,
    pub strategy: String,
    pub seed: u64,
    /// The final hypothesis is equivalent to the system.
    pub learned: bool,
    /// States of the final hypothesis, zero if none was built.
    pub states: usize,
    pub stats: QueryStats,
    pub trace: Vec<TraceEntry>,
    pub stop: StopReason,
}

impl RunRecord {
    /// Checks the final hypothesis against `sul` with the white-box oracle;
    /// the check is not counted as queries.
    pub fn new(model: &str, strategy: &str, seed: u64, sul: &MealyMachine, run: &LearnRun) -> Self {
        let learned = run
            .hypothesis
            .as_ref()
            .is_some_and(|h| matches!(equivalence(h, sul), Ok(None)));
        RunRecord {
            model: model.to_string(),
            strategy: strategy.to_string(),
            seed,
            learned,
            states: run.hypothesis.as_ref().map_or(0, |h| h.num_states()),
            stats: run.stats,
            trace: run.trace.clone(),
            stop: run.stop,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::machine::tests::{m1, single_state};
    use crate::automata::isomorphic;
    use crate::suite::mu_default;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn strategies() -> Vec<EqStrategy> {
        vec![
            EqStrategy::Deterministic { expert: Expert::Trivial, k: 1 },
            EqStrategy::baseline(mu_default()),
            EqStrategy::Randomized { expert: Expert::Components, mu: mu_default() },
            EqStrategy::moe_all(2, 0.2, mu_default()),
        ]
    }

    #[test]
    fn learns_m1_with_every_strategy() {
        for s in strategies() {
            let mut t = SimulatedTeacher::new(m1(), Some(100_000));
            let run = learn(&mut t, &s, &mut ChaCha8Rng::seed_from_u64(1), &LearnConfig::default()).unwrap();
            let rec = RunRecord::new("m1", &s.to_string(), 1, &m1(), &run);
            assert!(rec.learned, "{s}");
            assert!(isomorphic(run.hypothesis.as_ref().unwrap(), &m1()));
            assert_eq!(run.stats, t.stats());
        }
    }

    #[test]
    fn single_state_needs_no_counterexample() {
        let mut t = SimulatedTeacher::new(single_state(), Some(1000));
        let run = learn(&mut t, &EqStrategy::baseline(mu_default()), &mut ChaCha8Rng::seed_from_u64(0), &LearnConfig::default()).unwrap();
        assert_eq!(run.trace.len(), 1);
        assert_eq!(run.hypothesis.unwrap().num_states(), 1);
    }

    #[test]
    fn starved_run_is_not_learned() {
        let mut t = SimulatedTeacher::new(m1(), Some(1));
        let run = learn(&mut t, &EqStrategy::baseline(mu_default()), &mut ChaCha8Rng::seed_from_u64(0), &LearnConfig::default()).unwrap();
        let rec = RunRecord::new("m1", "baseline", 0, &m1(), &run);
        assert!(!rec.learned);
        assert_eq!(rec.stop, StopReason::BudgetExhausted);
    }

    #[test]
    fn accepted_hypothesis_stops_the_run() {
        let mut t = SimulatedTeacher::new(m1(), None);
        let s = EqStrategy::baseline(mu_default());
        let run = learn_until(&mut t, &s, &mut ChaCha8Rng::seed_from_u64(0), &LearnConfig::default(), |h| {
            matches!(equivalence(h, &m1()), Ok(None))
        })
        .unwrap();
        assert_eq!(run.stop, StopReason::Accepted);
        assert_eq!(run.stats.test_resets, 0);
    }

    #[test]
    fn empty_suite_costs_nothing() {
        let mut t = SimulatedTeacher::new(m1(), None);
        let r = eq_deterministic(&m1(), &mut t, &TestSuite::default(), None);
        assert_eq!(r, EqResult::SuiteExhausted);
        assert_eq!(t.stats().total(), 0);
    }
}
