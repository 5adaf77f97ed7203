use crate::automata::{Alphabet, MealyMachine, Word};

/// Whether a query serves table construction or testing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Learn,
    Test,
}

/// Query cost counters, split by phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct QueryStats {
    pub learn_symbols: u64,
    pub learn_resets: u64,
    pub test_symbols: u64,
    pub test_resets: u64,
}

impl QueryStats {
    pub fn symbols(&self) -> u64 {
        self.learn_symbols + self.test_symbols
    }

    pub fn resets(&self) -> u64 {
        self.learn_resets + self.test_resets
    }

    /// Sum of all four counters.
    pub fn total(&self) -> u64 {
        self.symbols() + self.resets()
    }

    pub fn record(&mut self, len: usize, phase: Phase) {
        match phase {
            Phase::Learn => {
                self.learn_symbols += len as u64;
                self.learn_resets += 1;
            }
            Phase::Test => {
                self.test_symbols += len as u64;
                self.test_resets += 1;
            }
        }
    }
}

/// The symbol budget was used up before the query was asked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("symbol budget exhausted")]
pub struct Rejected;

/// Answers output queries about a system under learning.
pub trait Teacher {
    fn inputs(&self) -> &Alphabet;

    fn outputs(&self) -> &Alphabet;

    /// Outputs produced by `w` from the initial state, one per input.
    fn output_query(&mut self, w: &[usize], phase: Phase) -> Result<Word, Rejected>;

    fn stats(&self) -> QueryStats;
}

/// A teacher backed by a known machine, with query accounting and an
/// optional symbol budget.
///
/// A query is rejected once the symbols already spent reach the budget; an
/// accepted query is always answered in full, even when it overshoots.
#[derive(Debug, Clone)]
pub struct SimulatedTeacher {
    sul: MealyMachine,
    stats: QueryStats,
    budget: Option<u64>,
    transcript: Option<Vec<(Word, Phase)>>,
}

impl SimulatedTeacher {
    pub fn new(sul: MealyMachine, budget: Option<u64>) -> Self {
        SimulatedTeacher { sul, stats: QueryStats::default(), budget, transcript: None }
    }

    /// Keeps a copy of every accepted query.
    pub fn recording(mut self) -> Self {
        self.transcript = Some(Vec::new());
        self
    }

    pub fn transcript(&self) -> &[(Word, Phase)] {
        self.transcript.as_deref().unwrap_or(&[])
    }

    pub fn sul(&self) -> &MealyMachine {
        &self.sul
    }

    pub fn budget(&self) -> Option<u64> {
        self.budget
    }

    pub fn exhausted(&self) -> bool {
        self.budget.is_some_and(|b| self.stats.symbols() >= b)
    }
}

impl Teacher for SimulatedTeacher {
    fn inputs(&self) -> &Alphabet {
        self.sul.inputs()
    }

    fn outputs(&self) -> &Alphabet {
        self.sul.outputs()
    }

    fn output_query(&mut self, w: &[usize], phase: Phase) -> Result<Word, Rejected> {
        if self.exhausted() {
            return Err(Rejected);
        }
        self.stats.record(w.len(), phase);
        if let Some(t) = &mut self.transcript {
            t.push((Word::from(w), phase));
        }
        Ok(self.sul.outputs_of(w))
    }

    fn stats(&self) -> QueryStats {
        self.stats
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::machine::tests::m1;

    #[test]
    fn empty_query_costs_one_reset() {
        let mut t = SimulatedTeacher::new(m1(), None);
        assert_eq!(t.output_query(&[], Phase::Learn), Ok(Word::empty()));
        assert_eq!(t.stats(), QueryStats { learn_resets: 1, ..Default::default() });
    }

    #[test]
    fn symbols_and_resets_are_counted() {
        let mut t = SimulatedTeacher::new(m1(), None);
        let out = t.output_query(&[0, 1, 0], Phase::Test).unwrap();
        assert_eq!(out.len(), 3);
        assert_eq!(t.stats(), QueryStats { test_symbols: 3, test_resets: 1, ..Default::default() });
        assert_eq!(t.stats().total(), 4);
    }

    #[test]
    fn budget_completes_then_rejects() {
        let mut t = SimulatedTeacher::new(m1(), Some(5));
        let aba = [0, 1, 0];
        assert!(t.output_query(&aba, Phase::Learn).is_ok());
        assert!(t.output_query(&aba, Phase::Test).is_ok());
        assert_eq!(t.stats().symbols(), 6);
        assert_eq!(t.output_query(&aba, Phase::Test), Err(Rejected));
        assert_eq!(t.stats().resets(), 2);
    }
}
