use std::collections::{BTreeSet, VecDeque};

use crate::automata::{Alphabet, Word};
use crate::error::{Error, Result};

/// A complete deterministic Mealy machine.
///
/// Transitions are stored row-major: entry `q * |I| + i` holds the successor
/// and output of state `q` on input `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MealyMachine {
    inputs: Alphabet,
    outputs: Alphabet,
    initial: usize,
    delta: Vec<usize>,
    lambda: Vec<usize>,
    labels: Vec<String>,
}

impl MealyMachine {
    pub fn new(
        inputs: Alphabet,
        outputs: Alphabet,
        initial: usize,
        delta: Vec<usize>,
        lambda: Vec<usize>,
    ) -> Result<Self> {
        let ni = inputs.len();
        if ni == 0 {
            return Err(Error::InvalidMachine("empty input alphabet".into()));
        }
        if delta.len() != lambda.len() || !delta.len().is_multiple_of(ni) || delta.is_empty() {
            return Err(Error::InvalidMachine(
                "transition tables do not match the state count".into(),
            ));
        }
        let n = delta.len() / ni;
        if initial >= n {
            return Err(Error::InvalidMachine(format!("initial state {initial} out of range")));
        }
        if let Some(t) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidMachine(format!("transition target {t} out of range")));
        }
        if let Some(o) = lambda.iter().find(|&&o| o >= outputs.len()) {
            return Err(Error::InvalidMachine(format!("output id {o} out of range")));
        }
        let labels = (0..n).map(|q| format!("s{q}")).collect();
        Ok(MealyMachine { inputs, outputs, initial, delta, lambda, labels })
    }

    /// Replaces the state labels used for display and DOT output.
    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.num_states() {
            return Err(Error::InvalidMachine("label count does not match state count".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn num_states(&self) -> usize {
        self.delta.len() / self.inputs.len()
    }

    pub fn num_inputs(&self) -> usize {
        self.inputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn label(&self, q: usize) -> &str {
        &self.labels[q]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    #[inline]
    pub fn next(&self, q: usize, i: usize) -> usize {
        self.delta[q * self.inputs.len() + i]
    }

    #[inline]
    pub fn output(&self, q: usize, i: usize) -> usize {
        self.lambda[q * self.inputs.len() + i]
    }

    /// Runs `w` from `q`, returning the final state and the output word.
    pub fn run(&self, q: usize, w: &[usize]) -> (usize, Word) {
        let mut state = q;
        let mut out = Vec::with_capacity(w.len());
        for &i in w {
            out.push(self.output(state, i));
            state = self.next(state, i);
        }
        (state, Word::from(out))
    }

    /// Output word of `w` from the initial state.
    pub fn outputs_of(&self, w: &[usize]) -> Word {
        self.run(self.initial, w).1
    }

    /// State reached by `w` from the initial state.
    pub fn reach(&self, w: &[usize]) -> usize {
        w.iter().fold(self.initial, |q, &i| self.next(q, i))
    }

    pub fn is_sink(&self, q: usize) -> bool {
        self.inputs.ids().all(|i| self.next(q, i) == q)
    }

    /// States whose every transition is a self-loop. Outputs are not considered.
    pub fn sinks(&self) -> BTreeSet<usize> {
        (0..self.num_states()).filter(|&q| self.is_sink(q)).collect()
    }

    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            for i in self.inputs.ids() {
                let t = self.next(q, i);
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }
}

/// Builds a machine from named states, inputs and outputs.
#[derive(Debug, Clone, Default)]
pub struct MealyBuilder {
    inputs: Alphabet,
    outputs: Alphabet,
    states: Alphabet,
    transitions: Vec<Vec<Option<(usize, usize)>>>,
    initial: Option<usize>,
}

impl MealyBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Fixes the input order up front; otherwise inputs are numbered by first use.
    pub fn with_inputs<I, S>(mut self, names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        for name in names {
            self.input(name)?;
        }
        Ok(self)
    }

    pub fn input(&mut self, name: impl Into<String>) -> Result<usize> {
        let id = self.inputs.insert(name)?;
        for row in &mut self.transitions {
            row.resize(self.inputs.len(), None);
        }
        Ok(id)
    }

    pub fn output(&mut self, name: impl Into<String>) -> Result<usize> {
        self.outputs.insert(name)
    }

    pub fn state(&mut self, name: impl Into<String>) -> Result<usize> {
        let id = self.states.insert(name)?;
        if id == self.transitions.len() {
            self.transitions.push(vec![None; self.inputs.len()]);
        }
        Ok(id)
    }

    pub fn set_initial(&mut self, name: &str) -> Result<()> {
        let q = self.state(name)?;
        self.initial = Some(q);
        Ok(())
    }

    pub fn has_transition(&self, from: &str, input: &str) -> bool {
        match (self.states.id(from), self.inputs.id(input)) {
            (Some(q), Some(i)) => self.transitions[q][i].is_some(),
            _ => false,
        }
    }

    pub fn state_names(&self) -> &Alphabet {
        &self.states
    }

    pub fn input_names(&self) -> &Alphabet {
        &self.inputs
    }

    /// First `(state, input)` pair without a transition, if any.
    pub fn missing(&self) -> Option<(usize, usize)> {
        self.transitions
            .iter()
            .enumerate()
            .find_map(|(q, row)| row.iter().position(|c| c.is_none()).map(|i| (q, i)))
    }

    /// Adds `from --input/output--> to`, overwriting any previous entry.
    pub fn transition(&mut self, from: &str, input: &str, output: &str, to: &str) -> Result<()> {
        let q = self.state(from)?;
        let t = self.state(to)?;
        let i = self.input(input)?;
        let o = self.output(output)?;
        self.transitions[q][i] = Some((t, o));
        Ok(())
    }

    /// Sends every missing transition to `sink` with output `output`.
    pub fn complete_with(&mut self, sink: &str, output: &str) -> Result<()> {
        let s = self.state(sink)?;
        let o = self.output(output)?;
        for row in &mut self.transitions {
            for cell in row.iter_mut() {
                if cell.is_none() {
                    *cell = Some((s, o));
                }
            }
        }
        Ok(())
    }

    pub fn build(self) -> Result<MealyMachine> {
        let initial = match self.initial {
            Some(q) => q,
            None if !self.transitions.is_empty() => 0,
            None => return Err(Error::InvalidMachine("no states".into())),
        };
        let mut delta = Vec::new();
        let mut lambda = Vec::new();
        for (q, row) in self.transitions.iter().enumerate() {
            for (i, cell) in row.iter().enumerate() {
                let (t, o) = cell.ok_or(Error::Incomplete { state: q, input: i })?;
                delta.push(t);
                lambda.push(o);
            }
        }
        let labels = self.states.symbols().to_vec();
        MealyMachine::new(self.inputs, self.outputs, initial, delta, lambda)?.with_labels(labels)
    }
}

/// A Mealy machine whose transition and output functions share a partial domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMealyMachine {
    inputs: Alphabet,
    outputs: Alphabet,
    initial: usize,
    trans: Vec<Option<(usize, usize)>>,
}

impl PartialMealyMachine {
    pub fn new(
        inputs: Alphabet,
        outputs: Alphabet,
        initial: usize,
        trans: Vec<Option<(usize, usize)>>,
    ) -> Result<Self> {
        let ni = inputs.len();
        if ni == 0 || trans.is_empty() || !trans.len().is_multiple_of(ni) {
            return Err(Error::InvalidMachine("transition table does not match the state count".into()));
        }
        let n = trans.len() / ni;
        if initial >= n || trans.iter().flatten().any(|&(t, o)| t >= n || o >= outputs.len()) {
            return Err(Error::InvalidMachine("state or output id out of range".into()));
        }
        Ok(PartialMealyMachine { inputs, outputs, initial, trans })
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn num_states(&self) -> usize {
        self.trans.len() / self.inputs.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    #[inline]
    pub fn step(&self, q: usize, i: usize) -> Option<(usize, usize)> {
        self.trans[q * self.inputs.len() + i]
    }

    pub fn defined_inputs(&self, q: usize) -> impl Iterator<Item = usize> + '_ {
        self.inputs.ids().filter(move |&i| self.step(q, i).is_some())
    }

    /// Runs `w` from `q`; fails at the first missing transition.
    pub fn run(&self, q: usize, w: &[usize]) -> Result<(usize, Word)> {
        let mut state = q;
        let mut out = Vec::with_capacity(w.len());
        for (position, &i) in w.iter().enumerate() {
            let (t, o) = self.step(state, i).ok_or(Error::Undefined { position })?;
            out.push(o);
            state = t;
        }
        Ok((state, Word::from(out)))
    }
}

impl From<&MealyMachine> for PartialMealyMachine {
    fn from(m: &MealyMachine) -> Self {
        let trans = (0..m.num_states())
            .flat_map(|q| m.inputs().ids().map(move |i| Some((m.next(q, i), m.output(q, i)))))
            .collect();
        PartialMealyMachine {
            inputs: m.inputs().clone(),
            outputs: m.outputs().clone(),
            initial: m.initial(),
            trans,
        }
    }
}
