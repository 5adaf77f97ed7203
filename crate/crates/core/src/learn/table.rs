use std::collections::{HashMap, HashSet};

use crate::automata::{Alphabet, MealyMachine, Word};
use crate::error::{Error, Result};
use crate::learn::{Phase, Rejected, Teacher};

/// Mealy observation table. Rows are the prefix-closed access words `S` and
/// their one-letter extensions; columns are the suffix-closed set `E`, seeded
/// with every single input. Cell `(u, e)` holds the last `|e|` outputs of
/// `u · e`.
#[derive(Debug, Clone)]
pub struct ObservationTable {
    inputs: Alphabet,
    outputs: Alphabet,
    prefixes: Vec<Word>,
    prefix_set: HashSet<Word>,
    suffixes: Vec<Word>,
    rows: HashMap<Word, Vec<Word>>,
}

impl ObservationTable {
    pub fn new(inputs: Alphabet, outputs: Alphabet) -> Self {
        let suffixes = inputs.ids().map(|i| Word::from(vec![i])).collect();
        ObservationTable {
            inputs,
            outputs,
            prefixes: vec![Word::empty()],
            prefix_set: HashSet::from([Word::empty()]),
            suffixes,
            rows: HashMap::new(),
        }
    }

    pub fn prefixes(&self) -> &[Word] {
        &self.prefixes
    }

    pub fn suffixes(&self) -> &[Word] {
        &self.suffixes
    }

    fn add_prefix(&mut self, u: Word) -> bool {
        if self.prefix_set.insert(u.clone()) {
            self.prefixes.push(u);
            true
        } else {
            false
        }
    }

    fn row(&self, u: &Word) -> &[Word] {
        &self.rows[u]
    }

    fn fill_row<T: Teacher + ?Sized>(&mut self, u: &Word, teacher: &mut T) -> std::result::Result<(), Rejected> {
        let row = self.rows.entry(u.clone()).or_default();
        while row.len() < self.suffixes.len() {
            let e = &self.suffixes[row.len()];
            let out = teacher.output_query(&u.concat(e), Phase::Learn)?;
            row.push(out.suffix_from(u.len()));
        }
        Ok(())
    }

    fn fill<T: Teacher + ?Sized>(&mut self, teacher: &mut T) -> std::result::Result<(), Rejected> {
        let mut j = 0;
        while j < self.prefixes.len() {
            let u = self.prefixes[j].clone();
            self.fill_row(&u, teacher)?;
            for i in self.inputs.ids() {
                self.fill_row(&u.concat(&[i]), teacher)?;
            }
            j += 1;
        }
        Ok(())
    }

    /// First extension `s · a` whose row matches no access row.
    fn unclosed(&self) -> Option<Word> {
        let known: HashSet<&[Word]> = self.prefixes.iter().map(|s| self.row(s)).collect();
        for s in &self.prefixes {
            for i in self.inputs.ids() {
                let u = s.concat(&[i]);
                if !known.contains(self.row(&u)) {
                    return Some(u);
                }
            }
        }
        None
    }

    /// A new column `a · e` separating two access words with equal rows.
    fn inconsistency(&self) -> Option<Word> {
        let mut first: HashMap<&[Word], &Word> = HashMap::new();
        for s in &self.prefixes {
            let Some(&r) = first.get(self.row(s)) else {
                first.insert(self.row(s), s);
                continue;
            };
            for i in self.inputs.ids() {
                let (a, b) = (self.row(&r.concat(&[i])), self.row(&s.concat(&[i])));
                if let Some(j) = (0..a.len()).find(|&j| a[j] != b[j]) {
                    let mut col = vec![i];
                    col.extend_from_slice(&self.suffixes[j]);
                    return Some(Word::from(col));
                }
            }
        }
        None
    }

    /// Fills, closes and makes the table consistent.
    pub fn stabilize<T: Teacher + ?Sized>(&mut self, teacher: &mut T) -> std::result::Result<(), Rejected> {
        loop {
            self.fill(teacher)?;
            if let Some(u) = self.unclosed() {
                self.add_prefix(u);
            } else if let Some(e) = self.inconsistency() {
                self.suffixes.push(e);
            } else {
                return Ok(());
            }
        }
    }

    /// Hypothesis of a closed and consistent table: one state per distinct
    /// access row, numbered in order of first appearance.
    pub fn hypothesis(&self) -> MealyMachine {
        let mut class: HashMap<&[Word], usize> = HashMap::new();
        let mut reps = Vec::new();
        for s in &self.prefixes {
            class.entry(self.row(s)).or_insert_with(|| {
                reps.push(s);
                reps.len() - 1
            });
        }
        let ni = self.inputs.len();
        let mut delta = Vec::with_capacity(reps.len() * ni);
        let mut lambda = Vec::with_capacity(reps.len() * ni);
        for s in &reps {
            for i in self.inputs.ids() {
                delta.push(class[self.row(&s.concat(&[i]))]);
                lambda.push(self.row(s)[i][0]);
            }
        }
        MealyMachine::new(self.inputs.clone(), self.outputs.clone(), 0, delta, lambda)
            .expect("closed table yields a complete machine")
    }

    /// Cuts `ce` after its first output mismatch with `hyp` and adds every
    /// prefix of the result as an access row. Returns the truncated word.
    pub fn process_counterexample(&mut self, hyp: &MealyMachine, ce: &Word, observed: &Word) -> Result<Word> {
        let expected = hyp.outputs_of(ce);
        let Some(j) = (0..ce.len()).find(|&j| expected.get(j) != observed.get(j)) else {
            return Err(Error::NotACounterexample);
        };
        let cut = ce.prefix(j + 1);
        for len in 1..=cut.len() {
            self.add_prefix(cut.prefix(len));
        }
        Ok(cut)
    }
}
