use std::collections::BTreeSet;

use crate::automata::{MealyMachine, PartialMealyMachine};
use crate::error::{Error, Result};

/// The active part of a machine: sinks removed, and every transition that
/// self-loops or enters a sink dropped.
///
/// State ids are those of the source machine; removed sinks keep their id
/// but have no outgoing transitions and are listed in `sinks`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActiveMachine {
    pub machine: PartialMealyMachine,
    pub sinks: BTreeSet<usize>,
    /// Inputs active in at least one state, ascending.
    pub inputs: Vec<usize>,
}

impl ActiveMachine {
    pub fn contains(&self, q: usize) -> bool {
        !self.sinks.contains(&q)
    }

    pub fn states(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.machine.num_states()).filter(|q| !self.sinks.contains(q))
    }
}

/// Input `i` is active in `q` when it leaves `q` for a non-sink state.
pub fn is_active(m: &MealyMachine, sinks: &BTreeSet<usize>, q: usize, i: usize) -> bool {
    let t = m.next(q, i);
    t != q && !sinks.contains(&t)
}

/// Builds the active machine without checking the initial state.
pub(crate) fn active_unchecked(m: &MealyMachine) -> ActiveMachine {
    let sinks = m.sinks();
    let mut used = vec![false; m.num_inputs()];
    let mut trans = Vec::with_capacity(m.num_states() * m.num_inputs());
    for q in 0..m.num_states() {
        for i in m.inputs().ids() {
            if !sinks.contains(&q) && is_active(m, &sinks, q, i) {
                used[i] = true;
                trans.push(Some((m.next(q, i), m.output(q, i))));
            } else {
                trans.push(None);
            }
        }
    }
    let machine = PartialMealyMachine::new(m.inputs().clone(), m.outputs().clone(), m.initial(), trans)
        .expect("restriction of a valid machine is valid");
    let inputs = (0..m.num_inputs()).filter(|&i| used[i]).collect();
    ActiveMachine { machine, sinks, inputs }
}

/// The active Mealy machine of `m`. Fails when the initial state is a sink.
pub fn active(m: &MealyMachine) -> Result<ActiveMachine> {
    if m.is_sink(m.initial()) {
        return Err(Error::InitialIsSink);
    }
    Ok(active_unchecked(m))
}
