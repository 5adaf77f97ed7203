use std::collections::{HashMap, VecDeque};

use crate::automata::MealyMachine;

/// Coarsest output-respecting partition of the reachable states, via Moore
/// refinement. Unreachable states map to `None`. Block ids are dense and
/// numbered by first occurrence in state order.
pub fn state_partition(m: &MealyMachine) -> Vec<Option<usize>> {
    let reachable = m.reachable();
    let states: Vec<usize> = (0..m.num_states()).filter(|&q| reachable[q]).collect();
    let mut block = vec![usize::MAX; m.num_states()];

    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    for &q in &states {
        let sig: Vec<usize> = m.inputs().ids().map(|i| m.output(q, i)).collect();
        let next = ids.len();
        block[q] = *ids.entry(sig).or_insert(next);
    }
    let mut count = ids.len();
    loop {
        let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut refined = vec![usize::MAX; m.num_states()];
        for &q in &states {
            let mut sig = Vec::with_capacity(m.num_inputs() + 1);
            sig.push(block[q]);
            sig.extend(m.inputs().ids().map(|i| block[m.next(q, i)]));
            let next = ids.len();
            refined[q] = *ids.entry(sig).or_insert(next);
        }
        block = refined;
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }
    (0..m.num_states())
        .map(|q| reachable[q].then_some(block[q]))
        .collect()
}

pub fn is_minimal(m: &MealyMachine) -> bool {
    let part = state_partition(m);
    let mut seen = vec![false; m.num_states()];
    for b in part {
        match b {
            None => return false,
            Some(b) if seen[b] => return false,
            Some(b) => seen[b] = true,
        }
    }
    true
}

/// Minimal reachable machine equivalent to `m`, plus the old→new state map.
///
/// New states are numbered in breadth-first order from the initial state
/// (inputs in id order); each keeps the label of its lowest-numbered member.
pub fn minimize(m: &MealyMachine) -> (MealyMachine, Vec<Option<usize>>) {
    let part = state_partition(m);
    let nblocks = part.iter().flatten().map(|&b| b + 1).max().unwrap_or(0);
    let mut rep = vec![usize::MAX; nblocks];
    for (q, b) in part.iter().enumerate() {
        if let Some(b) = *b {
            rep[b] = rep[b].min(q);
        }
    }

    let mut order = vec![usize::MAX; nblocks];
    let mut reps = Vec::with_capacity(nblocks);
    let start = part[m.initial()].expect("initial state is reachable");
    order[start] = 0;
    reps.push(rep[start]);
    let mut queue = VecDeque::from([start]);
    while let Some(b) = queue.pop_front() {
        for i in m.inputs().ids() {
            let t = part[m.next(rep[b], i)].expect("successor of reachable state");
            if order[t] == usize::MAX {
                order[t] = reps.len();
                reps.push(rep[t]);
                queue.push_back(t);
            }
        }
    }

    let mut delta = Vec::with_capacity(reps.len() * m.num_inputs());
    let mut lambda = Vec::with_capacity(reps.len() * m.num_inputs());
    for &q in &reps {
        for i in m.inputs().ids() {
            delta.push(order[part[m.next(q, i)].unwrap()]);
            lambda.push(m.output(q, i));
        }
    }
    let labels = reps.iter().map(|&q| m.label(q).to_string()).collect();
    let min = MealyMachine::new(m.inputs().clone(), m.outputs().clone(), 0, delta, lambda)
        .and_then(|mm| mm.with_labels(labels))
        .expect("quotient of a valid machine is valid");
    let map = part.iter().map(|b| b.map(|b| order[b])).collect();
    (min, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::machine::tests::{m1, single_state};
    use crate::automata::{isomorphic, MealyBuilder};

    #[test]
    fn minimal_machine_is_unchanged() {
        let m = m1();
        let (min, map) = minimize(&m);
        assert!(isomorphic(&m, &min));
        assert_eq!(map, vec![Some(0), Some(1)]);
        assert!(is_minimal(&m));
        let one = single_state();
        assert_eq!(minimize(&one).0.num_states(), 1);
    }

    #[test]
    fn duplicated_state_merges() {
        // M1 with B duplicated as B2: A --a--> B, B --a--> A, B --b--> B2, B2 mirrors B.
        let mut b = MealyBuilder::new().with_inputs(["a", "b"]).unwrap();
        b.transition("A", "a", "1", "B").unwrap();
        b.transition("A", "b", "0", "A").unwrap();
        b.transition("B", "a", "0", "A").unwrap();
        b.transition("B", "b", "1", "B2").unwrap();
        b.transition("B2", "a", "0", "A").unwrap();
        b.transition("B2", "b", "1", "B").unwrap();
        let m = b.build().unwrap();
        assert!(!is_minimal(&m));
        let (min, map) = minimize(&m);
        assert_eq!(min.num_states(), 2);
        assert!(isomorphic(&min, &m1()));
        assert_eq!(map[1], map[2]);
    }

    #[test]
    fn unreachable_states_are_dropped() {
        let mut b = MealyBuilder::new().with_inputs(["a"]).unwrap();
        b.transition("p", "a", "0", "p").unwrap();
        b.transition("u", "a", "1", "p").unwrap();
        let m = b.build().unwrap();
        let (min, map) = minimize(&m);
        assert_eq!(min.num_states(), 1);
        assert_eq!(map, vec![Some(0), None]);
    }
}
