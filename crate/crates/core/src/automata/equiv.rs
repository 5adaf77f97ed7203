use std::collections::VecDeque;

use crate::automata::{MealyMachine, TestSuite, Word};
use crate::error::{Error, Result};

/// Maps each input id of `m` to the id of the same-named input of `n`.
pub fn input_map(m: &MealyMachine, n: &MealyMachine) -> Result<Vec<usize>> {
    if !m.inputs().same_symbols(n.inputs()) {
        return Err(Error::AlphabetMismatch);
    }
    Ok(m.inputs()
        .symbols()
        .iter()
        .map(|s| n.inputs().id(s).expect("same symbol set"))
        .collect())
}

/// Maps each output id of `n` to the same-named output of `m`, if any.
fn output_map(m: &MealyMachine, n: &MealyMachine) -> Vec<Option<usize>> {
    n.outputs().symbols().iter().map(|s| m.outputs().id(s)).collect()
}

/// Shortest word (shortlex-least among the shortest) on which the machines
/// produce different outputs from their initial states, or `None` when they
/// are equivalent. Words are over `m`'s input ids.
pub fn equivalence(m: &MealyMachine, n: &MealyMachine) -> Result<Option<Word>> {
    let imap = input_map(m, n)?;
    let omap = output_map(m, n);
    let nn = n.num_states();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; m.num_states() * nn];
    let mut seen = vec![false; m.num_states() * nn];
    let start = m.initial() * nn + n.initial();
    seen[start] = true;
    let mut queue = VecDeque::from([start]);

    let path_to = |parent: &[Option<(usize, usize)>], mut node: usize| {
        let mut w = Vec::new();
        while let Some((prev, i)) = parent[node] {
            w.push(i);
            node = prev;
        }
        w.reverse();
        w
    };

    while let Some(node) = queue.pop_front() {
        let (p, q) = (node / nn, node % nn);
        for i in m.inputs().ids() {
            let j = imap[i];
            if omap[n.output(q, j)] != Some(m.output(p, i)) {
                let mut w = path_to(&parent, node);
                w.push(i);
                return Ok(Some(Word::from(w)));
            }
            let succ = m.next(p, i) * nn + n.next(q, j);
            if !seen[succ] {
                seen[succ] = true;
                parent[succ] = Some((node, i));
                queue.push_back(succ);
            }
        }
    }
    Ok(None)
}

/// First word of `suite` (in shortlex order) on which the machines disagree.
pub fn agree_on(m: &MealyMachine, n: &MealyMachine, suite: &TestSuite) -> Result<Option<Word>> {
    let imap = input_map(m, n)?;
    let omap = output_map(m, n);
    for w in suite {
        let (mut p, mut q) = (m.initial(), n.initial());
        for &i in w.iter() {
            let j = imap[i];
            if omap[n.output(q, j)] != Some(m.output(p, i)) {
                return Ok(Some(w.clone()));
            }
            p = m.next(p, i);
            q = n.next(q, j);
        }
    }
    Ok(None)
}

/// True iff a bijection of (reachable) states preserves the initial state,
/// transitions and output names. Both machines must be fully reachable.
pub fn isomorphic(m: &MealyMachine, n: &MealyMachine) -> bool {
    if m.num_states() != n.num_states() {
        return false;
    }
    let Ok(imap) = input_map(m, n) else {
        return false;
    };
    let omap = output_map(m, n);
    let mut to_n = vec![usize::MAX; m.num_states()];
    let mut to_m = vec![usize::MAX; n.num_states()];
    to_n[m.initial()] = n.initial();
    to_m[n.initial()] = m.initial();
    let mut queue = VecDeque::from([m.initial()]);
    let mut visited = 1;
    while let Some(p) = queue.pop_front() {
        let q = to_n[p];
        for i in m.inputs().ids() {
            let j = imap[i];
            if omap[n.output(q, j)] != Some(m.output(p, i)) {
                return false;
            }
            let (pt, qt) = (m.next(p, i), n.next(q, j));
            match (to_n[pt], to_m[qt]) {
                (usize::MAX, usize::MAX) => {
                    to_n[pt] = qt;
                    to_m[qt] = pt;
                    visited += 1;
                    queue.push_back(pt);
                }
                (a, b) if a == qt && b == pt => {}
                _ => return false,
            }
        }
    }
    visited == m.num_states()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::machine::tests::{m1, single_state};
    use crate::automata::MealyBuilder;

    fn m1_prime() -> MealyMachine {
        let mut b = MealyBuilder::new().with_inputs(["a", "b"]).unwrap();
        b.transition("A", "a", "1", "B").unwrap();
        b.transition("A", "b", "0", "A").unwrap();
        b.transition("B", "a", "0", "A").unwrap();
        b.transition("B", "b", "0", "B").unwrap();
        b.build().unwrap()
    }

    fn m1_renumbered() -> MealyMachine {
        let mut b = MealyBuilder::new().with_inputs(["b", "a"]).unwrap();
        b.transition("Y", "a", "0", "X").unwrap();
        b.transition("Y", "b", "1", "Y").unwrap();
        b.transition("X", "a", "1", "Y").unwrap();
        b.transition("X", "b", "0", "X").unwrap();
        b.set_initial("X").unwrap();
        b.build().unwrap()
    }

    #[test]
    fn reflexive() {
        assert_eq!(equivalence(&m1(), &m1()), Ok(None));
        let any = TestSuite::from_words([Word::from(vec![0, 1, 1]), Word::empty()]);
        assert_eq!(agree_on(&m1(), &m1(), &any), Ok(None));
    }

    #[test]
    fn finds_shortest_counterexample() {
        let ce = equivalence(&m1(), &m1_prime()).unwrap().unwrap();
        assert_eq!(m1().inputs().render(&ce), "a b");
    }

    #[test]
    fn mismatched_alphabets_are_rejected() {
        assert_eq!(equivalence(&m1(), &single_state()), Err(Error::AlphabetMismatch));
        assert!(!isomorphic(&m1(), &single_state()));
    }

    #[test]
    fn agree_on_returns_first_failing_word() {
        let suite = TestSuite::from_words([
            Word::from(vec![1, 1, 1]),
            Word::from(vec![0, 1]),
            Word::from(vec![0]),
        ]);
        let w = agree_on(&m1(), &m1_prime(), &suite).unwrap();
        assert_eq!(w, Some(Word::from(vec![0, 1])));
    }

    #[test]
    fn isomorphism_ignores_numbering() {
        assert!(isomorphic(&m1(), &m1()));
        assert!(isomorphic(&m1(), &m1_renumbered()));
        assert!(!isomorphic(&m1(), &m1_prime()));
        assert_eq!(equivalence(&m1(), &m1_renumbered()), Ok(None));
    }
}
