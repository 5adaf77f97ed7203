use std::collections::VecDeque;

use crate::automata::{is_minimal, minimize, MealyMachine, Provenance, TestSuite, Word};

/// Shortlex-least access word for every reachable state (`None` otherwise).
pub fn access_words(m: &MealyMachine) -> Vec<Option<Word>> {
    let mut access: Vec<Option<Word>> = vec![None; m.num_states()];
    access[m.initial()] = Some(Word::empty());
    let mut queue = VecDeque::from([m.initial()]);
    while let Some(q) = queue.pop_front() {
        for i in m.inputs().ids() {
            let t = m.next(q, i);
            if access[t].is_none() {
                access[t] = Some(access[q].as_ref().unwrap().concat(&[i]));
                queue.push_back(t);
            }
        }
    }
    access
}

/// Minimal state cover: one shortlex-least access word per reachable state.
pub fn state_cover(m: &MealyMachine) -> TestSuite {
    TestSuite::new(access_words(m).into_iter().flatten(), Provenance::method("state-cover"))
}

/// Shortest separating word for every pair of states, shortlex-least among
/// the shortest. Entry `p * n + q` is `None` for equivalent states.
pub fn separating_words(m: &MealyMachine) -> Vec<Option<Word>> {
    let n = m.num_states();
    let mut sep: Vec<Option<Word>> = vec![None; n * n];
    let mut frontier = Vec::new();
    for p in 0..n {
        for q in (p + 1)..n {
            if let Some(i) = m.inputs().ids().find(|&i| m.output(p, i) != m.output(q, i)) {
                frontier.push((p, q));
                sep[p * n + q] = Some(Word::from(vec![i]));
            }
        }
    }
    let mut len = 1;
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in 0..n {
            for q in (p + 1)..n {
                if sep[p * n + q].is_some() {
                    continue;
                }
                for i in m.inputs().ids() {
                    let (a, b) = (m.next(p, i), m.next(q, i));
                    let (a, b) = if a < b { (a, b) } else { (b, a) };
                    if a == b {
                        continue;
                    }
                    if let Some(w) = &sep[a * n + b] {
                        if w.len() == len {
                            let mut word = vec![i];
                            word.extend_from_slice(w);
                            next.push((p, q, Word::from(word)));
                            break;
                        }
                    }
                }
            }
        }
        frontier.clear();
        for (p, q, w) in next {
            frontier.push((p, q));
            sep[p * n + q] = Some(w);
        }
        len += 1;
    }
    for p in 0..n {
        for q in 0..p {
            sep[p * n + q] = sep[q * n + p].clone();
        }
    }
    sep
}

/// Characterization set built by partition refinement: starting from one
/// block, repeatedly take the first block with two or more states, add the
/// separating word of its two lowest states, and split every block by the
/// outputs on that word.
///
/// A machine with a single state gets `{first input}`, since the set must be
/// non-empty.
pub fn char_set(m: &MealyMachine) -> TestSuite {
    let owned;
    let m = if is_minimal(m) {
        m
    } else {
        owned = minimize(m).0;
        &owned
    };
    let n = m.num_states();
    let provenance = Provenance::method("char-set");
    if n == 1 {
        return TestSuite::new([Word::from(vec![0])], provenance);
    }
    let sep = separating_words(m);
    let mut blocks: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut words = Vec::new();
    while let Some(block) = blocks.iter().find(|b| b.len() > 1) {
        let w = sep[block[0] * n + block[1]]
            .clone()
            .expect("states of a minimal machine are distinguishable");
        let mut refined = Vec::new();
        for b in &blocks {
            let mut groups: Vec<(Word, Vec<usize>)> = Vec::new();
            for &q in b {
                let out = m.run(q, &w).1;
                match groups.iter_mut().find(|(o, _)| *o == out) {
                    Some((_, g)) => g.push(q),
                    None => groups.push((out, vec![q])),
                }
            }
            refined.extend(groups.into_iter().map(|(_, g)| g));
        }
        blocks = refined;
        words.push(w);
    }
    TestSuite::new(words, provenance)
}
